#include <doctest.h>

#include <cmath>
#include <array>

#include "nql/dense.hpp"
#include "nql/noise.hpp"

using namespace nql;

namespace {

// Random full-rank density matrix (Ginibre G G^dag, normalized).
DenseState random_mixed_state(int n, Rng& rng) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Matrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DenseState{n, std::move(rho)};
}

}  // namespace

TEST_CASE("maximally mixed state") {
  const auto s = state_max_mixed(1);
  CHECK(std::abs(s.rho(0, 0).real() - 0.5) < 1e-15);
  CHECK(std::abs(s.rho(1, 1).real() - 0.5) < 1e-15);
  for (int n : {1, 2, 3}) {
    const auto m = state_max_mixed(n);
    CHECK(std::abs(m.rho.trace().real() - 1.0) < 1e-14);
    CHECK(std::abs(purity(m) - std::ldexp(1.0, -n)) < 1e-14);
  }
  CHECK_THROWS_AS(state_max_mixed(13), capacity_error);
}

TEST_CASE("(1+P)/2^n states") {
  const auto z = PauliString::from_str("Z");
  const auto s = state_i_plus_p(z);
  CHECK(std::abs(s.rho(0, 0).real() - 1.0) < 1e-15);
  CHECK(std::abs(s.rho(1, 1).real()) < 1e-15);

  Rng rng(21);
  for (int n : {1, 2, 3}) {
    const auto p = random_pauli(n, false, rng);
    const auto sp = state_i_plus_p(p);
    CHECK(std::abs(sp.rho.trace().real() - 1.0) < 1e-13);
    CHECK(std::abs(expectation(pauli_op(p), sp) - 1.0) < 1e-12);
    sp.validate();
  }
  CHECK_THROWS_AS(state_i_plus_p(PauliString::from_str("II")), std::invalid_argument);
}

TEST_CASE("Haar pure states") {
  Rng rng(31);
  const auto s = state_haar_pure(3, rng);
  CHECK(std::abs(purity(s) - 1.0) < 1e-12);
  s.validate();

  Rng r1(8), r2(8);
  CHECK((state_haar_pure(2, r1).rho - state_haar_pure(2, r2).rho).cwiseAbs().maxCoeff() ==
        0.0);

  // First moment: E[psi psi^dag] = I / dim.
  Matrix mean = Matrix::Zero(4, 4);
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) mean += state_haar_pure(2, rng).rho;
  mean /= draws;
  mean.diagonal().array() -= 0.25;
  CHECK(mean.cwiseAbs().maxCoeff() < 5e-2);
}

TEST_CASE("depolarizing channel on states") {
  Rng rng(41);
  const auto rho = random_mixed_state(2, rng);
  CHECK((depolarize_all(rho, 0.0).rho - rho.rho).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((depolarize_all(rho, 1.0).rho - state_max_mixed(2).rho).cwiseAbs().maxCoeff() <
        1e-12);

  const auto z0 = state_i_plus_p(PauliString::from_str("Z"));
  const auto d = depolarize_all(z0, 0.2);
  CHECK(std::abs(d.rho(0, 0).real() - 0.9) < 1e-14);
  CHECK(std::abs(d.rho(1, 1).real() - 0.1) < 1e-14);

  CHECK_THROWS_AS(depolarize_all(z0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(depolarize_all(z0, -0.1), std::invalid_argument);

  // Trace and Hermiticity survive many random states.
  for (int i = 0; i < 1000; ++i) {
    auto s = random_mixed_state(2, rng);
    const auto out = depolarize_all(s, rng.uniform());
    REQUIRE(std::abs(out.rho.trace().real() - 1.0) < 1e-12);
    REQUIRE((out.rho - out.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }

  // Partial application touches only the listed qubit.
  const auto zz = state_i_plus_p(PauliString::from_str("ZZ"));
  const std::vector<int> q0{0};
  const auto partial = depolarize(zz, 1.0, q0);
  CHECK(std::abs(expectation(pauli_op(PauliString::from_str("ZZ")), partial)) < 1e-12);
  CHECK(std::abs(expectation(pauli_op(PauliString::from_str("IZ")), partial)) < 1e-12);
}

TEST_CASE("depolarizing a Pauli operator damps it by (1-l)^|P|") {
  for (int n = 1; n <= 3; ++n) {
    for (double lambda : {0.0, 0.1, 0.5, 1.0}) {
      for_each_pauli(n, false, [&](const PauliString& p) {
        const auto damped = depolarize_op_all(pauli_op(p), lambda);
        const Matrix expected = pauli_damping(p, lambda) * pauli_matrix(p);
        REQUIRE((damped.op - expected).cwiseAbs().maxCoeff() < 1e-10);
      });
    }
  }
}

TEST_CASE("swap operator") {
  const auto s1 = swap_op(1);
  Matrix expected(4, 4);
  expected << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1;
  CHECK((s1.op - expected).cwiseAbs().maxCoeff() == 0.0);

  Rng rng(51);
  for (int n : {1, 2, 3}) {
    const auto s = swap_op(n);
    CHECK(std::abs(s.op.trace().real() - std::ldexp(1.0, n)) < 1e-12);
    // SWAP trick: tr(SWAP rho (x) rho) = tr(rho^2).
    const auto rho = random_mixed_state(n, rng);
    Matrix two_copy(rho.rho.rows() * rho.rho.rows(), rho.rho.cols() * rho.rho.cols());
    for (Eigen::Index i = 0; i < rho.rho.rows(); ++i) {
      for (Eigen::Index j = 0; j < rho.rho.cols(); ++j) {
        two_copy.block(i * rho.rho.rows(), j * rho.rho.cols(), rho.rho.rows(),
                       rho.rho.cols()) = rho.rho(i, j) * rho.rho;
      }
    }
    const double lhs = s.op.transpose().cwiseProduct(two_copy).sum().real();
    CHECK(std::abs(lhs - purity(rho)) < 1e-10);
  }
  CHECK_THROWS_AS(swap_op(7), capacity_error);
}

TEST_CASE("Bell POVM elements") {
  // s = (0|0) projects onto (|00> + |11>)/sqrt(2).
  const auto pi00 = bell_povm_element(1, 0, 0);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
  CHECK((pi00.op - expected).cwiseAbs().maxCoeff() < 1e-12);

  for (int n : {1, 2}) {
    const auto povm = bell_povm(n);
    const Eigen::Index dim = Eigen::Index(1) << (2 * n);
    Matrix sum = Matrix::Zero(dim, dim);
    for (size_t a = 0; a < povm.size(); ++a) {
      sum += povm[a].op;
      // Rank-1 projector and mutual orthogonality.
      REQUIRE((povm[a].op * povm[a].op - povm[a].op).cwiseAbs().maxCoeff() < 1e-10);
      REQUIRE(std::abs(povm[a].op.trace().real() - 1.0) < 1e-10);
      for (size_t b = a + 1; b < povm.size(); ++b) {
        REQUIRE((povm[a].op * povm[b].op).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
    sum.diagonal().array() -= 1.0;
    CHECK(sum.cwiseAbs().maxCoeff() < 1e-10);
  }

  // Completeness also at n = 3.
  const auto povm3 = bell_povm(3);
  Matrix sum3 = Matrix::Zero(64, 64);
  for (const auto& e : povm3) sum3 += e.op;
  sum3.diagonal().array() -= 1.0;
  CHECK(sum3.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("measure_povm") {
  Rng rng(61);

  // Projective Z measurement on |0><0| always yields outcome 0.
  std::vector<DenseOp> z_elems;
  z_elems.push_back(DenseOp{1, (Matrix(2, 2) << 1, 0, 0, 0).finished()});
  z_elems.push_back(DenseOp{1, (Matrix(2, 2) << 0, 0, 0, 1).finished()});
  const auto z_povm = make_povm(std::move(z_elems));
  const auto zero = state_i_plus_p(PauliString::from_str("Z"));
  for (int i = 0; i < 200; ++i) REQUIRE(measure_povm(zero, z_povm, rng) == 0);

  // Bell POVM on two maximally mixed qubits is uniform over 4 outcomes.
  const auto bell = make_povm(bell_povm(1));
  const auto mixed2 = state_max_mixed(2);
  std::array<int, 4> counts{};
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) counts[static_cast<size_t>(measure_povm(mixed2, bell, rng))]++;
  const double sigma = std::sqrt(draws * 0.25 * 0.75);
  for (int c : counts) CHECK(std::abs(c - draws / 4.0) < 3.0 * sigma);

  // Two half-identities behave as a fair coin.
  std::vector<DenseOp> coin;
  coin.push_back(DenseOp{1, 0.5 * Matrix::Identity(2, 2)});
  coin.push_back(DenseOp{1, 0.5 * Matrix::Identity(2, 2)});
  const auto coin_povm = make_povm(std::move(coin));
  int heads = 0;
  for (int i = 0; i < draws; ++i) heads += measure_povm(state_max_mixed(1), coin_povm, rng);
  CHECK(std::abs(heads - draws / 2.0) < 3.0 * std::sqrt(draws * 0.25));

  // Incomplete or negative sets are rejected.
  std::vector<DenseOp> bad;
  bad.push_back(DenseOp{1, 0.5 * Matrix::Identity(2, 2)});
  CHECK_THROWS_AS(make_povm(std::move(bad)), std::invalid_argument);
  std::vector<DenseOp> neg;
  neg.push_back(DenseOp{1, (Matrix(2, 2) << 1.5, 0, 0, 1).finished()});
  neg.push_back(DenseOp{1, (Matrix(2, 2) << -0.5, 0, 0, 0).finished()});
  CHECK_THROWS_AS(make_povm(std::move(neg)), std::invalid_argument);
}

TEST_CASE("expectation values") {
  CHECK(std::abs(expectation(pauli_op(PauliString::from_str("Z")),
                             state_i_plus_p(PauliString::from_str("Z"))) -
                 1.0) < 1e-14);
  for (int n : {1, 2, 3}) {
    const auto mixed = state_max_mixed(n);
    for_each_pauli(n, false, [&](const PauliString& p) {
      REQUIRE(std::abs(expectation(pauli_op(p), mixed)) < 1e-13);
    });
  }
  // tr(P D_l[(1+P)/2^n]) = (1-l)^|P|.
  for (int n = 1; n <= 3; ++n) {
    for (double lambda : {0.0, 0.1, 0.5, 1.0}) {
      for_each_pauli(n, false, [&](const PauliString& p) {
        const auto noisy = depolarize_all(state_i_plus_p(p), lambda);
        REQUIRE(std::abs(expectation(pauli_op(p), noisy) - pauli_damping(p, lambda)) < 1e-12);
      });
    }
  }
  // Non-Hermitian input trips the imaginary-residue check.
  DenseOp skew{1, (Matrix(2, 2) << 0, 1, 0, 0).finished()};
  const auto y = state_i_plus_p(PauliString::from_str("Y"));
  CHECK_THROWS_AS(expectation(skew, y), numerical_error);
}

TEST_CASE("state validation rejects bad matrices") {
  DenseState bad{1, (Matrix(2, 2) << 1.5, 0, 0, -0.5).finished()};
  CHECK_THROWS_AS(bad.validate(), numerical_error);
  DenseState not_herm{1, (Matrix(2, 2) << 0.5, 0.2, -0.2, 0.5).finished()};
  CHECK_THROWS_AS(not_herm.validate(), numerical_error);
  state_max_mixed(4).validate();
}

TEST_CASE("circuit kernels: unitary, involution, marginal") {
  Rng rng(71);
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Matrix rho = state_i_plus_p(PauliString::from_str("ZZ")).rho;
  apply_single_qubit_unitary(rho, 2, 0, h);
  apply_single_qubit_unitary(rho, 2, 0, h);
  CHECK((rho - state_i_plus_p(PauliString::from_str("ZZ")).rho).cwiseAbs().maxCoeff() <
        1e-12);

  // X on qubit 1 as a permutation.
  std::vector<uint32_t> perm{2, 3, 0, 1};
  Matrix basis0 = Matrix::Zero(4, 4);
  basis0(0, 0) = 1.0;
  apply_involution(basis0, perm);
  CHECK(std::abs(basis0(2, 2).real() - 1.0) < 1e-15);

  const auto mixed = state_max_mixed(3);
  const auto marg = marginal_distribution(mixed.rho, 3, 2);
  REQUIRE(marg.size() == 4);
  for (double p : marg) CHECK(std::abs(p - 0.25) < 1e-14);
}
