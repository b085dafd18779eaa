#include "nql/lemmas.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "nql/noise.hpp"
#include "nql/pauli.hpp"

namespace nql {

namespace {

Matrix depol_swap_operator(int n, double lambda) {
  DenseOp s = swap_op(n);
  depolarize_all_in_place(s.op, 2 * n, lambda);
  return std::move(s.op);
}

// tr(kron(psi, psi)^dag A kron(psi, psi)) for a two-copy operator A.
double two_copy_expectation(const Eigen::VectorXcd& psi, const Matrix& a) {
  const Eigen::Index dim = psi.size();
  Eigen::VectorXcd v(dim * dim);
  for (Eigen::Index hi = 0; hi < dim; ++hi) {
    v.segment(hi * dim, dim) = psi(hi) * psi;
  }
  return (v.adjoint() * a * v)(0, 0).real();
}

Eigen::VectorXcd haar_vector(Eigen::Index dim, Rng& rng) {
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(rng.gaussian(), rng.gaussian());
  v.normalize();
  return v;
}

Eigen::VectorXcd product_vector(int n, Rng& rng) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
  for (int i = 0; i < n; ++i) {
    Eigen::Vector2cd site(Complex(rng.gaussian(), rng.gaussian()),
                          Complex(rng.gaussian(), rng.gaussian()));
    site.normalize();
    Eigen::VectorXcd next(v.size() * 2);
    next.head(v.size()) = site(0) * v;
    next.tail(v.size()) = site(1) * v;
    v.swap(next);
  }
  return v;
}

// Haar-random orthonormal basis: QR of a Ginibre matrix with the triangular
// factor's phases absorbed.
Matrix haar_basis(Eigen::Index dim, Rng& rng) {
  Matrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

LemmaReport finish_report(LemmaReport r) {
  if (r.kind == LemmaKind::kEquality) {
    r.pass = std::abs(r.observed - r.bound_or_target) <= kLemmaTol;
  } else {
    r.pass = r.observed <= r.bound_or_target + kLemmaTol;
  }
  return r;
}

LemmaReport check_depol_swap(int n, double lambda, StateFamily family, int trials,
                             Rng& rng) {
  require_dense_qubits(2 * n, "check_depol_swap");
  const Matrix a = depol_swap_operator(n, lambda);
  const Eigen::Index dim = Eigen::Index(1) << n;
  double observed = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXcd psi =
        family == StateFamily::kHaar ? haar_vector(dim, rng) : product_vector(n, rng);
    observed = std::max(observed, two_copy_expectation(psi, a));
  }
  LemmaReport r;
  r.lemma_id = family == StateFamily::kHaar ? "depol_swap_haar" : "depol_swap_product";
  r.n = n;
  r.lambda = lambda;
  r.observed = observed;
  r.bound_or_target = std::pow(f_lambda(lambda), n);
  // Every product state meets the bound exactly, site by site.
  r.kind = family == StateFamily::kProduct ? LemmaKind::kEquality : LemmaKind::kUpperBound;
  return finish_report(r);
}

LemmaReport check_depol_swap2(int n, double lambda, int trials, Rng& rng) {
  require_dense_qubits(2 * n, "check_depol_swap2");
  if (n > kMaxEnumQubits) throw capacity_error("check_depol_swap2: Pauli sum too large");
  const Eigen::Index dim = Eigen::Index(1) << n;
  // (2 SWAP_1 - I)^(x)n in the (i, n+i) pair layout is the sum of P (x) P
  // over the 3^n full-weight Pauli strings.
  Matrix full = Matrix::Zero(dim * dim, dim * dim);
  for_each_pauli(n, false, [&](const PauliString& p) {
    if (weight(p) != n) return;
    const Matrix pm = pauli_matrix(p);
    for (Eigen::Index bc = 0; bc < dim; ++bc) {
      for (Eigen::Index br = 0; br < dim; ++br) {
        if (pm(br, bc) == Complex(0, 0)) continue;
        full.block(br << n, bc << n, dim, dim) += pm(br, bc) * pm;
      }
    }
  });
  depolarize_all_in_place(full, 2 * n, lambda);

  double observed = -1e300;
  for (int t = 0; t < trials; ++t) {
    observed = std::max(observed, two_copy_expectation(haar_vector(dim, rng), full));
  }
  LemmaReport r;
  r.lemma_id = "depol_swap2_haar";
  r.n = n;
  r.lambda = lambda;
  r.observed = observed;
  r.bound_or_target = 0.5 * (1.0 + std::pow(3.0, n)) * std::pow(1.0 - lambda, 2 * n);
  r.kind = LemmaKind::kUpperBound;
  return finish_report(r);
}

LemmaReport check_purity_trace_identity(int n, double lambda) {
  require_dense_qubits(2 * n, "check_purity_trace_identity");
  const Matrix a = depol_swap_operator(n, lambda);
  const double tr_a2 = a.transpose().cwiseProduct(a).sum().real();
  LemmaReport r;
  r.lemma_id = "purity_trace_identity";
  r.n = n;
  r.lambda = lambda;
  r.observed = tr_a2 / std::ldexp(1.0, 2 * n);
  r.bound_or_target = std::pow((1.0 + 3.0 * std::pow(1.0 - lambda, 4)) / 4.0, n);
  r.kind = LemmaKind::kEquality;
  return finish_report(r);
}

LemmaReport check_node_concentration(int n, double lambda, PovmFamily family, int trials,
                                     Rng& rng) {
  if (n > 5) throw capacity_error("check_node_concentration: capped at n <= 5");
  require_dense_qubits(2 * n, "check_node_concentration");
  const Matrix a = depol_swap_operator(n, lambda);
  const Eigen::Index dim = Eigen::Index(1) << n;
  const double inv_dim = 1.0 / static_cast<double>(dim);

  auto povm_quantity = [&](const std::vector<Eigen::VectorXcd>& states,
                           const std::vector<double>& weights) {
    double q = 0.0;
    for (size_t i = 0; i < states.size(); ++i) {
      q += weights[i] * two_copy_expectation(states[i], a);
    }
    return inv_dim * q;
  };

  double observed = 0.0;
  if (family == PovmFamily::kComputational) {
    std::vector<Eigen::VectorXcd> states;
    std::vector<double> weights(static_cast<size_t>(dim), inv_dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
      e(s) = 1.0;
      states.push_back(std::move(e));
    }
    observed = povm_quantity(states, weights);
  } else {
    for (int t = 0; t < trials; ++t) {
      std::vector<Eigen::VectorXcd> states;
      std::vector<double> weights;
      if (family == PovmFamily::kHaarBasis) {
        const Matrix basis = haar_basis(dim, rng);
        for (Eigen::Index s = 0; s < dim; ++s) {
          states.push_back(basis.col(s));
          weights.push_back(inv_dim);
        }
      } else {
        // Convex mixture of two Haar bases: a rank-1 refinement of a random
        // two-outcome coarse-graining; still resolves the identity.
        const double alpha = rng.uniform();
        const Matrix b1 = haar_basis(dim, rng), b2 = haar_basis(dim, rng);
        for (Eigen::Index s = 0; s < dim; ++s) {
          states.push_back(b1.col(s));
          weights.push_back(alpha * inv_dim);
          states.push_back(b2.col(s));
          weights.push_back((1.0 - alpha) * inv_dim);
        }
      }
      observed = std::max(observed, povm_quantity(states, weights));
    }
  }

  LemmaReport r;
  r.lemma_id = family == PovmFamily::kComputational ? "node_concentration_comp"
               : family == PovmFamily::kHaarBasis   ? "node_concentration_haar"
                                                    : "node_concentration_mix";
  r.n = n;
  r.lambda = lambda;
  r.observed = observed;
  r.bound_or_target = std::pow(0.5 * f_lambda(lambda), n);
  r.kind = LemmaKind::kUpperBound;
  return finish_report(r);
}

std::vector<LemmaReport> lemma_sweep(int max_n, int trials_per_point, uint64_t seed,
                                     int workers) {
  struct Point {
    int n;
    double lambda;
    uint64_t index;
  };
  std::vector<Point> grid;
  for (int n = 1; n <= max_n; ++n) {
    for (int li = 0; li <= 10; ++li) {
      grid.push_back({n, li / 10.0, grid.size()});
    }
  }

  std::vector<std::vector<LemmaReport>> per_point(grid.size());
  std::atomic<size_t> next{0};
  auto run = [&]() {
    for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
      const Point& pt = grid[i];
      Rng rng(child_seed(seed, pt.index, 0));
      std::vector<LemmaReport>& out = per_point[i];
      out.push_back(check_depol_swap(pt.n, pt.lambda, StateFamily::kHaar, trials_per_point, rng));
      out.push_back(check_depol_swap(pt.n, pt.lambda, StateFamily::kProduct,
                                     std::max(1, trials_per_point / 10), rng));
      out.push_back(check_depol_swap2(pt.n, pt.lambda, trials_per_point, rng));
      out.push_back(check_purity_trace_identity(pt.n, pt.lambda));
      out.push_back(check_node_concentration(pt.n, pt.lambda, PovmFamily::kComputational, 1, rng));
      out.push_back(check_node_concentration(pt.n, pt.lambda, PovmFamily::kHaarBasis,
                                             std::max(1, trials_per_point / 50), rng));
      out.push_back(check_node_concentration(pt.n, pt.lambda, PovmFamily::kMixedPair,
                                             std::max(1, trials_per_point / 50), rng));
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();

  std::vector<LemmaReport> reports;
  for (auto& chunk : per_point) {
    reports.insert(reports.end(), chunk.begin(), chunk.end());
  }
  std::sort(reports.begin(), reports.end(), [](const LemmaReport& a, const LemmaReport& b) {
    if (a.lemma_id != b.lemma_id) return a.lemma_id < b.lemma_id;
    if (a.n != b.n) return a.n < b.n;
    return a.lambda < b.lambda;
  });
  return reports;
}

void write_lemma_csv(const std::vector<LemmaReport>& reports, std::ostream& out) {
  out << "lemma_id,n,lambda,observed,bound_or_target,kind,pass\n";
  char buf[64];
  for (const auto& r : reports) {
    out << r.lemma_id << ',' << r.n << ',';
    std::snprintf(buf, sizeof buf, "%.12g", r.lambda);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.12g", r.observed);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.12g", r.bound_or_target);
    out << buf << ',';
    out << (r.kind == LemmaKind::kEquality ? "equality" : "upper-bound") << ','
        << (r.pass ? "1" : "0") << '\n';
  }
}

}  // namespace nql
