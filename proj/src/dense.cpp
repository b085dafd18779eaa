#include "nql/dense.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <stdexcept>

namespace nql {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kHermTol = 1e-10;
constexpr double kEigTol = -1e-8;
constexpr double kPovmTol = 1e-8;
constexpr double kProbClamp = -1e-10;
constexpr double kImagTol = 1e-10;

}  // namespace

void require_dense_qubits(int m, const char* what) {
  if (m < 1) throw std::invalid_argument(std::string(what) + ": qubit count must be >= 1");
  if (m > kMaxDenseQubits) {
    throw capacity_error(std::string(what) + ": " + std::to_string(m) +
                         " qubits needs a 2^" + std::to_string(m) + " x 2^" +
                         std::to_string(m) + " dense matrix; cap is " +
                         std::to_string(kMaxDenseQubits));
  }
}

void DenseState::validate() const {
  const double trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (trace_err > kTraceTol) {
    throw numerical_error("DenseState: trace deviates from 1 by " + std::to_string(trace_err));
  }
  const double herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > kHermTol) {
    throw numerical_error("DenseState: not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                           Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kEigTol) {
    throw numerical_error("DenseState: eigenvalue below -1e-8");
  }
}

Matrix pauli_matrix(const PauliString& p) {
  require_dense_qubits(p.n, "pauli_matrix");
  static const Eigen::Matrix2cd kI = (Eigen::Matrix2cd() << 1, 0, 0, 1).finished();
  static const Eigen::Matrix2cd kX = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  static const Eigen::Matrix2cd kY =
      (Eigen::Matrix2cd() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  static const Eigen::Matrix2cd kZ = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();

  Matrix out = Matrix::Ones(1, 1);
  // Qubit 0 is the least significant bit, so it is the innermost Kronecker
  // factor; growing outward keeps each already-built site in the low bits.
  for (int i = 0; i < p.n; ++i) {
    const bool xi = (p.x >> i) & 1, zi = (p.z >> i) & 1;
    const Eigen::Matrix2cd& site = xi ? (zi ? kY : kX) : (zi ? kZ : kI);
    Matrix next(out.rows() * 2, out.cols() * 2);
    next.topLeftCorner(out.rows(), out.cols()) = site(0, 0) * out;
    next.topRightCorner(out.rows(), out.cols()) = site(0, 1) * out;
    next.bottomLeftCorner(out.rows(), out.cols()) = site(1, 0) * out;
    next.bottomRightCorner(out.rows(), out.cols()) = site(1, 1) * out;
    out.swap(next);
  }
  return out;
}

DenseOp pauli_op(const PauliString& p) { return DenseOp{p.n, pauli_matrix(p)}; }

DenseState state_max_mixed(int n) {
  require_dense_qubits(n, "state_max_mixed");
  const Eigen::Index dim = Eigen::Index(1) << n;
  DenseState s{n, Matrix::Zero(dim, dim)};
  s.rho.diagonal().setConstant(1.0 / static_cast<double>(dim));
  return s;
}

DenseState state_i_plus_p(const PauliString& p) {
  require_dense_qubits(p.n, "state_i_plus_p");
  if (p.is_identity()) {
    throw std::invalid_argument(
        "state_i_plus_p: identity rejected; use state_max_mixed for that arm");
  }
  const double dim = std::ldexp(1.0, p.n);
  DenseState s{p.n, pauli_matrix(p)};
  s.rho.diagonal().array() += 1.0;
  s.rho /= dim;
  return s;
}

DenseState state_haar_pure(int n, Rng& rng) {
  require_dense_qubits(n, "state_haar_pure");
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(rng.gaussian(), rng.gaussian());
  v.normalize();
  return DenseState{n, v * v.adjoint()};
}

double purity(const DenseState& s) {
  return s.rho.transpose().cwiseProduct(s.rho).sum().real();
}

static void require_lambda(double lambda, const char* what) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": lambda must be in [0, 1]");
  }
}

void depolarize_in_place(Matrix& mat, int m, double lambda, std::span<const int> qubits) {
  require_lambda(lambda, "depolarize");
  const Eigen::Index dim = Eigen::Index(1) << m;
  if (mat.rows() != dim || mat.cols() != dim) {
    throw std::invalid_argument("depolarize: matrix does not match qubit count");
  }
  const double keep = 1.0 - lambda, half = 0.5 * lambda;
  for (int q : qubits) {
    if (q < 0 || q >= m) throw std::invalid_argument("depolarize: qubit index out of range");
    const Eigen::Index bit = Eigen::Index(1) << q;
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (j & bit) continue;
      const Eigen::Index j1 = j | bit;
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const Eigen::Index i1 = i | bit;
        const Complex t = half * (mat(i, j) + mat(i1, j1));
        mat(i, j) = keep * mat(i, j) + t;
        mat(i1, j1) = keep * mat(i1, j1) + t;
        mat(i, j1) *= keep;
        mat(i1, j) *= keep;
      }
    }
  }
}

void depolarize_all_in_place(Matrix& mat, int m, double lambda) {
  std::vector<int> qs(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) qs[static_cast<size_t>(i)] = i;
  depolarize_in_place(mat, m, lambda, qs);
}

DenseState depolarize(const DenseState& s, double lambda, std::span<const int> qubits) {
  DenseState out = s;
  depolarize_in_place(out.rho, out.m, lambda, qubits);
  return out;
}

DenseState depolarize_all(const DenseState& s, double lambda) {
  DenseState out = s;
  depolarize_all_in_place(out.rho, out.m, lambda);
  return out;
}

DenseOp depolarize_op_all(const DenseOp& a, double lambda) {
  DenseOp out = a;
  depolarize_all_in_place(out.op, out.m, lambda);
  return out;
}

DenseOp swap_op(int n) {
  require_dense_qubits(2 * n, "swap_op");
  const Eigen::Index half = Eigen::Index(1) << n;
  DenseOp s{2 * n, Matrix::Zero(half * half, half * half)};
  for (Eigen::Index a = 0; a < half; ++a) {
    for (Eigen::Index b = 0; b < half; ++b) {
      s.op((a << n) | b, (b << n) | a) = 1.0;
    }
  }
  return s;
}

DenseOp bell_povm_element(int n, uint64_t sx, uint64_t sz) {
  require_dense_qubits(2 * n, "bell_povm_element");
  const uint64_t mask = (1ull << n) - 1;
  if ((sx & ~mask) || (sz & ~mask)) {
    throw std::invalid_argument("bell_povm_element: label bits above position n-1");
  }
  const Eigen::Index dim = Eigen::Index(1) << (2 * n);
  Matrix out = Matrix::Zero(dim, dim);
  const Eigen::Index half = Eigen::Index(1) << n;
  for (uint64_t px = 0; px <= mask; ++px) {
    for (uint64_t pz = 0; pz <= mask; ++pz) {
      // <s,p> + <p> over F2 fixes the sign; Y sites carry their i X Z phase
      // inside pauli_matrix, so the sum below is over Hermitian operators.
      const int sign_bit =
          (std::popcount(sx & pz) + std::popcount(sz & px) + std::popcount(px & pz)) & 1;
      const double sign = sign_bit ? -1.0 : 1.0;
      const Matrix p = pauli_matrix(PauliString(n, px, pz));
      for (Eigen::Index bc = 0; bc < half; ++bc) {
        for (Eigen::Index br = 0; br < half; ++br) {
          if (p(br, bc) == Complex(0, 0)) continue;
          const Complex coeff = sign * p(br, bc);
          out.block((br << n), (bc << n), half, half) += coeff * p;
        }
      }
    }
  }
  out /= std::ldexp(1.0, 2 * n);
  return DenseOp{2 * n, std::move(out)};
}

std::vector<DenseOp> bell_povm(int n) {
  require_dense_qubits(2 * n, "bell_povm");
  std::vector<DenseOp> out;
  out.reserve(1ull << (2 * n));
  const uint64_t top = 1ull << n;
  for (uint64_t sx = 0; sx < top; ++sx) {
    for (uint64_t sz = 0; sz < top; ++sz) {
      out.push_back(bell_povm_element(n, sx, sz));
    }
  }
  return out;
}

double expectation(const DenseOp& op, const DenseState& state) {
  if (op.m != state.m) throw std::invalid_argument("expectation: dimension mismatch");
  const Complex t = (op.op.transpose().cwiseProduct(state.rho)).sum();
  if (std::abs(t.imag()) > kImagTol) {
    throw numerical_error("expectation: imaginary residue " + std::to_string(t.imag()));
  }
  return t.real();
}

Povm make_povm(std::vector<DenseOp> elements) {
  if (elements.empty()) throw std::invalid_argument("make_povm: no elements");
  const int m = elements.front().m;
  const Eigen::Index dim = Eigen::Index(1) << m;
  Matrix sum = Matrix::Zero(dim, dim);
  Povm povm{m, {}};
  povm.elements.reserve(elements.size());
  for (auto& e : elements) {
    if (e.m != m) throw std::invalid_argument("make_povm: mixed dimensions");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (e.op + e.op.adjoint()),
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPovmTol) {
      throw std::invalid_argument("make_povm: element not PSD within tolerance");
    }
    sum += e.op;
    povm.elements.push_back(std::move(e.op));
  }
  sum.diagonal().array() -= 1.0;
  if (sum.cwiseAbs().maxCoeff() > kPovmTol) {
    throw std::invalid_argument("make_povm: elements do not sum to the identity within 1e-8");
  }
  return povm;
}

int measure_povm(const DenseState& state, const Povm& povm, Rng& rng) {
  if (povm.m != state.m) throw std::invalid_argument("measure_povm: dimension mismatch");
  std::vector<double> probs(povm.elements.size());
  double total = 0.0;
  for (size_t i = 0; i < povm.elements.size(); ++i) {
    double p = (povm.elements[i].transpose().cwiseProduct(state.rho)).sum().real();
    if (p < 0.0) {
      if (p < kProbClamp) {
        throw numerical_error("measure_povm: outcome probability " + std::to_string(p));
      }
      p = 0.0;
    }
    probs[i] = p;
    total += p;
  }
  if (total <= 0.0) throw numerical_error("measure_povm: all outcome probabilities vanish");
  double u = rng.uniform() * total;
  for (size_t i = 0; i + 1 < probs.size(); ++i) {
    u -= probs[i];
    if (u < 0.0) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size() - 1);
}

void apply_single_qubit_unitary(Matrix& rho, int m, int qubit, const Eigen::Matrix2cd& u) {
  const Eigen::Index dim = Eigen::Index(1) << m;
  const Eigen::Index bit = Eigen::Index(1) << qubit;
  // rho <- (U_q rho) U_q^dagger, row pass then column pass.
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (i & bit) continue;
      const Eigen::Index i1 = i | bit;
      const Complex a = rho(i, j), b = rho(i1, j);
      rho(i, j) = u(0, 0) * a + u(0, 1) * b;
      rho(i1, j) = u(1, 0) * a + u(1, 1) * b;
    }
  }
  const Eigen::Matrix2cd ud = u.adjoint();
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (j & bit) continue;
    const Eigen::Index j1 = j | bit;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const Complex a = rho(i, j), b = rho(i, j1);
      rho(i, j) = a * ud(0, 0) + b * ud(1, 0);
      rho(i, j1) = a * ud(0, 1) + b * ud(1, 1);
    }
  }
}

void apply_involution(Matrix& rho, std::span<const uint32_t> perm) {
  const Eigen::Index dim = rho.rows();
  if (static_cast<Eigen::Index>(perm.size()) != dim) {
    throw std::invalid_argument("apply_involution: permutation size mismatch");
  }
  // perm is its own inverse, so conjugation is a set of entry swaps over
  // orbits of size two.
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Eigen::Index pj = perm[static_cast<size_t>(j)];
    if (pj < j) continue;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const Eigen::Index pi = perm[static_cast<size_t>(i)];
      if (pj == j && pi <= i) continue;
      std::swap(rho(i, j), rho(pi, pj));
    }
  }
}

std::vector<double> marginal_distribution(const Matrix& rho, int m, int k) {
  const Eigen::Index dim = Eigen::Index(1) << m;
  const uint64_t low_mask = (1ull << k) - 1;
  std::vector<double> p(1ull << k, 0.0);
  for (Eigen::Index i = 0; i < dim; ++i) {
    p[static_cast<uint64_t>(i) & low_mask] += rho(i, i).real();
  }
  return p;
}

}  // namespace nql
