#include "nql/simon.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nql/common.hpp"

namespace nql {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

const Eigen::Matrix2cd& hadamard() {
  static const Eigen::Matrix2cd h =
      (Eigen::Matrix2cd() << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2).finished();
  return h;
}

void require_simon_n(int n) {
  if (n < 1) throw std::invalid_argument("simon: n must be >= 1");
  if (3 * n > kMaxDenseQubits) {
    throw capacity_error("simon: the lifted circuit uses 3n = " + std::to_string(3 * n) +
                         " qubits; dense cap is " + std::to_string(kMaxDenseQubits));
  }
}

// Exact circuit evolution shared by the lifted and unlifted variants.
// Layout: qubits [0, n) query register (Hadamards + measurement), the rest
// carry the oracle's padding/output registers.
std::vector<double> simon_circuit_distribution(int m, int n,
                                               const std::vector<uint32_t>* perm,
                                               double lambda, int oracle_layers) {
  const Eigen::Index dim = Eigen::Index(1) << m;
  Matrix rho = Matrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  for (int q = 0; q < n; ++q) apply_single_qubit_unitary(rho, m, q, hadamard());
  for (int call = 0; call < oracle_layers; ++call) {
    if (lambda > 0.0) depolarize_all_in_place(rho, m, lambda);
    if (perm != nullptr) apply_involution(rho, *perm);
  }
  if (lambda > 0.0) depolarize_all_in_place(rho, m, lambda);
  for (int q = 0; q < n; ++q) apply_single_qubit_unitary(rho, m, q, hadamard());
  return marginal_distribution(rho, m, n);
}

std::vector<uint32_t> lifted_permutation(const LiftedSimonOracle& oracle) {
  const int n = oracle.n;
  const uint64_t dim = 1ull << (3 * n);
  const uint32_t n_mask = (1u << n) - 1;
  std::vector<uint32_t> perm(dim);
  for (uint64_t b = 0; b < dim; ++b) {
    const uint32_t x_lo = static_cast<uint32_t>(b) & n_mask;
    const uint32_t pad = (static_cast<uint32_t>(b) >> n) & n_mask;
    const uint32_t y = (static_cast<uint32_t>(b) >> (2 * n)) & n_mask;
    const uint32_t out = pad == 0 ? oracle.table[x_lo] : 0;  // "0 else"
    perm[b] = (static_cast<uint32_t>(b) & ((1u << (2 * n)) - 1)) | ((y ^ out) << (2 * n));
  }
  return perm;
}

}  // namespace

LiftedSimonOracle make_simon_instance(int n, bool two_to_one, Rng& rng) {
  require_simon_n(n);
  const uint32_t dom = 1u << n;
  LiftedSimonOracle oracle;
  oracle.n = n;
  oracle.table.assign(dom, 0);

  std::vector<uint32_t> values(dom);
  std::iota(values.begin(), values.end(), 0u);
  for (uint32_t i = dom - 1; i > 0; --i) {
    std::swap(values[i], values[rng.below(i + 1)]);
  }

  if (two_to_one) {
    if (n < 2) throw std::invalid_argument("make_simon_instance: two-to-one needs n >= 2");
    const uint32_t s = 1u + static_cast<uint32_t>(rng.below(dom - 1));
    oracle.secret = s;
    uint32_t next_value = 0;
    for (uint32_t x = 0; x < dom; ++x) {
      if (x < (x ^ s)) {
        oracle.table[x] = oracle.table[x ^ s] = values[next_value++];
      }
    }
  } else {
    oracle.table = values;
  }
  return oracle;
}

DenseOp oracle_unitary(const LiftedSimonOracle& oracle) {
  require_simon_n(oracle.n);
  const auto perm = lifted_permutation(oracle);
  const Eigen::Index dim = static_cast<Eigen::Index>(perm.size());
  DenseOp u{3 * oracle.n, Matrix::Zero(dim, dim)};
  for (Eigen::Index b = 0; b < dim; ++b) u.op(perm[static_cast<size_t>(b)], b) = 1.0;
  return u;
}

std::vector<double> noisy_simon_distribution(const LiftedSimonOracle* oracle, int n,
                                             double lambda, int oracle_layers) {
  require_simon_n(n);
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("simon: lambda must be in [0, 1]");
  }
  if (oracle_layers < 1) throw std::invalid_argument("simon: need at least one oracle layer");
  if (oracle == nullptr) {
    return simon_circuit_distribution(3 * n, n, nullptr, lambda, oracle_layers);
  }
  if (oracle->n != n) throw std::invalid_argument("simon: oracle size mismatch");
  const auto perm = lifted_permutation(*oracle);
  return simon_circuit_distribution(3 * n, n, &perm, lambda, oracle_layers);
}

std::vector<double> unlifted_simon_distribution(const LiftedSimonOracle& oracle) {
  const int n = oracle.n;
  require_simon_n(n);
  const uint64_t dim = 1ull << (2 * n);
  const uint32_t n_mask = (1u << n) - 1;
  std::vector<uint32_t> perm(dim);
  for (uint64_t b = 0; b < dim; ++b) {
    const uint32_t x = static_cast<uint32_t>(b) & n_mask;
    const uint32_t y = (static_cast<uint32_t>(b) >> n) & n_mask;
    perm[b] = x | ((y ^ oracle.table[x]) << n);
  }
  return simon_circuit_distribution(2 * n, n, &perm, 0.0, 1);
}

SimonRunResult run_noisy_simon(const LiftedSimonOracle& oracle, double lambda, int queries,
                               Rng& rng) {
  const int n = oracle.n;
  if (queries < n - 1) {
    throw std::invalid_argument("run_noisy_simon: need at least n-1 queries");
  }
  const auto dist = noisy_simon_distribution(&oracle, n, lambda, 1);

  SimonRunResult result;
  result.outcomes.reserve(static_cast<size_t>(queries));
  // F2 pivot basis of the span of observed strings (distinct leading bits).
  std::array<uint32_t, 32> pivot_rows{};
  int rank = 0;
  for (int q = 0; q < queries; ++q) {
    double u = rng.uniform();
    uint32_t y = static_cast<uint32_t>(dist.size() - 1);
    for (size_t i = 0; i < dist.size(); ++i) {
      u -= dist[i];
      if (u < 0.0) {
        y = static_cast<uint32_t>(i);
        break;
      }
    }
    result.outcomes.push_back(y);
    for (int bit = n - 1; bit >= 0 && y; --bit) {
      if (!((y >> bit) & 1)) continue;
      if (pivot_rows[static_cast<size_t>(bit)]) {
        y ^= pivot_rows[static_cast<size_t>(bit)];
      } else {
        pivot_rows[static_cast<size_t>(bit)] = y;
        ++rank;
        break;
      }
    }
  }
  result.rank = rank;
  if (rank != n - 1) return result;  // rank n is inconsistent, below n-1 under-determined

  // The unique nonzero s orthogonal to the basis; n <= 4, so scanning the
  // 2^n - 1 candidates is the simplest exact solve.
  for (uint32_t s = 1; s < (1u << n); ++s) {
    bool orthogonal = true;
    for (int bit = 0; bit < n && orthogonal; ++bit) {
      const uint32_t row = pivot_rows[static_cast<size_t>(bit)];
      if (row && (std::popcount(row & s) & 1)) orthogonal = false;
    }
    if (orthogonal) {
      result.recovered = s;
      break;
    }
  }
  return result;
}

double blind_guess_baseline(int n) {
  if (n < 1) throw std::invalid_argument("blind_guess_baseline: n must be >= 1");
  return 1.0 / (std::ldexp(1.0, n) - 1.0);
}

double oracle_identity_tv(const LiftedSimonOracle& oracle, double lambda, int depth) {
  const auto p = noisy_simon_distribution(&oracle, oracle.n, lambda, depth);
  const auto q = noisy_simon_distribution(nullptr, oracle.n, lambda, depth);
  double tv = 0.0;
  for (size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return 0.5 * tv;
}

}  // namespace nql
