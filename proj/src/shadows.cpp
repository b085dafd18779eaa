#include "nql/shadows.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nql {

Eigen::Matrix2cd haar_unitary_2x2(Rng& rng) {
  Eigen::Vector2cd a(Complex(rng.gaussian(), rng.gaussian()),
                     Complex(rng.gaussian(), rng.gaussian()));
  Eigen::Vector2cd b(Complex(rng.gaussian(), rng.gaussian()),
                     Complex(rng.gaussian(), rng.gaussian()));
  a /= a.norm();
  b -= a.dot(b) * a;
  b /= b.norm();
  Eigen::Matrix2cd u;
  u.col(0) = a;
  u.col(1) = b;
  return u;
}

std::array<double, 3> measurement_axis(const Eigen::Matrix2cd& u) {
  // U^dag Z U is traceless Hermitian; its Bloch components are the rotated
  // measurement axis t = R_U^T z.
  static const Eigen::Matrix2cd kZ = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  const Eigen::Matrix2cd m = u.adjoint() * kZ * u;
  return {m(1, 0).real(), m(1, 0).imag(), m(0, 0).real()};
}

namespace {

constexpr std::array<double, 3> kAxisX{1, 0, 0};
constexpr std::array<double, 3> kAxisY{0, 1, 0};
constexpr std::array<double, 3> kAxisZ{0, 0, 1};

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

const std::array<double, 3>& pauli_axis(const PauliString& p, int site) {
  const bool xi = (p.x >> site) & 1, zi = (p.z >> site) & 1;
  return xi ? (zi ? kAxisY : kAxisX) : kAxisZ;
}

void require_lambda01(double lambda, const char* what) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": lambda must be in [0, 1]");
  }
}

}  // namespace

std::vector<ShadowSnapshot> collect_shadows(const PauliString& p, double lambda,
                                            size_t count, Rng& rng) {
  require_lambda01(lambda, "collect_shadows");
  const int n = p.n;
  const double damp2 = (1.0 - lambda) * (1.0 - lambda);

  std::vector<int> support;
  for (int i = 0; i < n; ++i) {
    if (((p.x | p.z) >> i) & 1) support.push_back(i);
  }

  std::vector<ShadowSnapshot> out(count);
  std::vector<double> bloch_z(static_cast<size_t>(n));  // sign of the sampled eigenstate
  for (auto& snap : out) {
    snap.axes.resize(static_cast<size_t>(n));

    // Draw a product eigenstate of (1+P)/2^n: free +-1 signs everywhere,
    // with the product of the support signs pinned to +1. This mixture is
    // exactly the state, so per-site 2x2 marginals are exact.
    int parity = 0;
    for (size_t k = 0; k < support.size(); ++k) {
      int sgn;
      if (k + 1 == support.size()) {
        sgn = parity;  // last support sign restores +1 total parity
      } else {
        sgn = rng.bernoulli(0.5) ? 1 : 0;
        parity ^= sgn;
      }
      bloch_z[static_cast<size_t>(support[k])] = sgn ? -1.0 : 1.0;
    }
    for (int i = 0; i < n; ++i) {
      if (!(((p.x | p.z) >> i) & 1)) bloch_z[static_cast<size_t>(i)] = rng.bernoulli(0.5) ? -1.0 : 1.0;
    }

    for (int i = 0; i < n; ++i) {
      const auto axis = measurement_axis(haar_unitary_2x2(rng));
      snap.axes[static_cast<size_t>(i)] = axis;
      // Site Bloch vector is bloch_z[i] along the site's Pauli axis (or z on
      // non-support sites). Outcome 0 with prob 1/2 (1 + (1-l)^2 a.t).
      const std::array<double, 3>& dir =
          (((p.x | p.z) >> i) & 1) ? pauli_axis(p, i) : kAxisZ;
      const double a_dot_t = bloch_z[static_cast<size_t>(i)] * dot3(dir, axis);
      const double p0 = 0.5 * (1.0 + damp2 * a_dot_t);
      if (!rng.bernoulli(p0)) snap.outcomes |= 1ull << i;
    }
  }
  return out;
}

std::vector<ShadowSnapshot> collect_shadows_dense(const DenseState& state, double lambda,
                                                  size_t count, Rng& rng) {
  require_lambda01(lambda, "collect_shadows_dense");
  if (state.m > 10) {
    throw capacity_error("collect_shadows_dense: dense shadow path capped at 10 qubits");
  }
  const int n = state.m;
  const Eigen::Index dim = Eigen::Index(1) << n;
  Matrix pre = state.rho;
  depolarize_all_in_place(pre, n, lambda);

  std::vector<ShadowSnapshot> out(count);
  Matrix work(dim, dim);
  for (auto& snap : out) {
    snap.axes.resize(static_cast<size_t>(n));
    work = pre;
    for (int i = 0; i < n; ++i) {
      const Eigen::Matrix2cd u = haar_unitary_2x2(rng);
      snap.axes[static_cast<size_t>(i)] = measurement_axis(u);
      apply_single_qubit_unitary(work, n, i, u);
    }
    depolarize_all_in_place(work, n, lambda);
    double u01 = rng.uniform();
    Eigen::Index outcome = dim - 1;
    for (Eigen::Index s = 0; s < dim; ++s) {
      u01 -= work(s, s).real();
      if (u01 < 0.0) {
        outcome = s;
        break;
      }
    }
    snap.outcomes = static_cast<uint64_t>(outcome);
  }
  return out;
}

double shadow_weight(const PauliString& p, double lambda) {
  require_lambda01(lambda, "shadow_weight");
  const double site = (1.0 - lambda) * (1.0 - lambda) / 3.0;
  return std::pow(site, weight(p));
}

double snapshot_product(const ShadowSnapshot& snap, const PauliString& p) {
  double prod = 1.0;
  for (int i = 0; i < p.n; ++i) {
    if (!(((p.x | p.z) >> i) & 1)) continue;
    const double m = dot3(snap.axes[static_cast<size_t>(i)], pauli_axis(p, i));
    prod *= ((snap.outcomes >> i) & 1) ? -m : m;
  }
  return prod;
}

double median_of_means(std::span<const double> values, size_t batches) {
  if (batches < 1) throw std::invalid_argument("median_of_means: need at least one batch");
  if (values.size() < batches) {
    throw std::invalid_argument("median_of_means: fewer values than batches");
  }
  const size_t batch_size = values.size() / batches;
  std::vector<double> means(batches, 0.0);
  for (size_t b = 0; b < batches; ++b) {
    double sum = 0.0;
    for (size_t i = b * batch_size; i < (b + 1) * batch_size; ++i) sum += values[i];
    means[b] = sum / static_cast<double>(batch_size);
  }
  std::sort(means.begin(), means.end());
  return means[(batches - 1) / 2];  // lower median for even counts
}

ShadowEstimate estimate_observable(std::span<const ShadowSnapshot> snaps,
                                   const PauliString& p, double lambda, size_t batches) {
  if (snaps.empty()) throw std::invalid_argument("estimate_observable: no snapshots");
  if (lambda == 1.0) {
    throw std::invalid_argument(
        "estimate_observable: lambda = 1 has zero reconstruction weight");
  }
  require_lambda01(lambda, "estimate_observable");
  std::vector<double> raw(snaps.size());
  for (size_t i = 0; i < snaps.size(); ++i) raw[i] = snapshot_product(snaps[i], p);
  const double value = median_of_means(raw, batches) / shadow_weight(p, lambda);
  return ShadowEstimate{p, value, static_cast<int>(batches)};
}

}  // namespace nql
