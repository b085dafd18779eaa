#include "nql/ident.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "nql/common.hpp"

namespace nql {

uint64_t required_samples(int n, double lambda, double C) {
  if (n < 1) throw std::invalid_argument("required_samples: n must be >= 1");
  if (!(C > 0.0)) throw std::invalid_argument("required_samples: C must be positive");
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw std::invalid_argument(
        "required_samples: lambda must be in [0, 1); the budget diverges at lambda = 1");
  }
  return static_cast<uint64_t>(
      std::ceil(C * n * std::pow(1.0 - lambda, -4.0 * n)));
}

// In-place Walsh-Hadamard transform: out[t] = sum_w in[w] (-1)^{popcount(w & t)}.
static void walsh_transform(std::vector<int64_t>& a) {
  for (size_t len = 1; len < a.size(); len <<= 1) {
    for (size_t i = 0; i < a.size(); i += len << 1) {
      for (size_t j = i; j < i + len; ++j) {
        const int64_t u = a[j], v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
    }
  }
}

PauliIdentResult identify_pauli(const std::function<BellSample()>& source, int n,
                                double lambda, uint64_t samples) {
  if (n < 1) throw std::invalid_argument("identify_pauli: n must be >= 1");
  if (n > kMaxEnumQubits) {
    throw capacity_error("identify_pauli: postprocessing enumerates 4^" + std::to_string(n) +
                         " Paulis; cap is n <= " + std::to_string(kMaxEnumQubits));
  }
  if (samples == 0) throw std::invalid_argument("identify_pauli: empty sample stream");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("identify_pauli: lambda must be in [0, 1]");
  }

  std::vector<int64_t> counts(1ull << (2 * n), 0);
  for (uint64_t t = 0; t < samples; ++t) {
    const BellSample s = source();
    if (s.n != n) throw std::invalid_argument("identify_pauli: sample size mismatch");
    counts[(s.sx << n) | s.sz] += 1;
  }
  walsh_transform(counts);

  // <s,q> pairs s.sx against q.z and s.sz against q.x, so Z_Q sits at the
  // half-swapped index (qz || qx). Scan in lexicographic (x|z) order; strict
  // comparison keeps the first (smallest) maximizer, and the comparison is
  // exact because the transform is integer.
  int64_t best = -1;
  uint64_t best_x = 0, best_z = 0;
  const uint64_t top = 1ull << n;
  for (uint64_t qx = 0; qx < top; ++qx) {
    for (uint64_t qz = 0; qz < top; ++qz) {
      if (qx == 0 && qz == 0) continue;
      const int64_t w = std::abs(counts[(qz << n) | qx]);
      if (w > best) {
        best = w;
        best_x = qx;
        best_z = qz;
      }
    }
  }

  PauliIdentResult out;
  out.samples_used = samples;
  out.z_max = static_cast<double>(best) / static_cast<double>(samples);
  out.threshold = 0.5 * std::pow(1.0 - lambda, 2 * n);
  out.h1 = out.z_max >= out.threshold;
  if (out.h1) out.argmax = PauliString(n, best_x, best_z);
  return out;
}

}  // namespace nql
