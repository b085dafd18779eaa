#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "nql/bell.hpp"
#include "nql/pauli.hpp"

namespace nql {

struct PauliIdentResult {
  bool h1 = false;                      // decision: H1 iff z_max >= threshold
  std::optional<PauliString> argmax;    // present iff h1
  double z_max = 0.0;
  double threshold = 0.0;
  uint64_t samples_used = 0;
};

/// Sample budget ceil(C n (1-l)^{-4n}). At l = 1 the task is
/// information-theoretically impossible and the input is rejected.
uint64_t required_samples(int n, double lambda, double C);

/// Two-copy Pauli identification from a stream of Bell outcomes.
///
/// Computes Z_Q = T^-1 sum_s (-1)^{<s,q>} for every non-identity Q, takes
/// the largest magnitude (lexicographic (x|z) tie-break), and decides H1 iff
/// it clears 1/2 (1-l)^{2n}. The stream is folded into a 4^n histogram and
/// the full table of Z_Q values comes out of one Walsh transform, so the
/// cost is O(T + n 4^n) independent of stream order.
PauliIdentResult identify_pauli(const std::function<BellSample()>& source, int n,
                                double lambda, uint64_t samples);

}  // namespace nql
