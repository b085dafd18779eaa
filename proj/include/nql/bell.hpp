#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nql/pauli.hpp"
#include "nql/rng.hpp"

namespace nql {

/// Outcome of a two-copy Bell measurement: a 2n-bit label s = (sx | sz).
struct BellSample {
  int n = 1;
  uint64_t sx = 0;
  uint64_t sz = 0;

  uint64_t word() const { return (sx << n) | sz; }
  /// Big-endian hex of the 2n-bit word, the trial-log serialization.
  std::string hex() const;

  bool operator==(const BellSample&) const = default;
};

/// The Bell-measurement hypothesis: a Pauli-structured state (1+P)/2^n, or
/// the maximally mixed state when empty.
using BellHypothesis = std::optional<PauliString>;

/// Exact outcome probability of a noisy two-copy Bell measurement,
///   Pr[s] = 4^-n (1 + (1-l)^{2|P|} (-1)^{<s,p> + <p>}),
/// and 4^-n flat for the maximally mixed hypothesis. The (-1)^{<p>} factor
/// carries the Y-site sign of the Bell projectors; the dense POVM is the
/// reference for it.
double bell_outcome_prob(int n, const BellHypothesis& hyp, double lambda,
                         const BellSample& s);

/// Uniform over {s : <s,p> = parity}. Both cosets have 2^{2n-1} elements for
/// p != identity; the identity only has the parity-0 coset (all of F2^{2n}).
BellSample sample_symplectic_coset(const PauliString& p, int parity, Rng& rng);

/// Exact sampler with marginal equal to bell_outcome_prob: flips a coin with
/// bias (1 + (1-l)^{2|P|})/2 for the coset <s,p> = <p>, then draws uniformly
/// inside the chosen coset. O(n) per sample at any n.
BellSample sample_bell(int n, const BellHypothesis& hyp, double lambda, Rng& rng);

}  // namespace nql
