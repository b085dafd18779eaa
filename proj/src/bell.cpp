#include "nql/bell.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace nql {

std::string BellSample::hex() const {
  const int digits = (2 * n + 3) / 4;
  std::string out(static_cast<size_t>(digits), '0');
  uint64_t w = word();
  for (int i = digits - 1; i >= 0; --i) {
    out[static_cast<size_t>(i)] = "0123456789abcdef"[w & 0xf];
    w >>= 4;
  }
  return out;
}

static int bell_parity(const BellSample& s, const PauliString& p) {
  return (std::popcount(s.sx & p.z) + std::popcount(s.sz & p.x)) & 1;
}

double bell_outcome_prob(int n, const BellHypothesis& hyp, double lambda,
                         const BellSample& s) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("bell_outcome_prob: lambda must be in [0, 1]");
  }
  if (s.n != n) throw std::invalid_argument("bell_outcome_prob: sample size mismatch");
  const double flat = std::ldexp(1.0, -2 * n);
  if (!hyp) return flat;
  const PauliString& p = *hyp;
  if (p.n != n) throw std::invalid_argument("bell_outcome_prob: Pauli size mismatch");
  if (p.is_identity()) {
    throw std::invalid_argument("bell_outcome_prob: identity hypothesis is the mixed arm");
  }
  const double damp = std::pow(1.0 - lambda, 2 * weight(p));
  const double sign = ((bell_parity(s, p) ^ phase_form(p)) & 1) ? -1.0 : 1.0;
  return flat * (1.0 + damp * sign);
}

BellSample sample_symplectic_coset(const PauliString& p, int parity, Rng& rng) {
  BellSample s{p.n, rng.bits(p.n), rng.bits(p.n)};
  if (p.is_identity()) {
    if (parity != 0) {
      throw std::invalid_argument("sample_symplectic_coset: empty coset for p = identity");
    }
    return s;
  }
  if (bell_parity(s, p) != (parity & 1)) {
    // XOR with a fixed vector of odd pairing; a bijection between the two
    // cosets, so uniformity is preserved.
    if (p.x) {
      s.sz ^= p.x & (~p.x + 1);
    } else {
      s.sx ^= p.z & (~p.z + 1);
    }
  }
  return s;
}

BellSample sample_bell(int n, const BellHypothesis& hyp, double lambda, Rng& rng) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("sample_bell: lambda must be in [0, 1]");
  }
  if (!hyp) return BellSample{n, rng.bits(n), rng.bits(n)};
  const PauliString& p = *hyp;
  if (p.n != n) throw std::invalid_argument("sample_bell: Pauli size mismatch");
  if (p.is_identity()) {
    throw std::invalid_argument("sample_bell: identity hypothesis is the mixed arm");
  }
  const double damp = std::pow(1.0 - lambda, 2 * weight(p));
  const int favored = phase_form(p);
  const int parity = rng.bernoulli(0.5 * (1.0 + damp)) ? favored : (favored ^ 1);
  return sample_symplectic_coset(p, parity, rng);
}

}  // namespace nql
