#pragma once

#include <cstdint>
#include <vector>

#include "nql/dense.hpp"
#include "nql/pauli.hpp"
#include "nql/rng.hpp"

namespace nql {

/// Physical per-qubit noise parameters. lambda is always the bare
/// depolarizing rate; no derived effective rates are cached anywhere.
struct NoiseModel {
  double lambda = 0.0;
  double erasure_rate = 0.0;

  bool operator==(const NoiseModel&) const = default;
};

/// Round-trips through the experiment config format ("lambda = x" /
/// "erasure_rate = y" lines).
std::string render_noise_model(const NoiseModel& m);
NoiseModel parse_noise_model(const std::string& text);

/// f(l) = 1 - l + l^2/2, the per-site constant governing noisy SWAP
/// expectations. Decreasing on [0, 1], range [1/2, 1].
double f_lambda(double lambda);

/// (1 - l)^{|P|}: damping of a Pauli operator under one depolarizing layer.
double pauli_damping(const PauliString& p, double lambda);

/// The two-qubit operator 2 l (1-l) I + 2 (1-l)^2 SWAP. Equals
/// 4 E_P[D(P) (x) D(P)] up to a l^2 I/4 shift in the identity coefficient
/// (see tests for the exact relation).
DenseOp h_lambda_op(double lambda);

/// Independent Bernoulli(rate) mask, one byte per leg.
std::vector<uint8_t> erasure_mask(size_t n_legs, double rate, Rng& rng);

}  // namespace nql
