#pragma once

#include "nql/dense.hpp"
#include "nql/rng.hpp"

namespace nql {

/// Acceptance probability 1/2 + tr(rho sigma)/2 of a SWAP test.
double swap_test_accept_prob(const DenseState& rho, const DenseState& sigma);

/// One Bernoulli SWAP-test run on two m-qubit states (2m <= 12, the size of
/// the physical two-copy circuit).
bool swap_test(const DenseState& rho, const DenseState& sigma, Rng& rng);

/// Haar average of tr(D_l[psi]^2): the predicted per-test acceptance signal
/// of the pure arm, (2^n + g^n) / (2^n (2^n + 1)) with g = l(2-l) + 4(1-l)^2.
double haar_mean_noisy_purity(int n, double lambda);

struct PurityTrial {
  bool truth_pure = false;
  bool decided_pure = false;
  int accepts = 0;
  int tests = 0;
  double accept_prob = 0.0;  // exact per-test acceptance mean of this trial
};

/// One pure-vs-mixed trial: draw the ground truth (fair coin), corrupt both
/// copies with per-qubit depolarizing noise, run `tests` SWAP tests, decide
/// pure when the acceptance fraction clears the midpoint of the two
/// predicted per-test means.
PurityTrial purity_test_trial(int n, double lambda, int tests, Rng& rng);

}  // namespace nql
