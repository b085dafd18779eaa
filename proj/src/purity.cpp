#include "nql/purity.hpp"

#include <cmath>
#include <stdexcept>

namespace nql {

double swap_test_accept_prob(const DenseState& rho, const DenseState& sigma) {
  if (rho.m != sigma.m) throw std::invalid_argument("swap_test: dimension mismatch");
  require_dense_qubits(2 * rho.m, "swap_test");
  const double overlap = rho.rho.transpose().cwiseProduct(sigma.rho).sum().real();
  return 0.5 + 0.5 * overlap;
}

bool swap_test(const DenseState& rho, const DenseState& sigma, Rng& rng) {
  return rng.bernoulli(swap_test_accept_prob(rho, sigma));
}

double haar_mean_noisy_purity(int n, double lambda) {
  const double g = lambda * (2.0 - lambda) + 4.0 * (1.0 - lambda) * (1.0 - lambda);
  const double dim = std::ldexp(1.0, n);
  return (dim + std::pow(g, n)) / (dim * (dim + 1.0));
}

PurityTrial purity_test_trial(int n, double lambda, int tests, Rng& rng) {
  require_dense_qubits(2 * n, "purity_test_trial");
  if (tests < 1) throw std::invalid_argument("purity_test_trial: tests must be >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("purity_test_trial: lambda must be in [0, 1]");
  }

  const double mean_pure = 0.5 + 0.5 * haar_mean_noisy_purity(n, lambda);
  const double mean_mixed = 0.5 + 0.5 * std::ldexp(1.0, -n);
  const double threshold = 0.5 * (mean_pure + mean_mixed);

  PurityTrial trial;
  trial.tests = tests;
  trial.truth_pure = rng.bernoulli(0.5);
  DenseState copy = trial.truth_pure ? depolarize_all(state_haar_pure(n, rng), lambda)
                                     : state_max_mixed(n);
  trial.accept_prob = swap_test_accept_prob(copy, copy);
  for (int t = 0; t < tests; ++t) {
    if (swap_test(copy, copy, rng)) ++trial.accepts;
  }
  trial.decided_pure =
      static_cast<double>(trial.accepts) >= threshold * static_cast<double>(tests);
  return trial;
}

}  // namespace nql
