#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "nql/ident.hpp"
#include "nql/noise.hpp"

using namespace nql;

namespace {

PauliIdentResult run_arm(int n, double lambda, uint64_t samples, BellHypothesis hyp,
                         Rng& rng) {
  return identify_pauli([&]() { return sample_bell(n, hyp, lambda, rng); }, n, lambda,
                        samples);
}

}  // namespace

TEST_CASE("sample budget formula") {
  CHECK(required_samples(3, 0.0, 8.0) == 24);
  CHECK(required_samples(3, 0.1, 8.0) == 85);
  CHECK_THROWS_AS(required_samples(3, 1.0, 8.0), std::invalid_argument);
  CHECK_THROWS_AS(required_samples(3, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("input validation") {
  Rng rng(1);
  CHECK_THROWS_AS(run_arm(11, 0.0, 1, std::nullopt, rng), capacity_error);
  CHECK_THROWS_AS(run_arm(2, 0.0, 0, std::nullopt, rng), std::invalid_argument);
}

TEST_CASE("a single noiseless sample already certifies H1") {
  Rng rng(2);
  const auto p = PauliString::from_str("ZIZ");
  const auto res = run_arm(3, 0.0, 1, p, rng);
  CHECK(res.h1);
  CHECK(res.z_max == 1.0);
  CHECK(res.threshold == 0.5);
  CHECK(res.samples_used == 1);
  REQUIRE(res.argmax.has_value());
}

TEST_CASE("noiseless H1 arm identifies the planted Pauli") {
  Rng rng(3);
  int hits = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const auto p = random_pauli(2, false, rng);
    const auto res = run_arm(2, 0.0, required_samples(2, 0.0, 8.0), p, rng);
    hits += res.h1 && res.argmax && *res.argmax == p;
  }
  CHECK(hits >= 90);
}

TEST_CASE("postprocessing is invariant under stream permutation") {
  Rng rng(4);
  const auto p = PauliString::from_str("XY");
  std::vector<BellSample> samples;
  for (int i = 0; i < 200; ++i) samples.push_back(sample_bell(2, p, 0.2, rng));

  auto run_stream = [&](const std::vector<BellSample>& stream) {
    size_t i = 0;
    return identify_pauli([&]() { return stream[i++]; }, 2, 0.2, stream.size());
  };
  const auto base = run_stream(samples);
  std::vector<BellSample> shuffled = samples;
  for (size_t i = shuffled.size(); i > 1; --i) {
    std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
  }
  const auto permuted = run_stream(shuffled);
  CHECK(base.h1 == permuted.h1);
  CHECK(base.z_max == permuted.z_max);
  CHECK((base.argmax && permuted.argmax ? *base.argmax == *permuted.argmax
                                        : base.argmax == permuted.argmax));
}

TEST_CASE("lexicographic tie-break is deterministic") {
  // One fixed sample: every Q with the same parity ties at |Z| = 1; the
  // winner must be the lexicographically first (x|z) word among them.
  const BellSample s{2, 0, 0};  // orthogonal to everything
  const auto res = identify_pauli([&]() { return s; }, 2, 0.0, 1);
  REQUIRE(res.argmax.has_value());
  CHECK(res.argmax->x == 0);
  CHECK(res.argmax->z == 1);  // first non-identity in (x|z) order
}

// Type-I error shape. For +-1-valued per-sample statistics Hoeffding gives
// P[|Z_Q| >= tau] <= 2 exp(-T tau^2 / 2); the union over the 4^n - 1
// candidates bounds the false-alarm rate. Checked against 500-trial
// empirical rates, with 0.05 slack for sampling error.
TEST_CASE("H0 false-alarm rate obeys the union Hoeffding bound") {
  Rng rng(5);
  const int trials = 500;
  for (int n = 2; n <= 4; ++n) {
    for (double lambda : {0.0, 0.1, 0.3}) {
      // Both the default budget and a 4x budget; the latter pushes the bound
      // into its informative (sub-unit) range.
      for (double c : {8.0, 32.0}) {
        const uint64_t samples = required_samples(n, lambda, c);
        const double tau = 0.5 * std::pow(1.0 - lambda, 2 * n);
        const double bound =
            std::min(1.0, (std::ldexp(1.0, 2 * n) - 1.0) * 2.0 *
                              std::exp(-static_cast<double>(samples) * tau * tau / 2.0));
        int alarms = 0;
        for (int t = 0; t < trials; ++t) {
          alarms += run_arm(n, lambda, samples, std::nullopt, rng).h1;
        }
        const double rate = static_cast<double>(alarms) / trials;
        INFO("n=" << n << " lambda=" << lambda << " C=" << c << " rate=" << rate
                  << " bound=" << bound);
        REQUIRE(rate <= bound + 0.05);
      }
    }
  }
}
