#include <doctest.h>

#include <bit>
#include <cmath>
#include <set>

#include "nql/simon.hpp"

using namespace nql;

TEST_CASE("instance construction") {
  Rng rng(1);
  const auto two = make_simon_instance(3, true, rng);
  REQUIRE(two.secret.has_value());
  REQUIRE(*two.secret != 0);
  std::set<uint32_t> images;
  for (uint32_t x = 0; x < 8; ++x) {
    REQUIRE(two.table[x] == two.table[x ^ *two.secret]);
    images.insert(two.table[x]);
  }
  CHECK(images.size() == 4);

  const auto inj = make_simon_instance(3, false, rng);
  CHECK_FALSE(inj.secret.has_value());
  std::set<uint32_t> inj_images(inj.table.begin(), inj.table.end());
  CHECK(inj_images.size() == 8);

  Rng r1(5), r2(5);
  CHECK(make_simon_instance(3, true, r1).table == make_simon_instance(3, true, r2).table);
  CHECK_THROWS_AS(make_simon_instance(5, true, rng), capacity_error);
}

TEST_CASE("oracle unitary is a self-inverse XOR oracle") {
  Rng rng(2);
  const auto oracle = make_simon_instance(2, true, rng);
  const auto u = oracle_unitary(oracle);
  CHECK((u.op * u.op - Matrix::Identity(64, 64)).cwiseAbs().maxCoeff() < 1e-12);

  const int n = 2;
  for (uint32_t x = 0; x < 4; ++x) {
    // |x, pad=0, y=0> maps to |x, 0, f(x)>.
    const uint32_t in = x;
    const uint32_t out = x | (oracle.table[x] << (2 * n));
    CHECK(std::abs(u.op(out, in).real() - 1.0) < 1e-12);
    // Nonzero padding leaves the output register untouched.
    const uint32_t padded = x | (1u << n);
    CHECK(std::abs(u.op(padded, padded).real() - 1.0) < 1e-12);
  }
}

TEST_CASE("noiseless lift reproduces unlifted Simon statistics") {
  Rng rng(3);
  const auto oracle = make_simon_instance(3, true, rng);
  const auto lifted = noisy_simon_distribution(&oracle, 3, 0.0, 1);
  const auto plain = unlifted_simon_distribution(oracle);
  REQUIRE(lifted.size() == plain.size());
  for (size_t i = 0; i < lifted.size(); ++i) {
    REQUIRE(std::abs(lifted[i] - plain[i]) < 1e-10);
  }
  // Every outcome with positive mass is orthogonal to the secret.
  for (uint32_t y = 0; y < lifted.size(); ++y) {
    if (lifted[y] > 1e-12) {
      REQUIRE((std::popcount(y & *oracle.secret) & 1) == 0);
    }
  }
}

TEST_CASE("noiseless recovery succeeds, heavy noise degrades it") {
  int clean_hits = 0, noisy_hits = 0;
  const int trials = 60;
  for (int t = 0; t < trials; ++t) {
    Rng rng(child_seed(4, 0, static_cast<uint64_t>(t)));
    const auto oracle = make_simon_instance(3, true, rng);
    const auto clean = run_noisy_simon(oracle, 0.0, 60, rng);
    clean_hits += clean.recovered && *clean.recovered == *oracle.secret;
    const auto noisy = run_noisy_simon(oracle, 0.5, 60, rng);
    noisy_hits += noisy.recovered && *noisy.recovered == *oracle.secret;
  }
  CHECK(clean_hits >= static_cast<int>(trials * 0.9));
  // 3-sigma separation between the arms.
  const double p1 = static_cast<double>(clean_hits) / trials;
  const double p2 = static_cast<double>(noisy_hits) / trials;
  const double sigma = std::sqrt((p1 * (1 - p1) + p2 * (1 - p2)) / trials + 1e-9);
  CHECK(p1 - p2 > 3.0 * sigma);
}

TEST_CASE("query floor is enforced") {
  Rng rng(5);
  const auto oracle = make_simon_instance(3, true, rng);
  CHECK_THROWS_AS(run_noisy_simon(oracle, 0.0, 1, rng), std::invalid_argument);
}

TEST_CASE("oracle vs identity TV") {
  Rng rng(6);
  const auto oracle = make_simon_instance(3, true, rng);
  CHECK(oracle_identity_tv(oracle, 0.0, 1) >= 0.2);
  CHECK(oracle_identity_tv(oracle, 1.0, 1) < 1e-10);
  double prev = 2.0;
  for (double lambda : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    const double tv = oracle_identity_tv(oracle, lambda, 1);
    REQUIRE(tv <= prev + 1e-10);
    prev = tv;
  }
}

TEST_CASE("blind-guess baseline") {
  CHECK(blind_guess_baseline(3) == 1.0 / 7.0);
  CHECK(blind_guess_baseline(2) == 1.0 / 3.0);
}
