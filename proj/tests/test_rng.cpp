#include <doctest.h>

#include <array>
#include <cmath>
#include <set>

#include "nql/rng.hpp"

using namespace nql;

TEST_CASE("fixed seed reproduces the exact stream") {
  Rng a(1234), b(1234);
  for (int i = 0; i < 100; ++i) REQUIRE(a.u64() == b.u64());
  Rng c(1234), d(4321);
  bool differ = false;
  for (int i = 0; i < 10; ++i) differ |= c.u64() != d.u64();
  CHECK(differ);
}

TEST_CASE("uniform stays in [0,1) and has the right mean") {
  Rng rng(7);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("below covers the range without obvious bias") {
  Rng rng(99);
  std::array<int, 7> counts{};
  const int n = 140000;
  for (int i = 0; i < n; ++i) counts[rng.below(7)]++;
  for (int c : counts) {
    CHECK(std::abs(c - n / 7.0) < 4.0 * std::sqrt(n / 7.0));
  }
}

TEST_CASE("gaussian has unit variance") {
  Rng rng(5);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sq += g * g;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sq / n - 1.0) < 0.03);
}

TEST_CASE("child seeds separate grid points and trials") {
  std::set<uint64_t> seeds;
  for (uint64_t g = 0; g < 50; ++g) {
    for (uint64_t t = 0; t < 50; ++t) seeds.insert(child_seed(42, g, t));
  }
  CHECK(seeds.size() == 2500);
  CHECK(child_seed(42, 1, 2) != child_seed(42, 2, 1));
  CHECK(child_seed(42, 0, 0) != child_seed(43, 0, 0));
}
