#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "nql/dense.hpp"
#include "nql/pauli.hpp"

using namespace nql;

TEST_CASE("weight counts non-identity sites") {
  CHECK(weight(PauliString::from_str("III")) == 0);
  CHECK(weight(PauliString::from_str("ZIX")) == 2);
  CHECK(weight(PauliString::from_str("Y")) == 1);
}

TEST_CASE("symplectic product encodes anticommutation") {
  const auto x = PauliString::from_str("X");
  const auto z = PauliString::from_str("Z");
  const auto id = PauliString::from_str("I");
  CHECK(symplectic_product(x, z) == 1);
  CHECK(symplectic_product(x, x) == 0);
  CHECK(symplectic_product(id, z) == 0);
  CHECK_THROWS_AS(symplectic_product(x, PauliString::from_str("XX")), std::invalid_argument);
}

TEST_CASE("phase form counts Y sites mod 2") {
  CHECK(phase_form(PauliString::from_str("I")) == 0);
  CHECK(phase_form(PauliString::from_str("Y")) == 1);
  CHECK(phase_form(PauliString::from_str("YY")) == 0);
}

TEST_CASE("projective product") {
  const auto x = PauliString::from_str("X");
  const auto z = PauliString::from_str("Z");
  CHECK(multiply(x, x).is_identity());
  CHECK(multiply(x, z) == PauliString::from_str("Y"));
  const auto q = PauliString::from_str("XZY");
  CHECK(multiply(PauliString::from_str("III"), q) == q);
}

TEST_CASE("group enumeration sizes and order") {
  CHECK(enumerate_group(1, false).size() == 3);
  CHECK(enumerate_group(2, true).size() == 16);
  CHECK_THROWS_AS(enumerate_group(11, true), capacity_error);

  // No duplicates and exactly 4^n elements, up to n = 5.
  for (int n = 1; n <= 5; ++n) {
    std::vector<bool> seen(1ull << (2 * n), false);
    size_t count = 0;
    uint64_t prev_key = 0;
    bool first = true;
    for_each_pauli(n, true, [&](const PauliString& p) {
      const uint64_t key = (p.x << n) | p.z;
      REQUIRE_FALSE(seen[key]);
      seen[key] = true;
      ++count;
      if (!first) REQUIRE(key > prev_key);  // lexicographic (x|z), x major
      prev_key = key;
      first = false;
    });
    REQUIRE(count == (1ull << (2 * n)));
  }
}

TEST_CASE("random_pauli is uniform and seed-stable") {
  Rng rng(11);
  std::map<std::string, int> counts;
  const int draws = 300000;
  for (int i = 0; i < draws; ++i) counts[random_pauli(1, false, rng).str()]++;
  REQUIRE(counts.size() == 3);
  const double sigma = std::sqrt(draws * (1.0 / 3.0) * (2.0 / 3.0));
  for (const auto& [name, c] : counts) {
    INFO(name);
    CHECK(std::abs(c - draws / 3.0) < 3.0 * sigma);
  }

  Rng r1(77), r2(77);
  for (int i = 0; i < 50; ++i) CHECK(random_pauli(4, true, r1) == random_pauli(4, true, r2));

  Rng r3(5);
  int identity_hits = 0;
  const int draws2 = 160000;
  for (int i = 0; i < draws2; ++i) identity_hits += random_pauli(2, true, r3).is_identity();
  const double sigma2 = std::sqrt(draws2 * (1.0 / 16.0) * (15.0 / 16.0));
  CHECK(std::abs(identity_hits - draws2 / 16.0) < 3.0 * sigma2);
}

TEST_CASE("symplectic form is bilinear (exhaustive n <= 3)") {
  for (int n = 1; n <= 3; ++n) {
    const auto all = enumerate_group(n, true);
    for (const auto& p : all) {
      for (const auto& pp : all) {
        const auto sum = multiply(p, pp);
        for (const auto& q : all) {
          REQUIRE(symplectic_product(sum, q) ==
                  (symplectic_product(p, q) ^ symplectic_product(pp, q)));
        }
      }
    }
  }
}

TEST_CASE("dense matrices obey PQ = (-1)^<p,q> QP (n <= 3)") {
  for (int n = 1; n <= 3; ++n) {
    const auto all = enumerate_group(n, true);
    std::vector<Matrix> mats;
    for (const auto& p : all) mats.push_back(pauli_matrix(p));
    for (size_t i = 0; i < all.size(); ++i) {
      for (size_t j = i; j < all.size(); ++j) {
        const double sign = symplectic_product(all[i], all[j]) ? -1.0 : 1.0;
        const double err =
            (mats[i] * mats[j] - sign * mats[j] * mats[i]).cwiseAbs().maxCoeff();
        REQUIRE(err < 1e-12);
      }
    }
  }
}

TEST_CASE("weight is subadditive under products (exhaustive n = 3)") {
  const auto all = enumerate_group(3, true);
  for (const auto& p : all) {
    for (const auto& q : all) {
      REQUIRE(weight(multiply(p, q)) <= weight(p) + weight(q));
    }
  }
}

TEST_CASE("text form round-trips exactly") {
  for (const std::string s : {"XIZY", "I", "YYYY", "ZXZXZX"}) {
    CHECK(PauliString::from_str(s).str() == s);
  }
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_pauli(1 + static_cast<int>(rng.below(20)), true, rng);
    CHECK(PauliString::from_str(p.str()) == p);
  }
  CHECK_THROWS_AS(PauliString::from_str("XQ"), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::from_str(""), std::invalid_argument);
}
