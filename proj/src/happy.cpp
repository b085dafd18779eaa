#include "nql/happy.hpp"

#include <cmath>
#include <stdexcept>

#include "nql/common.hpp"
#include "nql/noise.hpp"

namespace nql {

int64_t x_closed_form(int k) {
  if (k < 1) throw std::invalid_argument("x_closed_form: k must be >= 1");
  if (k > 28) throw std::invalid_argument("x_closed_form: 4^k exceeds 64-bit range");
  const int64_t pow4 = int64_t(1) << (2 * (k - 1));
  const int64_t sign = (k % 2 == 1) ? 1 : -1;
  return (24 * pow4 + 6 * sign) / 5;
}

int64_t bulk_leg_count(int r) {
  if (r < 0) throw std::invalid_argument("bulk_leg_count: r must be >= 0");
  if (r > 28) throw std::invalid_argument("bulk_leg_count: 4^r exceeds 64-bit range");
  if (r == 0) return 6;  // the central tile's own legs
  const int64_t pow4 = int64_t(1) << (2 * (r - 1));
  const int64_t sign = (r % 2 == 1) ? 1 : -1;
  return (144 * pow4 + 6 * sign) / 5;
}

Tiling build_tiling(int R) {
  if (R < 1 || R > 8) {
    throw capacity_error("build_tiling: R must be in [1, 8]; tile count grows as 4^R");
  }
  Tiling t;
  t.R = R;
  t.one_parent_count.assign(static_cast<size_t>(R) + 1, 0);
  t.two_parent_count.assign(static_cast<size_t>(R) + 1, 0);
  t.rings.resize(static_cast<size_t>(R) + 1);

  auto new_leg = [&]() { return t.leg_count++; };

  // Center: six child legs feeding six radius-1 tiles.
  t.tiles.push_back(Tile{0, false, {}, {}});
  t.rings[0] = {0};
  for (int i = 0; i < 6; ++i) {
    const int leg = new_leg();
    t.tiles[0].child_legs.push_back(leg);
    t.tiles.push_back(Tile{1, false, {leg}, {}});
    t.rings[1].push_back(static_cast<int>(t.tiles.size()) - 1);
  }
  t.one_parent_count[1] = 6;

  for (int k = 1; k < R; ++k) {
    // Give every radius-k tile its child legs first: five on one-parent
    // tiles, four on two-parent tiles, kept in cyclic order.
    std::vector<int> one_parent_ids;
    for (int id : t.rings[static_cast<size_t>(k)]) {
      Tile& tile = t.tiles[static_cast<size_t>(id)];
      const int n_children = tile.two_parent ? 4 : 6 - static_cast<int>(tile.parent_legs.size());
      for (int c = 0; c < n_children; ++c) tile.child_legs.push_back(new_leg());
      if (!tile.two_parent) one_parent_ids.push_back(id);
    }

    // Shared (two-parent) children bridge consecutive one-parent tiles in
    // cyclic order; they consume the first and last child leg of each. That
    // pairing reproduces y_{k+1} = x_k. The remaining legs each feed a fresh
    // one-parent child, giving x_{k+1} = 3 x_k + 4 y_k. Leg ids are copied
    // out first: pushing tiles reallocates the tile vector.
    std::vector<int>& next_ring = t.rings[static_cast<size_t>(k) + 1];
    const size_t n_one = one_parent_ids.size();
    for (int id : t.rings[static_cast<size_t>(k)]) {
      const std::vector<int> legs = t.tiles[static_cast<size_t>(id)].child_legs;
      const bool two_parent = t.tiles[static_cast<size_t>(id)].two_parent;
      for (size_t c = 0; c < legs.size(); ++c) {
        if (!two_parent && (c == 0 || c == legs.size() - 1)) continue;  // shared below
        t.tiles.push_back(Tile{k + 1, false, {legs[c]}, {}});
        next_ring.push_back(static_cast<int>(t.tiles.size()) - 1);
        t.one_parent_count[static_cast<size_t>(k) + 1] += 1;
      }
    }
    for (size_t j = 0; j < n_one; ++j) {
      const int right = t.tiles[static_cast<size_t>(one_parent_ids[j])].child_legs.back();
      const int left =
          t.tiles[static_cast<size_t>(one_parent_ids[(j + 1) % n_one])].child_legs.front();
      t.tiles.push_back(Tile{k + 1, true, {right, left}, {}});
      next_ring.push_back(static_cast<int>(t.tiles.size()) - 1);
      t.two_parent_count[static_cast<size_t>(k) + 1] += 1;
    }
  }

  // Outermost tiles expose their child legs as the boundary.
  for (int id : t.rings[static_cast<size_t>(R)]) {
    Tile& tile = t.tiles[static_cast<size_t>(id)];
    const int n_children = tile.two_parent ? 4 : 5;
    for (int c = 0; c < n_children; ++c) tile.child_legs.push_back(new_leg());
    t.boundary_legs.insert(t.boundary_legs.end(), tile.child_legs.begin(),
                           tile.child_legs.end());
  }
  return t;
}

bool greedy_decode(const Tiling& tiling, const std::vector<uint8_t>& erased, int r) {
  if (r < 1 || r >= tiling.R) {
    throw std::invalid_argument("greedy_decode: requires 1 <= r < R");
  }
  if (erased.size() != tiling.boundary_legs.size()) {
    throw std::invalid_argument("greedy_decode: erasure mask does not match boundary size");
  }
  std::vector<uint8_t> leg_ok(static_cast<size_t>(tiling.leg_count), 0);
  for (size_t i = 0; i < erased.size(); ++i) {
    leg_ok[static_cast<size_t>(tiling.boundary_legs[i])] = erased[i] ? 0 : 1;
  }
  for (int k = tiling.R; k > r; --k) {
    for (int id : tiling.rings[static_cast<size_t>(k)]) {
      const Tile& tile = tiling.tiles[static_cast<size_t>(id)];
      int known = 0;
      for (int leg : tile.child_legs) known += leg_ok[static_cast<size_t>(leg)];
      if (known >= 3) {
        for (int leg : tile.parent_legs) leg_ok[static_cast<size_t>(leg)] = 1;
      }
    }
  }
  for (int id : tiling.rings[static_cast<size_t>(r)]) {
    for (int leg : tiling.tiles[static_cast<size_t>(id)].child_legs) {
      if (!leg_ok[static_cast<size_t>(leg)]) return false;
    }
  }
  return true;
}

double decode_failure_bound(int r, int R, double lambda) {
  if (r < 1 || r >= R) throw std::invalid_argument("decode_failure_bound: requires 1 <= r < R");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("decode_failure_bound: lambda must be in [0, 1]");
  }
  if (lambda == 0.0) return 0.0;
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const double legs = 30.0 * std::ldexp(1.0, 2 * (r - 1));
  const double value = legs / 12.0 * std::pow(12.0 * lambda, std::pow(phi, R - r));
  return std::min(1.0, value);
}

BlackHoleReport black_hole_experiment(const Tiling& tiling, int r, double erasure_rate,
                                      int64_t trials, int swap_reps, uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("black_hole_experiment: trials must be >= 1");
  if (swap_reps < 1) throw std::invalid_argument("black_hole_experiment: swap_reps must be >= 1");
  const int64_t logical_qubits = bulk_leg_count(r);
  const double mixed_accept = 0.5 + std::ldexp(1.0, -static_cast<int>(logical_qubits) - 1);

  BlackHoleReport rep;
  rep.R = tiling.R;
  rep.r = r;
  rep.erasure_rate = erasure_rate;
  rep.trials = trials;
  rep.swap_reps = swap_reps;
  rep.bound = decode_failure_bound(r, tiling.R, erasure_rate);

  int64_t decode_failures = 0, successes = 0;
  for (int64_t t = 0; t < trials; ++t) {
    Rng rng(child_seed(seed, 0, static_cast<uint64_t>(t)));
    const bool truth_pure = rng.bernoulli(0.5);
    bool both_ok = true;
    for (int copy = 0; copy < 2; ++copy) {
      const auto mask = erasure_mask(tiling.boundary_legs.size(), erasure_rate, rng);
      if (!greedy_decode(tiling, mask, r)) both_ok = false;
    }
    bool decided_pure;
    if (both_ok) {
      // Decode success hands us the exact logical state, so the SWAP-test
      // statistics are fully determined by tr(rho^2); no 2^{L_r} matrix.
      const double p_accept = truth_pure ? 1.0 : mixed_accept;
      int accepts = 0;
      for (int s = 0; s < swap_reps; ++s) accepts += rng.bernoulli(p_accept) ? 1 : 0;
      decided_pure = accepts == swap_reps;
    } else {
      ++decode_failures;
      decided_pure = rng.bernoulli(0.5);  // pessimistic fallback, by contract
    }
    if (decided_pure == truth_pure) ++successes;
  }
  rep.decode_fail_rate = static_cast<double>(decode_failures) / static_cast<double>(trials);
  rep.success_rate = static_cast<double>(successes) / static_cast<double>(trials);
  return rep;
}

}  // namespace nql
