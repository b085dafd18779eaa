#pragma once

#include <cstdint>
#include <vector>

#include "nql/rng.hpp"

namespace nql {

/// One hexagonal tile: six legs split into parent legs (toward the center)
/// and child legs (outward). Non-central tiles have either one parent and
/// five children or two parents and four children.
struct Tile {
  int radius = 0;
  bool two_parent = false;
  std::vector<int> parent_legs;
  std::vector<int> child_legs;
};

/// The radius-R hexagonal tiling. Legs are numbered globally; a child leg of
/// a radius-k tile is the same leg as a parent leg of a radius-(k+1) tile,
/// and child legs of radius-R tiles are the boundary.
struct Tiling {
  int R = 1;
  std::vector<Tile> tiles;               // tile 0 is the center
  std::vector<std::vector<int>> rings;   // tile ids per radius, cyclic order
  std::vector<int> boundary_legs;        // leg ids, fixed order
  int leg_count = 0;
  std::vector<int64_t> one_parent_count;  // x_k per radius (x_0 := 0)
  std::vector<int64_t> two_parent_count;  // y_k per radius
};

/// Builds the tile graph for outer radius R in [1, 8] (tile count grows as
/// 4^R). Census satisfies x_1 = 6, x_k = 3 x_{k-1} + 4 y_{k-1}, y_k = x_{k-1}.
Tiling build_tiling(int R);

/// Closed form x_k = (24 4^{k-1} + 6 (-1)^{k-1}) / 5, exact integer.
int64_t x_closed_form(int k);

/// Number of legs dangling after excising everything inside radius r:
/// 6 for r = 0, else (144 4^{r-1} + 6 (-1)^{r-1}) / 5 (the 6, 30, 114, 462
/// sequence).
int64_t bulk_leg_count(int r);

/// Greedy erasure decoder. `erased` has one entry per boundary leg (order of
/// Tiling::boundary_legs). Sweeps inward from radius R to r+1, marking a
/// tile's parent legs recoverable when at least three of its six legs are
/// known from the outward side (three known legs of a perfect tensor
/// determine the rest). Succeeds iff every bulk leg at radius r is
/// recoverable. Requires 1 <= r < R.
bool greedy_decode(const Tiling& tiling, const std::vector<uint8_t>& erased, int r);

/// Analytic failure bound min(1, (30 4^{r-1} / 12) (12 l)^{phi^{R-r}}),
/// phi the golden ratio. Nontrivial for l < 1/12.
double decode_failure_bound(int r, int R, double lambda);

struct BlackHoleReport {
  int R = 0;
  int r = 0;
  double erasure_rate = 0.0;
  int64_t trials = 0;
  int swap_reps = 0;
  double decode_fail_rate = 0.0;  // fraction of trials with a failed decode
  double bound = 0.0;             // per-decode analytic bound
  double success_rate = 0.0;
};

/// Two-copy purity detection through the code. Per trial: draw the bulk
/// ground truth (pure microstate vs maximally mixed), erase boundary legs of
/// two independent copies, greedy-decode both. On double success the SWAP
/// statistics are computed analytically on the L_r-qubit logical state
/// (accept probability 1 vs 1/2 + 2^-(L_r+1); no dense matrix), with
/// `swap_reps` repetitions and decision "pure iff every test accepts". A
/// failed decode degrades the trial to a fair-coin decision.
BlackHoleReport black_hole_experiment(const Tiling& tiling, int r, double erasure_rate,
                                      int64_t trials, int swap_reps, uint64_t seed);

}  // namespace nql
