#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "nql/dense.hpp"
#include "nql/pauli.hpp"
#include "nql/rng.hpp"

namespace nql {

/// One randomized-measurement snapshot. For each qubit we keep the rotated
/// measurement axis t = U^-1 z (three real parameters fully determine both
/// the outcome statistics and the reconstruction factor) plus the measured
/// bit. Single-shot estimate of tr(P rho) for a Pauli P:
///   w(P)^-1 prod_{i in supp P} (-1)^{s_i} (t_i . e_{P_i}),
/// with w(P) = ((1-l)^2 / 3)^{|P|}.
struct ShadowSnapshot {
  std::vector<std::array<double, 3>> axes;
  uint64_t outcomes = 0;
};

struct ShadowEstimate {
  PauliString observable;
  double value = 0.0;
  int batch_count = 1;
};

/// Haar-random U(2) element: Ginibre matrix, Gram-Schmidt, phases fixed by
/// making the triangular factor's diagonal positive.
Eigen::Matrix2cd haar_unitary_2x2(Rng& rng);

/// The rotated z axis t = U^-1 z of a single-qubit unitary (Bloch picture).
std::array<double, 3> measurement_axis(const Eigen::Matrix2cd& u);

/// Noisy randomized measurement of (1+P)/2^n (identity P = maximally mixed),
/// factorized over sites: the state is an exact uniform mixture of product
/// eigenstates of P with +1 total sign, so each qubit's outcome follows from
/// its own 2x2 marginal. Valid at any n <= 63.
///
/// Channel per copy: depolarize every qubit, rotate by a product of fresh
/// Haar single-qubit unitaries, depolarize again, measure in the
/// computational basis.
std::vector<ShadowSnapshot> collect_shadows(const PauliString& p, double lambda,
                                            size_t count, Rng& rng);

/// Same channel on an arbitrary dense state (n <= 10); the reference path
/// the factorized sampler is validated against.
std::vector<ShadowSnapshot> collect_shadows_dense(const DenseState& state, double lambda,
                                                  size_t count, Rng& rng);

/// w(P) = ((1-l)^2 / 3)^{|P|}, the reconstruction-channel eigenvalue on P.
double shadow_weight(const PauliString& p, double lambda);

/// Raw per-snapshot product over the support of P (no w^-1 factor).
double snapshot_product(const ShadowSnapshot& snap, const PauliString& p);

/// Splits into `batches` contiguous blocks of size floor(N / batches)
/// (surplus tail discarded), returns the median of the block means; even
/// counts take the lower median.
double median_of_means(std::span<const double> values, size_t batches);

/// Median-of-means estimate of tr(P rho) from stored snapshots. lambda must
/// match the collection noise rate unless a bias study is intended; 1 is
/// rejected (zero reconstruction weight).
ShadowEstimate estimate_observable(std::span<const ShadowSnapshot> snaps,
                                   const PauliString& p, double lambda,
                                   size_t batches = 1);

}  // namespace nql
