#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nql/dense.hpp"
#include "nql/rng.hpp"

namespace nql {

/// A lifted Simon oracle on 2n input bits and n output bits: the table holds
/// f over the n-bit domain; the lift answers f(x_lo) when the padding half of
/// the input is zero and 0 otherwise. secret is empty for injective f.
struct LiftedSimonOracle {
  int n = 1;
  std::vector<uint32_t> table;      // 2^n entries
  std::optional<uint32_t> secret;   // s != 0 with f(x) = f(x ^ s), iff two-to-one
};

/// Draws a uniform instance: two-to-one picks s != 0 and assigns distinct
/// random outputs per {x, x^s} pair; injective draws a random bijection.
/// Capped at n <= 4 (the dense circuit uses 3n qubits).
LiftedSimonOracle make_simon_instance(int n, bool two_to_one, Rng& rng);

/// The XOR-oracle permutation |x>|y> -> |x>|y ^ f~(x)> on 3n qubits
/// (qubits [0,n) = x_lo, [n,2n) = padding, [2n,3n) = output). Self-inverse.
DenseOp oracle_unitary(const LiftedSimonOracle& oracle);

/// Exact output distribution over the first n qubits of the noisy Simon
/// circuit: Hadamards on the query register, then `oracle_layers` oracle
/// calls with a full per-qubit depolarizing layer before each, one more
/// noise layer, final Hadamards, measurement. Passing no oracle runs the
/// same circuit with the oracle replaced by the identity channel.
std::vector<double> noisy_simon_distribution(const LiftedSimonOracle* oracle, int n,
                                             double lambda, int oracle_layers);

/// Noiseless reference circuit on 2n qubits with the unlifted oracle
/// |x>|y> -> |x>|y ^ f(x)>; used to check that the lift is exact on the
/// pinned-padding subspace.
std::vector<double> unlifted_simon_distribution(const LiftedSimonOracle& oracle);

struct SimonRunResult {
  std::optional<uint32_t> recovered;  // empty on failure
  int rank = 0;                       // rank of the collected F2 system
  std::vector<uint32_t> outcomes;
};

/// Runs the standard Simon procedure against the noisy circuit: collects
/// `queries` measurement strings, Gaussian-eliminates y . s = 0 over F2, and
/// returns the unique nonzero null vector iff the system has rank exactly
/// n-1. No retry loop: rank deficit or a full-rank (inconsistent) system is
/// a failure.
SimonRunResult run_noisy_simon(const LiftedSimonOracle& oracle, double lambda, int queries,
                               Rng& rng);

/// Exact total variation distance between the noisy circuit's output
/// distribution with the real oracle and with the identity oracle.
double oracle_identity_tv(const LiftedSimonOracle& oracle, double lambda, int depth);

/// Success rate of guessing the secret blindly: 1 / (2^n - 1).
double blind_guess_baseline(int n);

}  // namespace nql
