#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nql/dense.hpp"
#include "nql/rng.hpp"

namespace nql {

enum class LemmaKind { kEquality, kUpperBound };

/// One numerical check of a closed-form identity or proved inequality.
/// Equalities must match within 1e-9; bounds allow only +1e-9 of one-sided
/// slack. A single violation is a regression.
struct LemmaReport {
  std::string lemma_id;
  int n = 0;
  double lambda = 0.0;
  double observed = 0.0;
  double bound_or_target = 0.0;
  LemmaKind kind = LemmaKind::kUpperBound;
  bool pass = false;
};

inline constexpr double kLemmaTol = 1e-9;

LemmaReport finish_report(LemmaReport r);

enum class StateFamily { kHaar, kProduct };
enum class PovmFamily { kComputational, kHaarBasis, kMixedPair };

/// max over sampled pure states of tr(psi^(x)2 (D(x)D)[SWAP_n]) vs f(l)^n.
/// Product states saturate the bound site by site, so that family is checked
/// as an equality.
LemmaReport check_depol_swap(int n, double lambda, StateFamily family, int trials,
                             Rng& rng);

/// max over Haar states of tr(psi^(x)2 (D(x)D)[(2 SWAP_1 - I)^(x)n]) vs
/// (1 + 3^n)(1-l)^{2n} / 2.
LemmaReport check_depol_swap2(int n, double lambda, int trials, Rng& rng);

/// tr(((D(x)D)[SWAP_n])^2) / 4^n vs ((1 + 3(1-l)^4)/4)^n, an equality.
LemmaReport check_purity_trace_identity(int n, double lambda);

/// Node quantity of the memoryless learning tree: for a rank-1 POVM
/// {2^n w_s |psi_s><psi_s|}, 2^-n sum_s w_s tr(psi_s^(x)2 (D(x)D)[SWAP_n])
/// vs (f(l)/2)^n. The bound holds for every POVM; the sampled families are a
/// spot check (computational basis saturates it).
LemmaReport check_node_concentration(int n, double lambda, PovmFamily family, int trials,
                                     Rng& rng);

/// Full regression sweep used by CI: all four checks on n in [1, max_n],
/// the 11-point lambda grid {0, 0.1, ..., 1}, every state/POVM family.
/// Reports come back sorted by (lemma_id, n, lambda).
std::vector<LemmaReport> lemma_sweep(int max_n, int trials_per_point, uint64_t seed,
                                     int workers);

void write_lemma_csv(const std::vector<LemmaReport>& reports, std::ostream& out);

}  // namespace nql
