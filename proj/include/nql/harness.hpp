#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nql/rng.hpp"

namespace nql {

enum class Task {
  kBellSample,
  kIdentifyPauli,
  kShadows,
  kPurity,
  kHappy,
  kSimon,
  kVerifyLemmas,
};

enum class OutFormat { kCsv, kJsonLines };

std::string task_name(Task t);
Task parse_task(const std::string& name);

/// Fully validated run description. Every knob lives here; protocol code
/// never reads defaults from anywhere else.
struct ExperimentConfig {
  Task task = Task::kIdentifyPauli;
  std::vector<int> n_values{3};
  std::vector<double> lambda_values{0.0};
  std::optional<uint64_t> samples;  // explicit T; otherwise derived from C
  double C = 8.0;                   // T = ceil(C n (1-lambda)^{-4n}) for identify-pauli
  int64_t trials = 1;
  uint64_t master_seed = 0;
  std::string out_path;
  OutFormat format = OutFormat::kCsv;
  int workers = 1;
  // happy
  int happy_R = 4;
  int happy_r = 1;
  std::vector<double> erasure_rates{1.0 / 60.0};
  int swap_reps = 5;
  // simon
  int queries = 60;
  std::string simon_mode = "recover";  // recover | tv
  int depth = 1;
  // shadows
  int64_t shadow_batches = 1;
};

/// Key = value file, # comments, unknown keys rejected. Keys mirror the
/// struct: task, n, lambda, T, C, trials, seed, out, format, workers, R, r,
/// erasure_rate, swap_reps, queries, mode, depth, shadow_batches. List
/// values are comma-separated.
ExperimentConfig parse_config_file(const std::string& path);
void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value);
void validate_config(const ExperimentConfig& cfg);
std::string render_config(const ExperimentConfig& cfg);  // round-trips through the parser

/// One completed trial in the canonical log schema.
struct TrialRecord {
  std::string task;
  int n = 0;
  double lambda = 0.0;
  uint64_t samples = 0;
  int64_t trial = 0;
  std::string ground_truth;
  std::string decision;
  double z_max = 0.0;
  std::string argmax;
  int64_t wall_us = 0;
  uint64_t seed = 0;
  bool success = false;                // derivable from ground_truth/decision/argmax
  std::vector<std::string> samples_hex;  // bell-sample payload only
};

struct SummaryRow {
  std::string task;
  int n = 0;
  double lambda = 0.0;
  uint64_t samples = 0;
  int64_t trials = 0;
  int64_t successes = 0;
  double success_rate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
};

struct SweepResult {
  std::vector<TrialRecord> records;   // canonical (grid_index, trial_index) order
  std::vector<SummaryRow> summary;
};

/// Wilson 95% score interval.
void wilson_interval(int64_t successes, int64_t trials, double* lo, double* hi);

/// Runs the (n x lambda) grid with `workers` threads. Each trial draws only
/// from child_seed(master, grid_index, trial_index), so output (except the
/// wall_us timing column) is byte-identical for any worker count.
SweepResult run_sweep(const ExperimentConfig& cfg);

void write_records(const std::vector<TrialRecord>& records, OutFormat format,
                   std::ostream& out);
void write_summary(const std::vector<SummaryRow>& summary, OutFormat format,
                   std::ostream& out);
std::vector<TrialRecord> read_records_json(std::istream& in);

/// Effective per-trial sample budget at a grid point.
uint64_t effective_samples(const ExperimentConfig& cfg, int n, double lambda);

}  // namespace nql
