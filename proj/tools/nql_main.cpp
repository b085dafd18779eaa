// nql: simulation experiments for noisy quantum learning protocols.
//
// Subcommands: bell-sample, identify-pauli, shadows, purity, happy, simon,
// verify-lemmas. Exit codes: 0 all checks of the invoked suite passed,
// 1 a check or the run itself failed, 2 usage error.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>

#include "nql/happy.hpp"
#include "nql/harness.hpp"
#include "nql/lemmas.hpp"
#include "nql/simon.hpp"

namespace {

struct CliFlags {
  std::string config_path;
  std::vector<std::string> overrides;  // "key=value" pairs collected from flags
};

void add_override(CliFlags& flags, const std::string& key, const std::string& value) {
  flags.overrides.push_back(key + "=" + value);
}

nql::ExperimentConfig build_config(const CliFlags& flags, const std::string& task) {
  nql::ExperimentConfig cfg;
  if (!flags.config_path.empty()) cfg = nql::parse_config_file(flags.config_path);
  cfg.task = nql::parse_task(task);
  // Flags always win over file values.
  for (const auto& kv : flags.overrides) {
    const auto eq = kv.find('=');
    nql::apply_config_line(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  nql::validate_config(cfg);
  return cfg;
}

std::ostream& open_output(const nql::ExperimentConfig& cfg, std::ofstream& file) {
  if (cfg.out_path.empty()) return std::cout;
  file.open(cfg.out_path);
  if (!file) throw std::runtime_error("cannot write '" + cfg.out_path + "'");
  return file;
}

int run_generic_sweep(const nql::ExperimentConfig& cfg) {
  const auto result = nql::run_sweep(cfg);
  if (cfg.task == nql::Task::kSimon) {
    for (int n : cfg.n_values) {
      std::cerr << "blind-guess baseline n=" << n << ": "
                << nql::blind_guess_baseline(n) << "\n";
    }
  }
  std::ofstream file;
  auto& out = open_output(cfg, file);
  nql::write_records(result.records, cfg.format, out);
  if (!cfg.out_path.empty()) {
    std::ofstream summary_file(cfg.out_path + ".summary.csv");
    nql::write_summary(result.summary, nql::OutFormat::kCsv, summary_file);
  }
  nql::write_summary(result.summary, cfg.format, std::cerr);
  return 0;
}

int run_happy(const nql::ExperimentConfig& cfg) {
  const auto tiling = nql::build_tiling(cfg.happy_R);
  std::ofstream file;
  auto& out = open_output(cfg, file);
  out << "R,r,rate,trials,decode_fail_rate,bound,success_rate\n";
  char buf[64];
  for (size_t gi = 0; gi < cfg.erasure_rates.size(); ++gi) {
    const auto rep = nql::black_hole_experiment(
        tiling, cfg.happy_r, cfg.erasure_rates[gi], cfg.trials, cfg.swap_reps,
        nql::child_seed(cfg.master_seed, gi, 0));
    out << rep.R << ',' << rep.r << ',';
    std::snprintf(buf, sizeof buf, "%.12g", rep.erasure_rate);
    out << buf << ',' << rep.trials << ',';
    std::snprintf(buf, sizeof buf, "%.12g", rep.decode_fail_rate);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.12g", rep.bound);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.12g", rep.success_rate);
    out << buf << '\n';
  }
  return 0;
}

int run_simon_tv(const nql::ExperimentConfig& cfg) {
  std::ofstream file;
  auto& out = open_output(cfg, file);
  out << "n,lambda,depth,tv\n";
  char buf[64];
  size_t gi = 0;
  for (int n : cfg.n_values) {
    for (double lambda : cfg.lambda_values) {
      nql::Rng rng(nql::child_seed(cfg.master_seed, gi++, 0));
      const auto oracle = nql::make_simon_instance(n, true, rng);
      const double tv = nql::oracle_identity_tv(oracle, lambda, cfg.depth);
      out << n << ',';
      std::snprintf(buf, sizeof buf, "%.12g", lambda);
      out << buf << ',' << cfg.depth << ',';
      std::snprintf(buf, sizeof buf, "%.12g", tv);
      out << buf << '\n';
    }
  }
  return 0;
}

int run_verify_lemmas(const nql::ExperimentConfig& cfg) {
  const int max_n = *std::max_element(cfg.n_values.begin(), cfg.n_values.end());
  const auto reports = nql::lemma_sweep(std::min(max_n, 3), 1000, cfg.master_seed,
                                        cfg.workers);
  std::ofstream file;
  auto& out = open_output(cfg, file);
  nql::write_lemma_csv(reports, out);
  size_t failures = 0;
  for (const auto& r : reports) failures += r.pass ? 0 : 1;
  std::cerr << reports.size() << " lemma checks, " << failures << " failures\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noisy quantum learning experiments"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  CliFlags flags;
  std::string n_list, lambda_list, t_value, c_value, trials_value, seed_value, out_path;
  std::string format_value, workers_value, rate_list, mode_value;
  std::string happy_R, happy_r, swap_reps, queries, depth, shadow_batches;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "key = value config file");
    sub->add_option("--n", n_list, "qubit counts, comma separated");
    sub->add_option("--lambda", lambda_list, "depolarizing rates, comma separated");
    sub->add_option("--T", t_value, "explicit per-trial sample budget");
    sub->add_option("--C", c_value, "budget constant, T = ceil(C n (1-lambda)^-4n)");
    sub->add_option("--trials", trials_value, "trials per grid point");
    sub->add_option("--seed", seed_value, "master seed");
    sub->add_option("--out", out_path, "output path (stdout if omitted)");
    sub->add_option("--format", format_value, "csv | json-lines");
    sub->add_option("--workers", workers_value, "worker threads");
  };

  CLI::App* bell = app.add_subcommand("bell-sample", "log noisy two-copy Bell outcomes");
  CLI::App* ident = app.add_subcommand("identify-pauli",
                                       "two-copy Pauli identification (alternating arms)");
  CLI::App* shadows = app.add_subcommand("shadows", "noisy single-copy shadow estimation");
  CLI::App* purity = app.add_subcommand("purity", "noisy two-copy purity testing");
  CLI::App* happy = app.add_subcommand("happy", "holographic-code erasure experiment");
  CLI::App* simon = app.add_subcommand("simon", "noisy lifted-Simon demo");
  CLI::App* lemmas = app.add_subcommand("verify-lemmas", "closed-form lemma regression");
  for (CLI::App* sub : {bell, ident, shadows, purity, happy, simon, lemmas}) {
    add_common(sub);
  }
  shadows->add_option("--shadow-batches", shadow_batches, "median-of-means batch count");
  happy->add_option("--R", happy_R, "outer radius");
  happy->add_option("--r", happy_r, "excised radius");
  happy->add_option("--erasure-rate", rate_list, "per-leg erasure rates, comma separated");
  happy->add_option("--swap-reps", swap_reps, "SWAP-test repetitions per trial");
  simon->add_option("--queries", queries, "measurement strings per trial");
  simon->add_option("--mode", mode_value, "recover | tv");
  simon->add_option("--depth", depth, "oracle calls per circuit (tv mode)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (!n_list.empty()) add_override(flags, "n", n_list);
    if (!lambda_list.empty()) add_override(flags, "lambda", lambda_list);
    if (!t_value.empty()) add_override(flags, "T", t_value);
    if (!c_value.empty()) add_override(flags, "C", c_value);
    if (!trials_value.empty()) add_override(flags, "trials", trials_value);
    if (!seed_value.empty()) add_override(flags, "seed", seed_value);
    if (!out_path.empty()) add_override(flags, "out", out_path);
    if (!format_value.empty()) add_override(flags, "format", format_value);
    if (!workers_value.empty()) add_override(flags, "workers", workers_value);
    if (!rate_list.empty()) add_override(flags, "erasure_rate", rate_list);
    if (!happy_R.empty()) add_override(flags, "R", happy_R);
    if (!happy_r.empty()) add_override(flags, "r", happy_r);
    if (!swap_reps.empty()) add_override(flags, "swap_reps", swap_reps);
    if (!queries.empty()) add_override(flags, "queries", queries);
    if (!mode_value.empty()) add_override(flags, "mode", mode_value);
    if (!depth.empty()) add_override(flags, "depth", depth);
    if (!shadow_batches.empty()) add_override(flags, "shadow_batches", shadow_batches);

    const std::string task = app.get_subcommands().front()->get_name();
    const auto cfg = build_config(flags, task);
    switch (cfg.task) {
      case nql::Task::kHappy:
        return run_happy(cfg);
      case nql::Task::kVerifyLemmas:
        return run_verify_lemmas(cfg);
      case nql::Task::kSimon:
        if (cfg.simon_mode == "tv") return run_simon_tv(cfg);
        return run_generic_sweep(cfg);
      default:
        return run_generic_sweep(cfg);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
