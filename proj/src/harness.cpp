#include "nql/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "nql/bell.hpp"
#include "nql/ident.hpp"
#include "nql/purity.hpp"
#include "nql/shadows.hpp"
#include "nql/simon.hpp"

namespace nql {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double parse_double(const std::string& s, const std::string& key) {
  size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: malformed number for '" + key + "': " + s);
  }
  if (pos != s.size()) {
    throw std::invalid_argument("config: malformed number for '" + key + "': " + s);
  }
  return v;
}

int64_t parse_int(const std::string& s, const std::string& key) {
  size_t pos = 0;
  int64_t v;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: malformed integer for '" + key + "': " + s);
  }
  if (pos != s.size()) {
    throw std::invalid_argument("config: malformed integer for '" + key + "': " + s);
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string task_name(Task t) {
  switch (t) {
    case Task::kBellSample: return "bell-sample";
    case Task::kIdentifyPauli: return "identify-pauli";
    case Task::kShadows: return "shadows";
    case Task::kPurity: return "purity";
    case Task::kHappy: return "happy";
    case Task::kSimon: return "simon";
    case Task::kVerifyLemmas: return "verify-lemmas";
  }
  return "?";
}

Task parse_task(const std::string& name) {
  for (Task t : {Task::kBellSample, Task::kIdentifyPauli, Task::kShadows, Task::kPurity,
                 Task::kHappy, Task::kSimon, Task::kVerifyLemmas}) {
    if (task_name(t) == name) return t;
  }
  throw std::invalid_argument("config: unknown task '" + name + "'");
}

void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value) {
  if (key == "task") {
    cfg.task = parse_task(value);
  } else if (key == "n") {
    cfg.n_values.clear();
    for (const auto& item : split_csv(value)) {
      cfg.n_values.push_back(static_cast<int>(parse_int(trim(item), key)));
    }
  } else if (key == "lambda") {
    cfg.lambda_values.clear();
    for (const auto& item : split_csv(value)) {
      cfg.lambda_values.push_back(parse_double(trim(item), key));
    }
  } else if (key == "T") {
    cfg.samples = static_cast<uint64_t>(parse_int(value, key));
  } else if (key == "C") {
    cfg.C = parse_double(value, key);
  } else if (key == "trials") {
    cfg.trials = parse_int(value, key);
  } else if (key == "seed") {
    cfg.master_seed = static_cast<uint64_t>(parse_int(value, key));
  } else if (key == "out") {
    cfg.out_path = value;
  } else if (key == "format") {
    if (value == "csv") {
      cfg.format = OutFormat::kCsv;
    } else if (value == "json-lines") {
      cfg.format = OutFormat::kJsonLines;
    } else {
      throw std::invalid_argument("config: format must be csv or json-lines");
    }
  } else if (key == "workers") {
    cfg.workers = static_cast<int>(parse_int(value, key));
  } else if (key == "R") {
    cfg.happy_R = static_cast<int>(parse_int(value, key));
  } else if (key == "r") {
    cfg.happy_r = static_cast<int>(parse_int(value, key));
  } else if (key == "erasure_rate") {
    cfg.erasure_rates.clear();
    for (const auto& item : split_csv(value)) {
      cfg.erasure_rates.push_back(parse_double(trim(item), key));
    }
  } else if (key == "swap_reps") {
    cfg.swap_reps = static_cast<int>(parse_int(value, key));
  } else if (key == "queries") {
    cfg.queries = static_cast<int>(parse_int(value, key));
  } else if (key == "mode") {
    if (value != "recover" && value != "tv") {
      throw std::invalid_argument("config: mode must be recover or tv");
    }
    cfg.simon_mode = value;
  } else if (key == "depth") {
    cfg.depth = static_cast<int>(parse_int(value, key));
  } else if (key == "shadow_batches") {
    cfg.shadow_batches = parse_int(value, key);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  " is not 'key = value'");
    }
    apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.n_values.empty()) throw std::invalid_argument("config: empty n grid");
  if (cfg.lambda_values.empty()) throw std::invalid_argument("config: empty lambda grid");
  for (int n : cfg.n_values) {
    if (n < 1 || n > 63) throw std::invalid_argument("config: n must be in [1, 63]");
  }
  for (double l : cfg.lambda_values) {
    if (!(l >= 0.0 && l <= 1.0)) {
      throw std::invalid_argument("config: lambda must be in [0, 1]");
    }
  }
  for (double r : cfg.erasure_rates) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw std::invalid_argument("config: erasure_rate must be in [0, 1]");
    }
  }
  if (cfg.erasure_rates.empty()) throw std::invalid_argument("config: empty erasure grid");
  if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (cfg.workers < 1) throw std::invalid_argument("config: workers must be >= 1");
  if (!(cfg.C > 0.0)) throw std::invalid_argument("config: C must be positive");
  if (cfg.swap_reps < 1) throw std::invalid_argument("config: swap_reps must be >= 1");
  if (cfg.depth < 1) throw std::invalid_argument("config: depth must be >= 1");
  if (cfg.shadow_batches < 1) {
    throw std::invalid_argument("config: shadow_batches must be >= 1");
  }
  if (cfg.samples && *cfg.samples < 1) {
    throw std::invalid_argument("config: T must be >= 1");
  }
}

std::string render_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "task = " << task_name(cfg.task) << "\n";
  out << "n = ";
  for (size_t i = 0; i < cfg.n_values.size(); ++i) {
    out << (i ? "," : "") << cfg.n_values[i];
  }
  out << "\nlambda = ";
  for (size_t i = 0; i < cfg.lambda_values.size(); ++i) {
    out << (i ? "," : "") << fmt_double(cfg.lambda_values[i]);
  }
  out << "\n";
  if (cfg.samples) out << "T = " << *cfg.samples << "\n";
  out << "C = " << fmt_double(cfg.C) << "\n";
  out << "trials = " << cfg.trials << "\n";
  out << "seed = " << cfg.master_seed << "\n";
  if (!cfg.out_path.empty()) out << "out = " << cfg.out_path << "\n";
  out << "format = " << (cfg.format == OutFormat::kCsv ? "csv" : "json-lines") << "\n";
  out << "workers = " << cfg.workers << "\n";
  out << "R = " << cfg.happy_R << "\n";
  out << "r = " << cfg.happy_r << "\n";
  out << "erasure_rate = ";
  for (size_t i = 0; i < cfg.erasure_rates.size(); ++i) {
    out << (i ? "," : "") << fmt_double(cfg.erasure_rates[i]);
  }
  out << "\nswap_reps = " << cfg.swap_reps << "\n";
  out << "queries = " << cfg.queries << "\n";
  out << "mode = " << cfg.simon_mode << "\n";
  out << "depth = " << cfg.depth << "\n";
  out << "shadow_batches = " << cfg.shadow_batches << "\n";
  return out.str();
}

uint64_t effective_samples(const ExperimentConfig& cfg, int n, double lambda) {
  if (cfg.samples) return *cfg.samples;
  switch (cfg.task) {
    case Task::kIdentifyPauli:
    case Task::kBellSample:
      return required_samples(n, lambda, cfg.C);
    case Task::kShadows:
      return 1000;
    case Task::kPurity:
      return 20;
    default:
      return 1;
  }
}

void wilson_interval(int64_t successes, int64_t trials, double* lo, double* hi) {
  const double z = 1.959963984540054;  // 95%
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = p + z2 / (2.0 * nt);
  const double margin = z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt));
  *lo = std::max(0.0, (center - margin) / denom);
  *hi = std::min(1.0, (center + margin) / denom);
}

namespace {

// One trial, a pure function of (cfg, n, lambda, T, trial_index, seed).
TrialRecord run_trial(const ExperimentConfig& cfg, int n, double lambda, uint64_t samples,
                      int64_t trial_index, uint64_t seed) {
  Rng rng(seed);
  TrialRecord rec;
  rec.task = task_name(cfg.task);
  rec.n = n;
  rec.lambda = lambda;
  rec.samples = samples;
  rec.trial = trial_index;
  rec.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();

  switch (cfg.task) {
    case Task::kBellSample: {
      const PauliString p = random_pauli(n, false, rng);
      rec.ground_truth = p.str();
      rec.samples_hex.reserve(samples);
      for (uint64_t i = 0; i < samples; ++i) {
        rec.samples_hex.push_back(sample_bell(n, p, lambda, rng).hex());
      }
      rec.success = true;
      break;
    }
    case Task::kIdentifyPauli: {
      // Arms alternate deterministically: even trials draw the maximally
      // mixed source, odd trials a uniform non-identity Pauli.
      const bool h1 = (trial_index % 2) == 1;
      BellHypothesis hyp;
      if (h1) hyp = random_pauli(n, false, rng);
      rec.ground_truth = h1 ? "H1 " + hyp->str() : "H0";
      const auto result = identify_pauli(
          [&]() { return sample_bell(n, hyp, lambda, rng); }, n, lambda, samples);
      rec.decision = result.h1 ? "H1" : "H0";
      rec.z_max = result.z_max;
      if (result.argmax) rec.argmax = result.argmax->str();
      rec.success = h1 ? (result.h1 && result.argmax && *result.argmax == *hyp)
                       : !result.h1;
      break;
    }
    case Task::kShadows: {
      const PauliString p = random_pauli(n, false, rng);
      rec.ground_truth = p.str();
      const auto snaps = collect_shadows(p, lambda, samples, rng);
      const auto est = estimate_observable(snaps, p, lambda,
                                           static_cast<size_t>(cfg.shadow_batches));
      rec.z_max = est.value;
      rec.success = std::abs(est.value - 1.0) < 1.0 / 3.0;
      rec.decision = rec.success ? "ok" : "off";
      break;
    }
    case Task::kPurity: {
      const auto trial = purity_test_trial(n, lambda, static_cast<int>(samples), rng);
      rec.ground_truth = trial.truth_pure ? "pure" : "mixed";
      rec.decision = trial.decided_pure ? "pure" : "mixed";
      rec.z_max = static_cast<double>(trial.accepts) / static_cast<double>(trial.tests);
      rec.success = trial.truth_pure == trial.decided_pure;
      break;
    }
    case Task::kSimon: {
      const auto oracle = make_simon_instance(n, true, rng);
      rec.ground_truth = std::to_string(*oracle.secret);
      const auto run = run_noisy_simon(oracle, lambda, cfg.queries, rng);
      rec.decision = run.recovered ? std::to_string(*run.recovered) : "fail";
      rec.z_max = static_cast<double>(run.rank);
      rec.success = run.recovered && *run.recovered == *oracle.secret;
      break;
    }
    default:
      throw std::invalid_argument("run_trial: task has no per-trial form");
  }

  rec.wall_us = std::chrono::duration_cast<std::chrono::microseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rec;
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.task == Task::kHappy || cfg.task == Task::kVerifyLemmas ||
      (cfg.task == Task::kSimon && cfg.simon_mode == "tv")) {
    throw std::invalid_argument("run_sweep: this task runs through its dedicated driver");
  }
  struct Cell {
    int n;
    double lambda;
    uint64_t samples;
  };
  std::vector<Cell> grid;
  for (int n : cfg.n_values) {
    for (double l : cfg.lambda_values) {
      grid.push_back({n, l, effective_samples(cfg, n, l)});
    }
  }

  SweepResult result;
  result.records.resize(grid.size() * static_cast<size_t>(cfg.trials));
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto worker = [&]() {
    const size_t total = result.records.size();
    for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
      if (failed.load()) return;
      const size_t g = i / static_cast<size_t>(cfg.trials);
      const int64_t trial = static_cast<int64_t>(i % static_cast<size_t>(cfg.trials));
      try {
        result.records[i] =
            run_trial(cfg, grid[g].n, grid[g].lambda, grid[g].samples, trial,
                      child_seed(cfg.master_seed, g, static_cast<uint64_t>(trial)));
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        error_message = "grid point (n=" + std::to_string(grid[g].n) +
                        ", lambda=" + fmt_double(grid[g].lambda) + "): " + e.what();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < cfg.workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failed.load()) throw std::runtime_error(error_message);

  for (size_t g = 0; g < grid.size(); ++g) {
    SummaryRow row;
    row.task = task_name(cfg.task);
    row.n = grid[g].n;
    row.lambda = grid[g].lambda;
    row.samples = grid[g].samples;
    row.trials = cfg.trials;
    for (int64_t t = 0; t < cfg.trials; ++t) {
      row.successes +=
          result.records[g * static_cast<size_t>(cfg.trials) + static_cast<size_t>(t)]
                  .success
              ? 1
              : 0;
    }
    row.success_rate = static_cast<double>(row.successes) / static_cast<double>(row.trials);
    wilson_interval(row.successes, row.trials, &row.wilson_lo, &row.wilson_hi);
    result.summary.push_back(row);
  }
  return result;
}

void write_records(const std::vector<TrialRecord>& records, OutFormat format,
                   std::ostream& out) {
  if (format == OutFormat::kCsv) {
    out << "task,n,lambda,T,trial,ground_truth,decision,z_max,argmax,wall_us,seed,samples\n";
    for (const auto& r : records) {
      out << r.task << ',' << r.n << ',' << fmt_double(r.lambda) << ',' << r.samples << ','
          << r.trial << ',' << r.ground_truth << ',' << r.decision << ','
          << fmt_double(r.z_max) << ',' << r.argmax << ',' << r.wall_us << ',' << r.seed;
      out << ',';
      for (size_t i = 0; i < r.samples_hex.size(); ++i) {
        out << (i ? ";" : "") << r.samples_hex[i];
      }
      out << '\n';
    }
    return;
  }
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["task"] = r.task;
    j["n"] = r.n;
    j["lambda"] = r.lambda;
    j["T"] = r.samples;
    j["trial"] = r.trial;
    j["ground_truth"] = r.ground_truth;
    j["decision"] = r.decision;
    j["z_max"] = r.z_max;
    j["argmax"] = r.argmax;
    j["wall_us"] = r.wall_us;
    j["seed"] = r.seed;
    if (!r.samples_hex.empty()) j["samples"] = r.samples_hex;
    out << j.dump() << '\n';
  }
}

std::vector<TrialRecord> read_records_json(std::istream& in) {
  std::vector<TrialRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto j = nlohmann::ordered_json::parse(line);
    TrialRecord r;
    r.task = j.at("task").get<std::string>();
    r.n = j.at("n").get<int>();
    r.lambda = j.at("lambda").get<double>();
    r.samples = j.at("T").get<uint64_t>();
    r.trial = j.at("trial").get<int64_t>();
    r.ground_truth = j.at("ground_truth").get<std::string>();
    r.decision = j.at("decision").get<std::string>();
    r.z_max = j.at("z_max").get<double>();
    r.argmax = j.at("argmax").get<std::string>();
    r.wall_us = j.at("wall_us").get<int64_t>();
    r.seed = j.at("seed").get<uint64_t>();
    if (j.contains("samples")) {
      r.samples_hex = j.at("samples").get<std::vector<std::string>>();
    }
    records.push_back(std::move(r));
  }
  return records;
}

void write_summary(const std::vector<SummaryRow>& summary, OutFormat format,
                   std::ostream& out) {
  if (format == OutFormat::kCsv) {
    out << "task,n,lambda,T,trials,successes,success_rate,wilson_lo,wilson_hi\n";
    for (const auto& s : summary) {
      out << s.task << ',' << s.n << ',' << fmt_double(s.lambda) << ',' << s.samples << ','
          << s.trials << ',' << s.successes << ',' << fmt_double(s.success_rate) << ','
          << fmt_double(s.wilson_lo) << ',' << fmt_double(s.wilson_hi) << '\n';
    }
    return;
  }
  for (const auto& s : summary) {
    nlohmann::ordered_json j;
    j["task"] = s.task;
    j["n"] = s.n;
    j["lambda"] = s.lambda;
    j["T"] = s.samples;
    j["trials"] = s.trials;
    j["successes"] = s.successes;
    j["success_rate"] = s.success_rate;
    j["wilson_lo"] = s.wilson_lo;
    j["wilson_hi"] = s.wilson_hi;
    out << j.dump() << '\n';
  }
}

}  // namespace nql
