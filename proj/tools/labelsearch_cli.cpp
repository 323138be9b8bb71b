// Command-line front end: task generation, label search, baselines, scaling
// runs and the analytical cost model.
//
// Exit codes: 0 success, 1 runtime refusal or failure, 2 argument error.

#include <charconv>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "labelsearch/labelsearch.hpp"

namespace ls = labelsearch;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned parse_unsigned(const std::string& s) {
  unsigned v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size())
    throw UsageError("expected a nonnegative integer, got '" + s + "'");
  return v;
}

/// "a:b" (inclusive), "a:b:step", or a comma list.
std::vector<unsigned> parse_n_range(const std::string& text) {
  std::vector<unsigned> out;
  if (text.find(':') != std::string::npos) {
    std::vector<unsigned> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(parse_unsigned(p));
    if (parts.size() < 2 || parts.size() > 3 || (parts.size() == 3 && parts[2] == 0) ||
        parts[1] < parts[0])
      throw UsageError("bad n range '" + text + "' (want lo:hi or lo:hi:step)");
    const unsigned step = parts.size() == 3 ? parts[2] : 1;
    for (unsigned n = parts[0]; n <= parts[1]; n += step) out.push_back(n);
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_unsigned(p));
  }
  if (out.empty()) throw UsageError("empty n range");
  return out;
}

std::vector<ls::cost::SpeedupRegime> parse_regimes(const std::string& text) {
  std::vector<ls::cost::SpeedupRegime> out;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');)
    if (!p.empty()) out.push_back(ls::cost::SpeedupRegime::parse(p));
  return out;
}

void emit(const std::string& out_path, const std::string& contents) {
  if (out_path.empty() || out_path == "-") {
    std::cout << contents;
    return;
  }
  ls::write_file_atomically(out_path, contents);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json task_summary(const ls::Task& task, const std::string& path) {
  return {{"path", path}, {"m", task.m()}, {"n", task.n()}, {"d", task.dim()}, {"seed", task.seed}};
}

// ---------------------------------------------------------------------------

struct GenDataArgs {
  ls::TaskSpec spec;
  std::string out;
};

struct SearchArgs {
  std::string method = "exhaustive";
  std::string task;
  std::string learner = "centroid";
  unsigned workers = ls::default_worker_count();
  unsigned max_n = ls::kDefaultExhaustiveCap;
  ls::HeuristicConfig heuristic;
  std::string out;
};

struct ChanceHitArgs {
  std::string task;
  std::string learner = "centroid";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  unsigned workers = ls::default_worker_count();
  unsigned max_n = ls::kDefaultExhaustiveCap;
  std::string out;
};

struct BaselineArgs {
  std::string method = "conventional";
  std::string task;
  std::string learner = "centroid";
  ls::SelfTrainingConfig self_training;
  unsigned workers = ls::default_worker_count();
  unsigned max_n = ls::kDefaultExhaustiveCap;
  std::string out;
};

struct ScalingArgs {
  std::string n_range = "12:20";
  ls::TaskSpec spec{32, 0, 4, 2.0, 1.0, 1};
  std::string learner = "centroid";
  unsigned workers = 1;
  unsigned repeats = 1;
  unsigned max_n = ls::kDefaultExhaustiveCap;
  std::string out_csv;
  std::string out_json;
};

struct CostTableArgs {
  std::string n_range = "1:24";
  double tc_ms = 1.0;
  std::string regimes = "const:4,poly:2,exp:0.5";
  std::string out;
};

struct LedgerArgs {
  ls::cost::CostLedger ledger;
  std::optional<double> quality;
  std::string out;
};

void add_spec_options(CLI::App& cmd, ls::TaskSpec& spec) {
  cmd.add_option("--m", spec.m, "Trusted set size")->capture_default_str();
  cmd.add_option("--d", spec.d, "Feature dimension")->capture_default_str();
  cmd.add_option("--sep", spec.separation, "Distance between class means")->capture_default_str();
  cmd.add_option("--sigma", spec.noise_sigma, "Per-coordinate noise sigma")->capture_default_str();
  cmd.add_option("--seed", spec.seed, "Generator seed")->capture_default_str();
}

// ---------------------------------------------------------------------------

int run_gen_data(const GenDataArgs& a) {
  const auto task = ls::generate_task(a.spec);
  emit(a.out, ls::task_to_string(task));
  return 0;
}

int run_search(const SearchArgs& a) {
  const auto task = ls::load_task(a.task);
  const auto learner = ls::parse_learner_kind(a.learner);
  json doc;
  doc["method"] = a.method;
  doc["learner"] = ls::to_string(learner);
  doc["task"] = task_summary(task, a.task);
  ls::SearchOutcome outcome;
  if (a.method == "exhaustive") {
    doc["workers"] = a.workers;
    outcome = ls::exhaustive_search(task, learner, a.workers, ls::SearchLimits{a.max_n});
  } else {
    auto cfg = a.heuristic;
    cfg.kind = ls::parse_heuristic_kind(a.method);
    doc["config"] = ls::to_json(cfg);
    outcome = ls::heuristic_search(task, learner, cfg);
  }
  doc["result"] = ls::to_json(outcome);
  emit(a.out, dump(doc));
  return 0;
}

int run_chance_hit(const ChanceHitArgs& a) {
  const auto task = ls::load_task(a.task);
  const auto learner = ls::parse_learner_kind(a.learner);
  const auto r = ls::chance_hit_experiment(task, learner, a.trials, a.seed, a.workers,
                                           ls::SearchLimits{a.max_n});
  json doc;
  doc["learner"] = ls::to_string(learner);
  doc["task"] = task_summary(task, a.task);
  doc["seed"] = a.seed;
  doc["result"] = ls::to_json(r);
  emit(a.out, dump(doc));
  return 0;
}

int run_baseline(const BaselineArgs& a) {
  const auto task = ls::load_task(a.task);
  const auto learner = ls::parse_learner_kind(a.learner);
  json doc;
  doc["method"] = a.method;
  doc["learner"] = ls::to_string(learner);
  doc["task"] = task_summary(task, a.task);
  const auto conventional = ls::conventional_pipeline(task, learner);
  if (a.method == "conventional") {
    doc["results"] = ls::to_json(conventional);
  } else if (a.method == "selftrain") {
    a.self_training.validate();
    doc["spec"] = {{"confidence_quantile", a.self_training.confidence_quantile},
                   {"max_rounds", a.self_training.max_rounds}};
    const auto st = ls::self_training_baseline(task, learner, a.self_training);
    json comparison;
    comparison["conventional"] = ls::to_json(conventional);
    if (task.ground_truth)
      comparison["ground_truth_mu"] =
          ls::evaluate_labeling(task, ls::Labeling::from_labels(*task.ground_truth), learner).mu;
    if (task.n() <= a.max_n) {
      const auto ex = ls::exhaustive_search(task, learner, a.workers, ls::SearchLimits{a.max_n});
      comparison["exhaustive_best_mu"] = ex.best_mu;
      comparison["exhaustive_dominates"] = ex.best_mu <= st.induced_labeling_mu;
    }
    doc["results"] = ls::to_json(st);
    doc["comparison"] = comparison;
  } else {
    throw UsageError("unknown baseline '" + a.method + "' (conventional|selftrain)");
  }
  emit(a.out, dump(doc));
  return 0;
}

int run_scaling(const ScalingArgs& a) {
  ls::ScalingConfig cfg;
  cfg.n_values = parse_n_range(a.n_range);
  cfg.task = a.spec;
  cfg.learner = ls::parse_learner_kind(a.learner);
  cfg.workers = a.workers;
  cfg.repeats = a.repeats;
  cfg.limits = ls::SearchLimits{a.max_n};
  const auto report = ls::scaling_experiment(cfg);

  json spec = ls::to_json(a.spec);
  spec.erase("n");
  spec["n_values"] = cfg.n_values;
  spec["learner"] = ls::to_string(cfg.learner);
  spec["workers"] = cfg.workers;
  spec["repeats"] = cfg.repeats;
  const json doc = {{"spec", spec}, {"results", ls::to_json(report)}, {"slope", ls::slope_json(report)}};

  if (!a.out_csv.empty()) emit(a.out_csv, ls::scaling_csv(report));
  if (!a.out_json.empty() || a.out_csv.empty()) emit(a.out_json, dump(doc));
  return 0;
}

int run_cost_table(const CostTableArgs& a) {
  const auto rows = ls::cost::scaling_table(parse_n_range(a.n_range), a.tc_ms * 1e-3,
                                            parse_regimes(a.regimes));
  std::ostringstream os;
  ls::cost::write_scaling_csv(os, rows);
  emit(a.out, os.str());
  return 0;
}

int run_ledger(const LedgerArgs& a) {
  json doc;
  doc["ledger"] = {{"label", a.ledger.label},     {"curate", a.ledger.curate},
                   {"compute", a.ledger.compute}, {"latency", a.ledger.latency},
                   {"risk", a.ledger.risk}};
  doc["total"] = ls::cost::ledger_total(a.ledger);
  if (a.quality) {
    doc["quality"] = *a.quality;
    doc["perf_per_cost"] = ls::cost::perf_per_cost(*a.quality, a.ledger);
  }
  emit(a.out, dump(doc));
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exhaustive and heuristic search over labelings of an unlabeled pool, "
               "baselines, and runtime cost models"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI file (flags take precedence)");
  std::string save_config;
  app.add_option("--save-config", save_config, "Write the options given on this run to a config file")
      ->configurable(false);

  GenDataArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-data", "Generate a synthetic two-cluster task");
  add_spec_options(*gen_cmd, gen.spec);
  gen_cmd->add_option("--n", gen.spec.n, "Pool size")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output task JSON (default stdout)");

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "Search labelings of a task's pool");
  search_cmd->add_option("method", search.method, "exhaustive|random|greedy|anneal")
      ->check(CLI::IsMember({"exhaustive", "random", "greedy", "anneal"}))
      ->required();
  search_cmd->add_option("--task", search.task, "Task JSON")->required();
  search_cmd->add_option("--learner", search.learner, "centroid|1nn")
      ->check(CLI::IsMember({"centroid", "1nn"}))
      ->capture_default_str();
  search_cmd->add_option("--workers", search.workers, "Exhaustive worker threads")
      ->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-n", search.max_n, "Exhaustive cap (<= 32)")->capture_default_str();
  search_cmd->add_option("--budget", search.heuristic.budget, "Heuristic evaluation budget")
      ->capture_default_str();
  search_cmd->add_option("--restarts", search.heuristic.restarts, "Extra climbs/chains")
      ->capture_default_str();
  search_cmd->add_option("--t0", search.heuristic.initial_temperature, "Initial temperature")
      ->capture_default_str();
  search_cmd->add_option("--gamma", search.heuristic.cooling, "Cooling factor in (0,1)")
      ->capture_default_str();
  search_cmd->add_option("--seed", search.heuristic.rng_seed, "Heuristic RNG seed")
      ->capture_default_str();
  search_cmd->add_flag("--without-replacement", search.heuristic.without_replacement,
                       "Random search draws distinct labelings");
  search_cmd->add_option("--out", search.out, "Output result JSON (default stdout)");

  ChanceHitArgs chance;
  auto* chance_cmd = app.add_subcommand("chance-hit", "Hit rate of uniform random labelings");
  chance_cmd->add_option("--task", chance.task, "Task JSON")->required();
  chance_cmd->add_option("--learner", chance.learner, "centroid|1nn")
      ->check(CLI::IsMember({"centroid", "1nn"}))
      ->capture_default_str();
  chance_cmd->add_option("--trials", chance.trials, "Random draws")->capture_default_str();
  chance_cmd->add_option("--seed", chance.seed, "RNG seed")->capture_default_str();
  chance_cmd->add_option("--workers", chance.workers, "Worker threads")->check(CLI::PositiveNumber);
  chance_cmd->add_option("--max-n", chance.max_n, "Exhaustive cap (<= 32)")->capture_default_str();
  chance_cmd->add_option("--out", chance.out, "Output JSON (default stdout)");

  BaselineArgs baseline;
  auto* baseline_cmd = app.add_subcommand("baseline", "Conventional or self-training baseline");
  baseline_cmd->add_option("method", baseline.method, "conventional|selftrain")
      ->check(CLI::IsMember({"conventional", "selftrain"}))
      ->required();
  baseline_cmd->add_option("--task", baseline.task, "Task JSON")->required();
  baseline_cmd->add_option("--learner", baseline.learner, "centroid|1nn")
      ->check(CLI::IsMember({"centroid", "1nn"}))
      ->capture_default_str();
  baseline_cmd->add_option("--quantile", baseline.self_training.confidence_quantile,
                           "Fraction pseudo-labeled per round, in (0,1]")
      ->capture_default_str();
  baseline_cmd->add_option("--rounds", baseline.self_training.max_rounds, "Maximum rounds")
      ->capture_default_str();
  baseline_cmd->add_option("--workers", baseline.workers, "Worker threads for the comparison search")
      ->check(CLI::PositiveNumber);
  baseline_cmd->add_option("--max-n", baseline.max_n, "Exhaustive cap for the comparison search")
      ->capture_default_str();
  baseline_cmd->add_option("--out", baseline.out, "Output JSON (default stdout)");

  ScalingArgs scaling;
  auto* scaling_cmd = app.add_subcommand("scaling", "Time exhaustive search over a range of n");
  scaling_cmd->add_option("--n", scaling.n_range, "n values: lo:hi, lo:hi:step or a,b,c")
      ->capture_default_str();
  add_spec_options(*scaling_cmd, scaling.spec);
  scaling_cmd->add_option("--learner", scaling.learner, "centroid|1nn")
      ->check(CLI::IsMember({"centroid", "1nn"}))
      ->capture_default_str();
  scaling_cmd->add_option("--workers", scaling.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scaling_cmd->add_option("--repeats", scaling.repeats, "Timed runs per n (fastest kept)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scaling_cmd->add_option("--max-n", scaling.max_n, "Exhaustive cap (<= 32)")->capture_default_str();
  scaling_cmd->add_option("--out-csv", scaling.out_csv, "Per-n table CSV");
  scaling_cmd->add_option("--out-json", scaling.out_json, "JSON summary (default stdout)");

  auto* cost_cmd = app.add_subcommand("cost-model", "Analytical runtime and cost model");
  cost_cmd->require_subcommand(1);
  CostTableArgs table;
  auto* table_cmd = cost_cmd->add_subcommand("table", "Runtime table across speedup regimes (CSV)");
  table_cmd->add_option("--n", table.n_range, "n values: lo:hi, lo:hi:step or a,b,c")
      ->capture_default_str();
  table_cmd->add_option("--tc-ms", table.tc_ms, "Per-cycle time t_c in milliseconds")
      ->capture_default_str();
  table_cmd->add_option("--regimes", table.regimes, "Comma list of const:L0, poly:alpha, exp:beta")
      ->capture_default_str();
  table_cmd->add_option("--out", table.out, "Output CSV (default stdout)");

  LedgerArgs ledger;
  auto* ledger_cmd = cost_cmd->add_subcommand("ledger", "Supervision cost total and quality per cost");
  ledger_cmd->add_option("--label", ledger.ledger.label, "Annotation cost")->capture_default_str();
  ledger_cmd->add_option("--curate", ledger.ledger.curate, "Curation cost")->capture_default_str();
  ledger_cmd->add_option("--compute", ledger.ledger.compute, "Compute cost")->capture_default_str();
  ledger_cmd->add_option("--latency", ledger.ledger.latency, "Latency cost")->capture_default_str();
  ledger_cmd->add_option("--risk", ledger.ledger.risk, "Risk cost")->capture_default_str();
  ledger_cmd->add_option("--quality", ledger.quality, "Model quality Q >= 0");
  ledger_cmd->add_option("--out", ledger.out, "Output JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (!save_config.empty()) ls::write_file_atomically(save_config, app.config_to_str(false, false));

    if (*gen_cmd) return run_gen_data(gen);
    if (*search_cmd) return run_search(search);
    if (*chance_cmd) return run_chance_hit(chance);
    if (*baseline_cmd) return run_baseline(baseline);
    if (*scaling_cmd) return run_scaling(scaling);
    if (*table_cmd) return run_cost_table(table);
    if (*ledger_cmd) return run_ledger(ledger);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
