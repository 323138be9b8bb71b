#pragma once

// JSON and CSV renderings of results. Timing fields are kept apart from the
// deterministic ones so that reports can be compared across runs.

#include <ostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "labelsearch/baselines.hpp"
#include "labelsearch/cost_model.hpp"
#include "labelsearch/scaling.hpp"
#include "labelsearch/search.hpp"
#include "labelsearch/task_io.hpp"

namespace labelsearch {

inline nlohmann::json to_json(const TaskSpec& s) {
  return {{"m", s.m},           {"n", s.n},
          {"d", s.d},           {"separation", s.separation},
          {"noise_sigma", s.noise_sigma}, {"seed", s.seed}};
}

inline nlohmann::json to_json(const HeuristicConfig& c) {
  return {{"kind", to_string(c.kind)},
          {"budget", c.budget},
          {"restarts", c.restarts},
          {"initial_temperature", c.initial_temperature},
          {"cooling", c.cooling},
          {"rng_seed", c.rng_seed},
          {"without_replacement", c.without_replacement}};
}

inline nlohmann::json to_json(const SearchOutcome& o) {
  return {{"best_mu", o.best_mu},
          {"best_errors", o.best_errors},
          {"argmin", o.argmin},
          {"k_opt", o.optimum_count},
          {"evaluations", o.evaluations},
          {"timing", {{"elapsed_s", o.elapsed.count()}, {"mean_eval_time_s", o.mean_eval_time.count()}}}};
}

inline nlohmann::json to_json(const ChanceHitResult& r) {
  return {{"n", r.n},
          {"best_mu", r.best_mu},
          {"k_opt", r.k_opt},
          {"trials", r.trials},
          {"hits", r.hits},
          {"empirical_rate", r.empirical_rate},
          {"predicted_rate", r.predicted_rate},
          {"binomial_stddev", r.standard_error()}};
}

inline nlohmann::json to_json(const ConventionalResult& r) {
  nlohmann::json j = nlohmann::json::object();
  j["mu_on_A_holdout"] = r.mu_on_A_holdout ? nlohmann::json(*r.mu_on_A_holdout) : nlohmann::json();
  j["accuracy_on_B_truth"] =
      r.accuracy_on_B_truth ? nlohmann::json(*r.accuracy_on_B_truth) : nlohmann::json();
  return j;
}

inline nlohmann::json to_json(const SelfTrainingResult& r) {
  std::vector<int> induced(r.induced_labeling.begin(), r.induced_labeling.end());
  return {{"final_mu", r.final_mu},
          {"rounds", r.rounds},
          {"labeled_fraction_per_round", r.labeled_fraction_per_round},
          {"induced_labeling", induced},
          {"induced_labeling_mu", r.induced_labeling_mu},
          {"holdout_clean", r.holdout_clean}};
}

inline nlohmann::json to_json(const ScalingReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n},
                    {"evaluations", row.evaluations},
                    {"best_mu", row.best_mu},
                    {"k_opt", row.optimum_count},
                    {"argmin", row.argmin},
                    {"timing",
                     {{"mean_eval_time_s", row.mean_eval_time.count()},
                      {"total_time_s", row.total_time.count()}}}});
  return {{"rows", rows}, {"workers", r.workers}};
}

inline nlohmann::json slope_json(const ScalingReport& r) {
  return {{"fitted_slope", r.fitted_slope},
          {"slope_stderr", r.slope_stderr},
          {"intercept", r.intercept},
          {"eval_time_cv", r.eval_time_cv},
          {"wall_clock_s", r.wall_clock.count()}};
}

inline std::string scaling_csv(const ScalingReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "n,evaluations,mean_eval_time_s,total_time_s,best_mu,k_opt\n";
  for (const auto& row : r.rows)
    os << row.n << ',' << row.evaluations << ',' << row.mean_eval_time.count() << ','
       << row.total_time.count() << ',' << row.best_mu << ',' << row.optimum_count << '\n';
  return os.str();
}

} // namespace labelsearch
