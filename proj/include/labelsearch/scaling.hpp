#pragma once

// Empirical runtime scaling of exhaustive search.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "labelsearch/search.hpp"
#include "labelsearch/stats.hpp"
#include "labelsearch/task_io.hpp"

namespace labelsearch {

struct ScalingConfig {
  std::vector<unsigned> n_values;
  /// Template for every task; n is replaced per row.
  TaskSpec task;
  LearnerKind learner = LearnerKind::NearestCentroid;
  unsigned workers = 1;
  /// Timed runs per n; the fastest is kept.
  unsigned repeats = 1;
  SearchLimits limits{};
};

struct ScalingRow {
  unsigned n = 0;
  std::uint64_t evaluations = 0;
  Seconds mean_eval_time{0.0};
  Seconds total_time{0.0};
  double best_mu = 0.0;
  std::uint64_t optimum_count = 0;
  std::vector<std::uint64_t> argmin;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  /// Least-squares slope of log2(total_time) against n.
  double fitted_slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
  unsigned workers = 1;
  double eval_time_cv = 0.0;
  Seconds wall_clock{0.0};
};

inline ScalingReport scaling_experiment(const ScalingConfig& config) {
  if (config.n_values.size() < 2) throw ContractViolation("scaling needs at least two n values");
  if (!std::is_sorted(config.n_values.begin(), config.n_values.end()) ||
      std::adjacent_find(config.n_values.begin(), config.n_values.end()) != config.n_values.end())
    throw ContractViolation("scaling n values must be strictly ascending");
  for (unsigned n : config.n_values) detail::check_exhaustive_cap(n, config.limits);
  const unsigned repeats = std::max(1u, config.repeats);

  const auto task_for = [&](unsigned n) {
    TaskSpec spec = config.task;
    spec.n = n;
    return generate_task(spec);
  };

  const auto start = std::chrono::steady_clock::now();
  // Warm-up sweep at the smallest n; discarded.
  exhaustive_search(task_for(config.n_values.front()), config.learner, config.workers, config.limits);

  ScalingReport report;
  report.workers = config.workers;
  std::vector<double> xs, ys, eval_times;
  for (unsigned n : config.n_values) {
    const Task task = task_for(n);
    SearchOutcome best;
    Seconds fastest{std::numeric_limits<double>::infinity()};
    for (unsigned r = 0; r < repeats; ++r) {
      auto outcome = exhaustive_search(task, config.learner, config.workers, config.limits);
      if (outcome.elapsed < fastest) {
        fastest = outcome.elapsed;
        best = std::move(outcome);
      }
    }
    ScalingRow row;
    row.n = n;
    row.evaluations = best.evaluations;
    row.mean_eval_time = best.mean_eval_time;
    row.total_time = best.elapsed;
    row.best_mu = best.best_mu;
    row.optimum_count = best.optimum_count;
    row.argmin = std::move(best.argmin);
    xs.push_back(n);
    ys.push_back(std::log2(row.total_time.count()));
    eval_times.push_back(row.mean_eval_time.count());
    report.rows.push_back(std::move(row));
  }
  report.wall_clock = std::chrono::steady_clock::now() - start;

  const auto line = least_squares_line(xs, ys);
  report.fitted_slope = line.slope;
  report.slope_stderr = line.slope_stderr;
  report.intercept = line.intercept;
  report.eval_time_cv = coefficient_of_variation(eval_times);
  return report;
}

} // namespace labelsearch
