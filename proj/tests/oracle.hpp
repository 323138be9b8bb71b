#pragma once

// Reference implementations for tests. These deliberately share no code with
// the library's learners or searchers: means are summed in plain doubles,
// every labeling is fitted from scratch, and words are visited in binary order.

#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "labelsearch/core.hpp"
#include "labelsearch/task_io.hpp"

namespace oracle {

using labelsearch::Label;
using labelsearch::Task;

inline std::vector<double> mean_of(const Task& task, const std::vector<Label>& labels, Label c) {
  std::vector<double> sum(task.dim(), 0.0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < task.n(); ++i) {
    if (labels[i] != c) continue;
    for (std::size_t k = 0; k < task.dim(); ++k) sum[k] += task.pool[i][k];
    ++count;
  }
  if (count == 0) return {};
  for (double& s : sum) s /= static_cast<double>(count);
  return sum;
}

inline double dist2(const std::vector<double>& a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

inline std::vector<Label> centroid_predictions(const Task& task, const std::vector<Label>& labels) {
  const auto m0 = mean_of(task, labels, 0);
  const auto m1 = mean_of(task, labels, 1);
  std::vector<Label> out;
  for (const auto& e : task.trusted.examples()) {
    if (m0.empty()) out.push_back(1);
    else if (m1.empty()) out.push_back(0);
    else out.push_back(dist2(m1, e.x.coords()) < dist2(m0, e.x.coords()) ? 1 : 0);
  }
  return out;
}

inline std::vector<Label> one_nn_predictions(const Task& task, const std::vector<Label>& labels) {
  std::vector<Label> out;
  for (const auto& e : task.trusted.examples()) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < task.n(); ++i) {
      std::vector<double> p(task.pool[i].coords().begin(), task.pool[i].coords().end());
      const double d = dist2(p, e.x.coords());
      if (d < best) {
        best = d;
        arg = i;
      }
    }
    out.push_back(labels[arg]);
  }
  return out;
}

inline std::vector<Label> predictions(const Task& task, const std::vector<Label>& labels,
                                      bool centroid) {
  return centroid ? centroid_predictions(task, labels) : one_nn_predictions(task, labels);
}

inline std::size_t errors(const Task& task, const std::vector<Label>& predicted) {
  std::size_t wrong = 0;
  for (std::size_t j = 0; j < task.m(); ++j)
    if (predicted[j] != task.trusted[j].y) ++wrong;
  return wrong;
}

inline std::vector<Label> unpack(std::uint64_t word, std::size_t n) {
  std::vector<Label> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Label>((word >> i) & 1u);
  return out;
}

struct BruteForce {
  std::size_t best_errors = std::numeric_limits<std::size_t>::max();
  std::vector<std::uint64_t> argmin;  // ascending, uncapped
};

/// Refit-per-labeling search in plain binary order.
inline BruteForce brute_force(const Task& task, bool centroid) {
  BruteForce out;
  const std::uint64_t total = std::uint64_t{1} << task.n();
  for (std::uint64_t w = 0; w < total; ++w) {
    const std::size_t e = errors(task, predictions(task, unpack(w, task.n()), centroid));
    if (e < out.best_errors) {
      out.best_errors = e;
      out.argmin.clear();
    }
    if (e == out.best_errors) out.argmin.push_back(w);
  }
  return out;
}

/// A task drawn from a random spec; sizes bounded by the arguments.
inline Task random_task(std::mt19937_64& rng, std::size_t max_n, std::size_t max_m = 12,
                        std::size_t max_d = 4) {
  labelsearch::TaskSpec spec;
  spec.m = std::uniform_int_distribution<std::size_t>(1, max_m)(rng);
  spec.n = std::uniform_int_distribution<std::size_t>(1, max_n)(rng);
  spec.d = std::uniform_int_distribution<std::size_t>(1, max_d)(rng);
  spec.separation = std::uniform_real_distribution<double>(0.0, 6.0)(rng);
  spec.noise_sigma = std::uniform_real_distribution<double>(0.3, 2.0)(rng);
  spec.seed = rng();
  return labelsearch::generate_task(spec);
}

} // namespace oracle
