#pragma once

// Synthetic task generation and the task JSON format:
//   {"d": int, "A": [{"x": [...], "y": 0|1}, ...], "B": [[...], ...],
//    "ground_truth_B": [0|1, ...] (optional), "seed": int}

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "labelsearch/core.hpp"

namespace labelsearch {

struct TaskSpec {
  std::size_t m = 8;
  std::size_t n = 12;
  std::size_t d = 2;
  /// Distance between the two class means.
  double separation = 4.0;
  double noise_sigma = 1.0;
  std::uint64_t seed = 1;

  void validate() const {
    if (m < 1 || n < 1 || d < 1) throw ContractViolation("task spec needs m, n, d >= 1");
    if (!(separation >= 0.0) || !std::isfinite(separation))
      throw ContractViolation("separation must be finite and >= 0");
    if (!(noise_sigma > 0.0) || !std::isfinite(noise_sigma))
      throw ContractViolation("noise sigma must be finite and > 0");
  }
};

namespace detail {

/// Class labels for `count` points, balanced within one and shuffled.
inline std::vector<Label> balanced_labels(std::size_t count, std::mt19937_64& rng) {
  std::vector<Label> labels(count);
  for (std::size_t i = 0; i < count; ++i) labels[i] = static_cast<Label>(i % 2);
  std::shuffle(labels.begin(), labels.end(), rng);
  return labels;
}

inline FeatureVector draw_point(Label y, const TaskSpec& spec, std::mt19937_64& rng,
                                std::normal_distribution<double>& noise) {
  std::vector<double> coords(spec.d);
  for (std::size_t k = 0; k < spec.d; ++k) coords[k] = spec.noise_sigma * noise(rng);
  coords[0] += (y == 1 ? 0.5 : -0.5) * spec.separation;
  return FeatureVector(std::move(coords));
}

} // namespace detail

/// Two spherical Gaussian clusters whose means are `separation` apart along the
/// first axis. A is drawn first, then B, from the same mixture.
inline Task generate_task(const TaskSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  const auto a_labels = detail::balanced_labels(spec.m, rng);
  std::vector<LabeledExample> a;
  a.reserve(spec.m);
  for (Label y : a_labels) a.push_back({detail::draw_point(y, spec, rng, noise), y});

  auto b_labels = detail::balanced_labels(spec.n, rng);
  std::vector<FeatureVector> b;
  b.reserve(spec.n);
  for (Label y : b_labels) b.push_back(detail::draw_point(y, spec, rng, noise));

  Task task{TrustedSet(std::move(a)), UnlabeledPool(std::move(b)), std::move(b_labels), spec.seed};
  task.validate();
  return task;
}

inline nlohmann::json task_to_json(const Task& task) {
  nlohmann::json j;
  j["d"] = task.dim();
  auto& a = j["A"] = nlohmann::json::array();
  for (const auto& e : task.trusted.examples()) {
    nlohmann::json item;
    item["x"] = std::vector<double>(e.x.coords().begin(), e.x.coords().end());
    item["y"] = static_cast<int>(e.y);
    a.push_back(std::move(item));
  }
  auto& b = j["B"] = nlohmann::json::array();
  for (const auto& v : task.pool.items())
    b.push_back(std::vector<double>(v.coords().begin(), v.coords().end()));
  if (task.ground_truth) {
    std::vector<int> truth(task.ground_truth->begin(), task.ground_truth->end());
    j["ground_truth_B"] = truth;
  }
  j["seed"] = task.seed;
  return j;
}

inline Task task_from_json(const nlohmann::json& j) {
  try {
    const auto d = j.at("d").get<std::size_t>();
    const auto read_vector = [d](const nlohmann::json& arr) {
      auto coords = arr.get<std::vector<double>>();
      if (coords.size() != d)
        throw ContractViolation("task file: vector of length " + std::to_string(coords.size()) +
                                " where d=" + std::to_string(d));
      return FeatureVector(std::move(coords));
    };
    const auto read_label = [](const nlohmann::json& v) {
      const int y = v.get<int>();
      if (y != 0 && y != 1) throw ContractViolation("task file: labels must be 0 or 1");
      return static_cast<Label>(y);
    };

    std::vector<LabeledExample> a;
    for (const auto& item : j.at("A")) a.push_back({read_vector(item.at("x")), read_label(item.at("y"))});
    std::vector<FeatureVector> b;
    for (const auto& item : j.at("B")) b.push_back(read_vector(item));

    Task task{TrustedSet(std::move(a)), UnlabeledPool(std::move(b)), std::nullopt,
              j.value("seed", std::uint64_t{0})};
    if (j.contains("ground_truth_B")) {
      std::vector<Label> truth;
      for (const auto& y : j.at("ground_truth_B")) truth.push_back(read_label(y));
      task.ground_truth = std::move(truth);
    }
    task.validate();
    return task;
  } catch (const nlohmann::json::exception& e) {
    throw ContractViolation(std::string("malformed task file: ") + e.what());
  }
}

inline std::string task_to_string(const Task& task) { return task_to_json(task).dump(2) + "\n"; }

inline Task load_task(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open task file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ContractViolation("task file " + path.string() + " is not valid JSON: " + e.what());
  }
  return task_from_json(j);
}

/// Writes via a sibling temporary file and rename so readers never see a partial file.
inline void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

} // namespace labelsearch
