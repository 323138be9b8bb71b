#pragma once

// Reference pipelines that use A the conventional way: train on A and test on
// B, and pseudo-label self-training seeded from A.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "labelsearch/core.hpp"
#include "labelsearch/learners.hpp"

namespace labelsearch {

/// Per-class alternating split of A: the first example of each class goes to
/// the fitting half, the next to the holdout half, and so on.
struct HoldoutSplit {
  std::vector<std::size_t> fit;
  std::vector<std::size_t> holdout;
};

inline HoldoutSplit split_trusted(const TrustedSet& trusted) {
  HoldoutSplit split;
  std::size_t seen[2] = {0, 0};
  for (std::size_t i = 0; i < trusted.size(); ++i) {
    const Label y = trusted[i].y;
    (seen[y]++ % 2 == 0 ? split.fit : split.holdout).push_back(i);
  }
  return split;
}

namespace detail {

inline TrustedSet subset(const TrustedSet& trusted, const std::vector<std::size_t>& idx) {
  std::vector<LabeledExample> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(trusted[i]);
  return TrustedSet(std::move(out));
}

inline UnlabeledPool vectors_of(const TrustedSet& trusted) {
  std::vector<FeatureVector> out;
  out.reserve(trusted.size());
  for (const auto& e : trusted.examples()) out.push_back(e.x);
  return UnlabeledPool(std::move(out));
}

inline double train_and_score(const UnlabeledPool& train, std::span<const Label> labels,
                              LearnerKind kind, const TrustedSet& test) {
  const auto state = fit(train, labels, kind, test);
  return evaluate_mu(predict(state, test).labels, test).mu;
}

} // namespace detail

struct ConventionalResult {
  /// Trained on the fitting half of A, scored on the holdout half (needs m >= 2).
  std::optional<double> mu_on_A_holdout;
  /// Trained on all of A, scored against ground_truth_B.
  std::optional<double> accuracy_on_B_truth;
};

/// Train on A, test on B.
inline ConventionalResult conventional_pipeline(const Task& task, LearnerKind kind) {
  task.validate();
  ConventionalResult out;

  const auto split = split_trusted(task.trusted);
  if (!split.fit.empty() && !split.holdout.empty()) {
    const auto fit_half = detail::subset(task.trusted, split.fit);
    const auto labels = fit_half.labels();
    out.mu_on_A_holdout = detail::train_and_score(detail::vectors_of(fit_half), labels, kind,
                                                  detail::subset(task.trusted, split.holdout));
  }

  if (task.ground_truth) {
    std::vector<LabeledExample> b;
    b.reserve(task.n());
    for (std::size_t i = 0; i < task.n(); ++i) b.push_back({task.pool[i], (*task.ground_truth)[i]});
    const auto labels = task.trusted.labels();
    out.accuracy_on_B_truth =
        1.0 - detail::train_and_score(detail::vectors_of(task.trusted), labels, kind,
                                      TrustedSet(std::move(b)));
  }
  return out;
}

struct SelfTrainingConfig {
  /// Fraction of the still-unlabeled pool pseudo-labeled per round, in (0, 1].
  double confidence_quantile = 0.25;
  unsigned max_rounds = 10;

  void validate() const {
    if (!(confidence_quantile > 0.0 && confidence_quantile <= 1.0))
      throw ContractViolation("confidence quantile must lie in (0, 1]");
    if (max_rounds < 1) throw ContractViolation("self-training needs max_rounds >= 1");
  }
};

struct SelfTrainingResult {
  /// Error on the held-out half of A.
  double final_mu = 0.0;
  unsigned rounds = 0;
  std::vector<double> labeled_fraction_per_round;
  /// Pseudo-labels for B; items never pseudo-labeled take the final model's prediction.
  std::vector<Label> induced_labeling;
  /// Reversed-supervision score of induced_labeling: trained on B, tested on all of A.
  double induced_labeling_mu = 0.0;
  /// True when no held-out example of A entered any fit.
  bool holdout_clean = false;
};

inline SelfTrainingResult self_training_baseline(const Task& task, LearnerKind kind,
                                                 const SelfTrainingConfig& config) {
  task.validate();
  config.validate();
  const auto split = split_trusted(task.trusted);
  if (split.fit.empty() || split.holdout.empty())
    throw ContractViolation("self-training needs m >= 2 so that A can be split into fit and holdout halves");

  const auto holdout = detail::subset(task.trusted, split.holdout);
  std::vector<bool> used_from_a(task.m(), false);

  std::vector<FeatureVector> train_x;
  std::vector<Label> train_y;
  for (std::size_t i : split.fit) {
    train_x.push_back(task.trusted[i].x);
    train_y.push_back(task.trusted[i].y);
    used_from_a[i] = true;
  }

  const TrustedSet no_eval;
  std::vector<std::optional<Label>> pseudo(task.n());
  std::size_t labeled = 0;
  SelfTrainingResult out;

  for (unsigned round = 0; round < config.max_rounds && labeled < task.n(); ++round) {
    const UnlabeledPool train_pool(train_x);
    const auto model = fit(train_pool, train_y, kind, no_eval);

    struct Candidate {
      std::size_t index;
      Classification c;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < task.n(); ++i)
      if (!pseudo[i]) candidates.push_back({i, classify(model, train_pool, task.pool[i].coords())});
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      return a.c.confidence > b.c.confidence;
    });

    const auto take = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(config.confidence_quantile *
                                              static_cast<double>(candidates.size()))));
    for (std::size_t k = 0; k < std::min(take, candidates.size()); ++k) {
      const auto& cand = candidates[k];
      pseudo[cand.index] = cand.c.label;
      train_x.push_back(task.pool[cand.index]);
      train_y.push_back(cand.c.label);
      ++labeled;
    }
    ++out.rounds;
    out.labeled_fraction_per_round.push_back(static_cast<double>(labeled) /
                                             static_cast<double>(task.n()));
  }

  const UnlabeledPool final_pool(train_x);
  out.final_mu = detail::train_and_score(final_pool, train_y, kind, holdout);

  const auto final_model = fit(final_pool, train_y, kind, no_eval);
  out.induced_labeling.resize(task.n());
  for (std::size_t i = 0; i < task.n(); ++i)
    out.induced_labeling[i] =
        pseudo[i] ? *pseudo[i] : classify(final_model, final_pool, task.pool[i].coords()).label;
  out.induced_labeling_mu =
      detail::train_and_score(task.pool, out.induced_labeling, kind, task.trusted);

  out.holdout_clean = std::none_of(split.holdout.begin(), split.holdout.end(),
                                   [&](std::size_t i) { return used_from_a[i]; });
  return out;
}

} // namespace labelsearch
