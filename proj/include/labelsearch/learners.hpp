#pragma once

// Cheap classifiers trained on (pool, labeling) and scored on a trusted set.
//
// Both learners support exact single-item relabeling. Per-class coordinate
// sums are kept in 64.64 fixed point, so adding and removing items is exact
// and a state reached through any sequence of flips is bit-identical to a
// fresh fit of the final labeling.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "labelsearch/core.hpp"

namespace labelsearch {

enum class LearnerKind { NearestCentroid, OneNearestNeighbor };

inline std::string_view to_string(LearnerKind kind) {
  return kind == LearnerKind::NearestCentroid ? "centroid" : "1nn";
}

inline LearnerKind parse_learner_kind(std::string_view name) {
  if (name == "centroid" || name == "nearest-centroid") return LearnerKind::NearestCentroid;
  if (name == "1nn" || name == "one-nn" || name == "one-nearest-neighbor")
    return LearnerKind::OneNearestNeighbor;
  throw ContractViolation("unknown learner kind '" + std::string(name) + "'");
}

namespace detail {

using Fixed = __int128;
inline constexpr int kFixedFractionBits = 64;
/// Coordinates must stay below this magnitude to fit 64.64 sums without overflow.
inline constexpr double kMaxAbsCoordinate = 0x1p40;

inline Fixed to_fixed(double x) {
  if (!(std::fabs(x) < kMaxAbsCoordinate))
    throw OutOfRange("feature coordinate magnitude must be below 2^40");
  return static_cast<Fixed>(std::ldexp(x, kFixedFractionBits));
}

inline double fixed_to_double(Fixed s) {
  return std::ldexp(static_cast<double>(s), -kFixedFractionBits);
}

/// Pool coordinates converted once, row-major n x d.
inline std::vector<Fixed> fixed_rows(const UnlabeledPool& pool) {
  std::vector<Fixed> out;
  out.reserve(pool.size() * pool.dim());
  for (const auto& v : pool.items())
    for (double c : v.coords()) out.push_back(to_fixed(c));
  return out;
}

} // namespace detail

struct LearnerState {
  LearnerKind kind = LearnerKind::NearestCentroid;
  /// Current label of every pool item.
  std::vector<Label> labels;
  /// Per-class coordinate sums in 64.64 fixed point.
  std::array<std::vector<detail::Fixed>, 2> class_sums;
  std::array<std::size_t, 2> class_counts{0, 0};
  /// One-NN only: nearest pool item for each evaluation point (ties -> lowest index).
  std::vector<std::size_t> nn_index;
  std::vector<double> nn_sqdist;

  std::size_t dim() const noexcept { return class_sums[0].size(); }

  /// Exact centroid of class c; empty if the class has no members.
  std::vector<double> centroid(Label c) const {
    if (class_counts[c] == 0) return {};
    std::vector<double> out(dim());
    const auto count = static_cast<double>(class_counts[c]);
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] = detail::fixed_to_double(class_sums[c][k]) / count;
    return out;
  }

  friend bool operator==(const LearnerState&, const LearnerState&) = default;
};

struct Prediction {
  std::vector<Label> labels;
};

namespace detail {

inline void add_item(LearnerState& s, std::span<const Fixed> row, Label c) {
  auto& sums = s.class_sums[c];
  for (std::size_t k = 0; k < row.size(); ++k) sums[k] += row[k];
  ++s.class_counts[c];
}

inline void remove_item(LearnerState& s, std::span<const Fixed> row, Label c) {
  auto& sums = s.class_sums[c];
  for (std::size_t k = 0; k < row.size(); ++k) sums[k] -= row[k];
  --s.class_counts[c];
}

/// Relabels item i to the opposite class using a pre-converted coordinate row.
inline void apply_flip(LearnerState& s, std::span<const Fixed> row, std::size_t i) {
  const Label old_label = s.labels[i];
  const Label new_label = static_cast<Label>(old_label ^ 1u);
  remove_item(s, row, old_label);
  add_item(s, row, new_label);
  s.labels[i] = new_label;
}

inline std::pair<std::size_t, double> nearest_item(const UnlabeledPool& pool,
                                                   std::span<const double> x) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const double dist = squared_distance(pool[i].coords(), x);
    if (dist < best_d) {
      best_d = dist;
      best = i;
    }
  }
  return {best, best_d};
}

/// Nearest-centroid rule given both centroids (either may be empty). Ties -> 0.
inline Label centroid_rule(std::span<const double> c0, std::span<const double> c1,
                           std::span<const double> x) {
  if (c0.empty()) return 1;
  if (c1.empty()) return 0;
  return squared_distance(x, c1) < squared_distance(x, c0) ? Label{1} : Label{0};
}

} // namespace detail

/// Trains a learner on the pool under `labels`. For one-NN the nearest-pool-item
/// index is precomputed against `eval_set`, the points later passed to predict().
inline LearnerState fit(const UnlabeledPool& pool, std::span<const Label> labels,
                        LearnerKind kind, const TrustedSet& eval_set) {
  if (pool.size() == 0) throw ContractViolation("fit: pool must be nonempty");
  if (labels.size() != pool.size())
    throw ContractViolation("fit: labeling length differs from pool size");
  if (eval_set.size() > 0 && eval_set.dim() != pool.dim())
    throw ContractViolation("fit: evaluation set dimension differs from pool");

  const std::size_t d = pool.dim();
  LearnerState s;
  s.kind = kind;
  s.labels.assign(labels.begin(), labels.end());
  s.class_sums[0].assign(d, 0);
  s.class_sums[1].assign(d, 0);

  std::vector<detail::Fixed> row(d);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (labels[i] > 1) throw ContractViolation("fit: labels must be 0 or 1");
    for (std::size_t k = 0; k < d; ++k) row[k] = detail::to_fixed(pool[i][k]);
    detail::add_item(s, row, labels[i]);
  }

  if (kind == LearnerKind::OneNearestNeighbor) {
    s.nn_index.reserve(eval_set.size());
    s.nn_sqdist.reserve(eval_set.size());
    for (const auto& e : eval_set.examples()) {
      const auto [idx, dist] = detail::nearest_item(pool, e.x.coords());
      s.nn_index.push_back(idx);
      s.nn_sqdist.push_back(dist);
    }
  }
  return s;
}

inline LearnerState fit(const UnlabeledPool& pool, const Labeling& labeling, LearnerKind kind,
                        const TrustedSet& eval_set) {
  const auto labels = labeling.labels();
  return fit(pool, labels, kind, eval_set);
}

/// Returns the state after relabeling item `index` to `new_label`.
inline LearnerState flip_update(LearnerState state, const UnlabeledPool& pool,
                                std::size_t index, Label new_label) {
  if (index >= state.labels.size()) throw OutOfRange("flip_update: item index outside pool");
  if (new_label > 1) throw ContractViolation("flip_update: labels must be 0 or 1");
  if (state.labels[index] == new_label)
    throw ContractViolation("flip_update: item " + std::to_string(index) +
                            " already carries label " + std::to_string(new_label));
  std::vector<detail::Fixed> row(pool.dim());
  for (std::size_t k = 0; k < row.size(); ++k) row[k] = detail::to_fixed(pool[index][k]);
  detail::apply_flip(state, row, index);
  return state;
}

inline Prediction predict(const LearnerState& state, const TrustedSet& trusted) {
  Prediction out;
  out.labels.reserve(trusted.size());
  if (state.kind == LearnerKind::OneNearestNeighbor) {
    if (state.nn_index.size() != trusted.size())
      throw ContractViolation("predict: one-NN state was fitted against a different set");
    for (std::size_t idx : state.nn_index) out.labels.push_back(state.labels[idx]);
    return out;
  }
  if (trusted.dim() != state.dim())
    throw ContractViolation("predict: dimension mismatch");
  const auto c0 = state.centroid(0);
  const auto c1 = state.centroid(1);
  for (const auto& e : trusted.examples())
    out.labels.push_back(detail::centroid_rule(c0, c1, e.x.coords()));
  return out;
}

struct Classification {
  Label label = 0;
  /// Distance margin behind the decision; infinite when one class is empty.
  double confidence = 0.0;
};

/// Classifies an arbitrary point. Centroid confidence is |d0 - d1|; one-NN
/// confidence is the gap between the nearest opposite-class item and the nearest item.
inline Classification classify(const LearnerState& state, const UnlabeledPool& pool,
                               std::span<const double> x) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (state.kind == LearnerKind::NearestCentroid) {
    const auto c0 = state.centroid(0);
    const auto c1 = state.centroid(1);
    const Label y = detail::centroid_rule(c0, c1, x);
    if (c0.empty() || c1.empty()) return {y, inf};
    const double d0 = std::sqrt(squared_distance(x, c0));
    const double d1 = std::sqrt(squared_distance(x, c1));
    return {y, std::fabs(d0 - d1)};
  }
  std::array<double, 2> nearest{inf, inf};
  std::array<std::size_t, 2> nearest_idx{0, 0};
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const Label c = state.labels[i];
    const double dist = squared_distance(pool[i].coords(), x);
    if (dist < nearest[c]) {
      nearest[c] = dist;
      nearest_idx[c] = i;
    }
  }
  Label y;
  if (nearest[0] == nearest[1])
    y = nearest_idx[0] < nearest_idx[1] ? Label{0} : Label{1};
  else
    y = nearest[1] < nearest[0] ? Label{1} : Label{0};
  const double other = nearest[y ^ 1u];
  if (!std::isfinite(other)) return {y, inf};
  return {y, std::sqrt(other) - std::sqrt(nearest[y])};
}

/// Learner state plus running error count on a fixed trusted set. Each flip
/// costs O(m·d) for the centroid learner and O(#A-points mapped to the item)
/// for one-NN.
class IncrementalEvaluator {
public:
  IncrementalEvaluator(const UnlabeledPool& pool, const TrustedSet& trusted, LearnerKind kind,
                       std::span<const Label> start)
      : trusted_(&trusted),
        rows_(detail::fixed_rows(pool)),
        state_(fit(pool, start, kind, trusted)),
        predictions_(trusted.size()),
        c0_(pool.dim()),
        c1_(pool.dim()) {
    if (trusted.dim() != pool.dim())
      throw ContractViolation("evaluator: trusted set and pool dimensions differ");
    if (kind == LearnerKind::OneNearestNeighbor) {
      member_offsets_.assign(pool.size() + 1, 0);
      for (std::size_t idx : state_.nn_index) ++member_offsets_[idx + 1];
      for (std::size_t i = 0; i < pool.size(); ++i) member_offsets_[i + 1] += member_offsets_[i];
      members_.resize(trusted.size());
      auto fill = member_offsets_;
      for (std::size_t j = 0; j < trusted.size(); ++j) members_[fill[state_.nn_index[j]]++] = j;
    }
    if (pool.size() <= kMaxLabelingBits)
      for (std::size_t i = 0; i < pool.size(); ++i)
        word_ |= std::uint64_t{state_.labels[i]} << i;
    refresh_all();
  }

  IncrementalEvaluator(const UnlabeledPool& pool, const TrustedSet& trusted, LearnerKind kind,
                       const Labeling& start)
      : IncrementalEvaluator(pool, trusted, kind, start.labels()) {}

  void flip(std::size_t i) {
    const std::size_t d = c0_.size();
    detail::apply_flip(state_, std::span<const detail::Fixed>(rows_).subspan(i * d, d), i);
    word_ ^= std::uint64_t{1} << (i & 63u);
    if (state_.kind == LearnerKind::OneNearestNeighbor) {
      const Label y = state_.labels[i];
      for (std::size_t p = member_offsets_[i]; p < member_offsets_[i + 1]; ++p) {
        const std::size_t j = members_[p];
        if (predictions_[j] == (*trusted_)[j].y) ++errors_; else --errors_;
        predictions_[j] = y;
      }
    } else {
      refresh_all();
    }
  }

  /// Moves to an arbitrary labeling by flipping every differing bit (pools of n <= 63).
  void jump_to(std::uint64_t target) {
    std::uint64_t diff = target ^ word_;
    while (diff != 0) {
      flip(static_cast<std::size_t>(std::countr_zero(diff)));
      diff &= diff - 1;
    }
  }

  std::uint64_t word() const noexcept { return word_; }
  std::size_t errors() const noexcept { return errors_; }
  std::size_t m() const noexcept { return predictions_.size(); }
  double mu() const { return mu_from_errors(errors_, m()); }
  const LearnerState& state() const noexcept { return state_; }
  std::span<const Label> predictions() const noexcept { return predictions_; }

private:
  void refresh_all() {
    if (state_.kind == LearnerKind::OneNearestNeighbor) {
      for (std::size_t j = 0; j < predictions_.size(); ++j)
        predictions_[j] = state_.labels[state_.nn_index[j]];
    } else {
      const bool has0 = state_.class_counts[0] > 0;
      const bool has1 = state_.class_counts[1] > 0;
      for (std::size_t k = 0; k < c0_.size(); ++k) {
        if (has0)
          c0_[k] = detail::fixed_to_double(state_.class_sums[0][k]) /
                   static_cast<double>(state_.class_counts[0]);
        if (has1)
          c1_[k] = detail::fixed_to_double(state_.class_sums[1][k]) /
                   static_cast<double>(state_.class_counts[1]);
      }
      const std::span<const double> c0 = has0 ? std::span<const double>(c0_) : std::span<const double>{};
      const std::span<const double> c1 = has1 ? std::span<const double>(c1_) : std::span<const double>{};
      for (std::size_t j = 0; j < predictions_.size(); ++j)
        predictions_[j] = detail::centroid_rule(c0, c1, (*trusted_)[j].x.coords());
    }
    errors_ = 0;
    for (std::size_t j = 0; j < predictions_.size(); ++j)
      if (predictions_[j] != (*trusted_)[j].y) ++errors_;
  }

  const TrustedSet* trusted_;
  std::vector<detail::Fixed> rows_;
  LearnerState state_;
  std::vector<Label> predictions_;
  std::vector<double> c0_, c1_;
  std::vector<std::size_t> member_offsets_, members_;
  std::size_t errors_ = 0;
  std::uint64_t word_ = 0;
};

/// From-scratch fit and evaluation of one labeling.
inline EvalResult evaluate_labeling(const Task& task, const Labeling& labeling, LearnerKind kind) {
  const auto state = fit(task.pool, labeling, kind, task.trusted);
  return evaluate_mu(predict(state, task.trusted).labels, task.trusted);
}

} // namespace labelsearch
