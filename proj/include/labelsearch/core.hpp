#pragma once

// Datasets, labelings and evaluation results shared by the whole library.

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace labelsearch {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// A caller broke a documented precondition (length mismatch, same-label flip, ...).
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A value does not fit the representation it was asked for.
class OutOfRange : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A request was refused because it exceeds a configured limit.
class CapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using Label = std::uint8_t;
using Seconds = std::chrono::duration<double>;

// ---------------------------------------------------------------------------
// Feature vectors and the two datasets
// ---------------------------------------------------------------------------

class FeatureVector {
public:
  FeatureVector() = default;
  explicit FeatureVector(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw ContractViolation("feature vector must have d >= 1");
    for (double c : coords_)
      if (!std::isfinite(c)) throw ContractViolation("feature coordinates must be finite");
  }
  FeatureVector(std::initializer_list<double> coords)
      : FeatureVector(std::vector<double>(coords)) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

private:
  std::vector<double> coords_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    acc += diff * diff;
  }
  return acc;
}

struct LabeledExample {
  FeatureVector x;
  Label y = 0;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

namespace detail {
inline void check_same_dim(std::size_t d, const FeatureVector& v) {
  if (v.dim() != d) throw ContractViolation("all vectors in a task must share dimension d");
}
} // namespace detail

/// The small ground-truth set A. Both classes need not be present.
class TrustedSet {
public:
  TrustedSet() = default;
  explicit TrustedSet(std::vector<LabeledExample> examples) : examples_(std::move(examples)) {
    if (examples_.empty()) throw ContractViolation("trusted set needs m >= 1");
    for (const auto& e : examples_) {
      detail::check_same_dim(examples_.front().x.dim(), e.x);
      if (e.y > 1) throw ContractViolation("labels must be 0 or 1");
    }
  }

  std::size_t size() const noexcept { return examples_.size(); }
  std::size_t dim() const noexcept { return examples_.empty() ? 0 : examples_.front().x.dim(); }
  const LabeledExample& operator[](std::size_t i) const { return examples_[i]; }
  const std::vector<LabeledExample>& examples() const noexcept { return examples_; }

  std::vector<Label> labels() const {
    std::vector<Label> out;
    out.reserve(examples_.size());
    for (const auto& e : examples_) out.push_back(e.y);
    return out;
  }

  friend bool operator==(const TrustedSet&, const TrustedSet&) = default;

private:
  std::vector<LabeledExample> examples_;
};

/// The unlabeled pool B whose labels are the decision variable.
class UnlabeledPool {
public:
  UnlabeledPool() = default;
  explicit UnlabeledPool(std::vector<FeatureVector> items) : items_(std::move(items)) {
    if (items_.empty()) throw ContractViolation("unlabeled pool needs n >= 1");
    for (const auto& v : items_) detail::check_same_dim(items_.front().dim(), v);
  }

  std::size_t size() const noexcept { return items_.size(); }
  std::size_t dim() const noexcept { return items_.empty() ? 0 : items_.front().dim(); }
  const FeatureVector& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<FeatureVector>& items() const noexcept { return items_; }

  friend bool operator==(const UnlabeledPool&, const UnlabeledPool&) = default;

private:
  std::vector<FeatureVector> items_;
};

/// One reversed-supervision problem instance: A, B, and optionally B's hidden truth.
struct Task {
  TrustedSet trusted;
  UnlabeledPool pool;
  std::optional<std::vector<Label>> ground_truth;
  std::uint64_t seed = 0;

  std::size_t dim() const noexcept { return trusted.dim(); }
  std::size_t m() const noexcept { return trusted.size(); }
  std::size_t n() const noexcept { return pool.size(); }

  void validate() const {
    if (trusted.dim() != pool.dim())
      throw ContractViolation("trusted set and pool must share dimension d");
    if (ground_truth) {
      if (ground_truth->size() != pool.size())
        throw ContractViolation("ground_truth_B must have one label per pool item");
      for (Label y : *ground_truth)
        if (y > 1) throw ContractViolation("labels must be 0 or 1");
    }
  }

  friend bool operator==(const Task&, const Task&) = default;
};

// ---------------------------------------------------------------------------
// Labelings
// ---------------------------------------------------------------------------

inline constexpr unsigned kMaxLabelingBits = 63;

/// A full assignment B -> {0,1} packed into one word; bit i labels pool item i.
class Labeling {
public:
  constexpr Labeling() = default;

  static Labeling from_word(std::uint64_t bits, unsigned n) {
    if (n > kMaxLabelingBits)
      throw OutOfRange("labeling width n=" + std::to_string(n) + " exceeds 63 bits");
    if (n < 64 && (bits >> n) != 0)
      throw OutOfRange("labeling word has bits set at or above n=" + std::to_string(n));
    return Labeling(bits, n);
  }

  static Labeling from_labels(std::span<const Label> labels) {
    if (labels.size() > kMaxLabelingBits)
      throw OutOfRange("labeling width n=" + std::to_string(labels.size()) + " exceeds 63 bits");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] > 1) throw ContractViolation("labels must be 0 or 1");
      bits |= std::uint64_t{labels[i]} << i;
    }
    return Labeling(bits, static_cast<unsigned>(labels.size()));
  }

  constexpr std::uint64_t word() const noexcept { return bits_; }
  constexpr unsigned size() const noexcept { return n_; }
  constexpr Label operator[](unsigned i) const noexcept {
    return static_cast<Label>((bits_ >> i) & 1u);
  }

  Labeling flipped(unsigned i) const {
    if (i >= n_) throw OutOfRange("flip index outside labeling");
    return Labeling(bits_ ^ (std::uint64_t{1} << i), n_);
  }

  std::vector<Label> labels() const {
    std::vector<Label> out(n_);
    for (unsigned i = 0; i < n_; ++i) out[i] = (*this)[i];
    return out;
  }

  friend constexpr bool operator==(const Labeling&, const Labeling&) = default;

private:
  constexpr Labeling(std::uint64_t bits, unsigned n) : bits_(bits), n_(n) {}

  std::uint64_t bits_ = 0;
  unsigned n_ = 0;
};

inline Labeling labeling_from_word(std::uint64_t bits, unsigned n) {
  return Labeling::from_word(bits, n);
}

// ---------------------------------------------------------------------------
// Evaluation on A
// ---------------------------------------------------------------------------

struct EvalResult {
  double mu = 0.0;
  std::size_t correct_count = 0;
  std::size_t m = 0;

  std::size_t error_count() const noexcept { return m - correct_count; }
};

inline double mu_from_errors(std::size_t errors, std::size_t m) {
  return static_cast<double>(errors) / static_cast<double>(m);
}

/// 0-1 error of `predictions` against the labels of A.
inline EvalResult evaluate_mu(std::span<const Label> predictions, const TrustedSet& trusted) {
  if (predictions.size() != trusted.size())
    throw ContractViolation("evaluate_mu: " + std::to_string(predictions.size()) +
                            " predictions for a trusted set of size " +
                            std::to_string(trusted.size()));
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i)
    if (predictions[i] == trusted[i].y) ++correct;
  const std::size_t m = trusted.size();
  return EvalResult{mu_from_errors(m - correct, m), correct, m};
}

// ---------------------------------------------------------------------------
// Search results
// ---------------------------------------------------------------------------

inline constexpr std::size_t kArgminCap = 1024;

struct SearchOutcome {
  double best_mu = 1.0;
  std::size_t best_errors = 0;
  /// Up to kArgminCap smallest words attaining best_mu, ascending.
  std::vector<std::uint64_t> argmin;
  /// Exact number of labelings attaining best_mu among those evaluated.
  std::uint64_t optimum_count = 0;
  std::uint64_t evaluations = 0;
  Seconds elapsed{0.0};
  Seconds mean_eval_time{0.0};
};

} // namespace labelsearch
