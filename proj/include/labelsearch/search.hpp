#pragma once

// Exhaustive and heuristic search over the 2^n labelings of the pool.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_set>
#include <vector>

#include "labelsearch/core.hpp"
#include "labelsearch/gray.hpp"
#include "labelsearch/learners.hpp"

namespace labelsearch {

inline constexpr unsigned kDefaultExhaustiveCap = 24;
inline constexpr unsigned kHardExhaustiveCap = 32;

struct SearchLimits {
  /// Largest n the exhaustive searcher accepts; may be raised up to 32.
  unsigned max_n = kDefaultExhaustiveCap;
};

inline unsigned default_worker_count() {
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

inline void check_exhaustive_cap(std::size_t n, const SearchLimits& limits) {
  if (limits.max_n > kHardExhaustiveCap)
    throw ContractViolation("exhaustive cap may not exceed " + std::to_string(kHardExhaustiveCap));
  if (n > limits.max_n)
    throw CapExceeded("exhaustive search refused: n=" + std::to_string(n) +
                      " exceeds the exhaustive cap of " + std::to_string(limits.max_n));
}

/// Minimum error count, exact count of words reaching it, and the smallest
/// kArgminCap of those words. Merging is associative and commutative.
class OptimumTracker {
public:
  void offer(std::size_t errors, std::uint64_t word) {
    if (errors > best_errors_) return;
    if (errors < best_errors_) {
      best_errors_ = errors;
      count_ = 0;
      smallest_ = {};
    }
    ++count_;
    keep(word);
  }

  void merge(OptimumTracker other) {
    if (other.best_errors_ > best_errors_) return;
    if (other.best_errors_ < best_errors_) {
      *this = std::move(other);
      return;
    }
    count_ += other.count_;
    while (!other.smallest_.empty()) {
      keep(other.smallest_.top());
      other.smallest_.pop();
    }
  }

  std::size_t best_errors() const noexcept { return best_errors_; }
  std::uint64_t count() const noexcept { return count_; }

  std::vector<std::uint64_t> sorted_words() const {
    auto heap = smallest_;
    std::vector<std::uint64_t> out;
    out.reserve(heap.size());
    for (; !heap.empty(); heap.pop()) out.push_back(heap.top());
    std::reverse(out.begin(), out.end());
    return out;
  }

private:
  void keep(std::uint64_t word) {
    if (smallest_.size() < kArgminCap) {
      smallest_.push(word);
    } else if (word < smallest_.top()) {
      smallest_.pop();
      smallest_.push(word);
    }
  }

  std::size_t best_errors_ = std::numeric_limits<std::size_t>::max();
  std::uint64_t count_ = 0;
  std::priority_queue<std::uint64_t> smallest_;  // max-heap of the kept words
};

inline std::vector<Label> word_labels(std::uint64_t word, std::size_t n) {
  std::vector<Label> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Label>((word >> i) & 1u);
  return out;
}

/// Gray sweep of the subcube whose top bits equal `prefix` and whose low
/// `low_bits` bits range freely.
inline void sweep_subcube(const Task& task, LearnerKind kind, std::uint64_t prefix,
                          unsigned low_bits, OptimumTracker& tracker) {
  const std::uint64_t base = prefix << low_bits;
  IncrementalEvaluator eval(task.pool, task.trusted, kind, word_labels(base, task.n()));
  GrayCursor cursor{0, 0, low_bits};
  tracker.offer(eval.errors(), base);
  while (!cursor.done()) {
    eval.flip(cursor.advance());
    tracker.offer(eval.errors(), base | cursor.word);
  }
}

inline SearchOutcome make_outcome(const OptimumTracker& tracker, std::size_t m,
                                  std::uint64_t evaluations, Seconds elapsed) {
  SearchOutcome out;
  out.best_errors = tracker.best_errors();
  out.best_mu = mu_from_errors(out.best_errors, m);
  out.argmin = tracker.sorted_words();
  out.optimum_count = tracker.count();
  out.evaluations = evaluations;
  out.elapsed = elapsed;
  out.mean_eval_time = elapsed / static_cast<double>(std::max<std::uint64_t>(evaluations, 1));
  return out;
}

} // namespace detail

/// Global minimum of mu over all 2^n labelings.
///
/// The top ceil(log2 workers) bits split the cube into subcubes; each is swept
/// in Gray order from a fresh fit at its first word. Results do not depend on
/// the worker count or on scheduling.
inline SearchOutcome exhaustive_search(const Task& task, LearnerKind kind, unsigned workers = 1,
                                       SearchLimits limits = {}) {
  task.validate();
  detail::check_exhaustive_cap(task.n(), limits);
  const auto n = static_cast<unsigned>(task.n());
  workers = std::max(1u, workers);

  const unsigned prefix_bits = std::min(n, static_cast<unsigned>(std::bit_width(workers - 1u)));
  const unsigned low_bits = n - prefix_bits;
  const std::uint64_t subcubes = std::uint64_t{1} << prefix_bits;

  const auto start = std::chrono::steady_clock::now();
  detail::OptimumTracker total;
  if (workers == 1 || subcubes == 1) {
    for (std::uint64_t p = 0; p < subcubes; ++p) detail::sweep_subcube(task, kind, p, low_bits, total);
  } else {
    const auto threads = static_cast<unsigned>(std::min<std::uint64_t>(workers, subcubes));
    std::vector<detail::OptimumTracker> partial(threads);
    std::atomic<std::uint64_t> next{0};
    {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          for (std::uint64_t p = next.fetch_add(1, std::memory_order_relaxed); p < subcubes;
               p = next.fetch_add(1, std::memory_order_relaxed))
            detail::sweep_subcube(task, kind, p, low_bits, partial[t]);
        });
      }
    }
    for (auto& part : partial) total.merge(std::move(part));
  }
  const Seconds elapsed = std::chrono::steady_clock::now() - start;
  return detail::make_outcome(total, task.m(), std::uint64_t{1} << n, elapsed);
}

// ---------------------------------------------------------------------------
// Heuristics
// ---------------------------------------------------------------------------

enum class HeuristicKind { Random, GreedyFlip, Anneal };

inline std::string_view to_string(HeuristicKind kind) {
  switch (kind) {
    case HeuristicKind::Random: return "random";
    case HeuristicKind::GreedyFlip: return "greedy";
    case HeuristicKind::Anneal: return "anneal";
  }
  return "?";
}

inline HeuristicKind parse_heuristic_kind(std::string_view name) {
  if (name == "random") return HeuristicKind::Random;
  if (name == "greedy" || name == "greedy-flip") return HeuristicKind::GreedyFlip;
  if (name == "anneal") return HeuristicKind::Anneal;
  throw ContractViolation("unknown heuristic kind '" + std::string(name) + "'");
}

struct HeuristicConfig {
  HeuristicKind kind = HeuristicKind::GreedyFlip;
  std::uint64_t budget = 1000;
  /// Additional climbs (greedy) or chains (anneal) after the first.
  unsigned restarts = 0;
  double initial_temperature = 2.0;
  double cooling = 0.995;
  std::uint64_t rng_seed = 0;
  /// Random search only: draw distinct labelings. With budget >= 2^n this
  /// enumerates the whole space.
  bool without_replacement = false;

  void validate() const {
    if (budget < 1) throw ContractViolation("heuristic budget must be >= 1");
    if (!(cooling > 0.0 && cooling < 1.0))
      throw ContractViolation("cooling factor must lie in (0, 1)");
    if (!(initial_temperature > 0.0))
      throw ContractViolation("initial temperature must be positive");
  }
};

namespace detail {

/// Best error count seen and every distinct word attaining it.
class DistinctOptima {
public:
  void offer(std::size_t errors, std::uint64_t word) {
    if (errors > best_) return;
    if (errors < best_) {
      best_ = errors;
      words_.clear();
    }
    words_.insert(word);
  }

  SearchOutcome outcome(std::size_t m, std::uint64_t evaluations, Seconds elapsed) const {
    SearchOutcome out;
    out.best_errors = best_;
    out.best_mu = mu_from_errors(best_, m);
    for (auto it = words_.begin(); it != words_.end() && out.argmin.size() < kArgminCap; ++it)
      out.argmin.push_back(*it);
    out.optimum_count = words_.size();
    out.evaluations = evaluations;
    out.elapsed = elapsed;
    out.mean_eval_time = elapsed / static_cast<double>(std::max<std::uint64_t>(evaluations, 1));
    return out;
  }

private:
  std::size_t best_ = std::numeric_limits<std::size_t>::max();
  std::set<std::uint64_t> words_;
};

inline std::uint64_t low_mask(unsigned n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

} // namespace detail

inline SearchOutcome heuristic_search(const Task& task, LearnerKind kind,
                                      const HeuristicConfig& config) {
  task.validate();
  config.validate();
  if (task.n() > kMaxLabelingBits)
    throw CapExceeded("heuristic search works on packed labelings of at most 63 items");

  const auto n = static_cast<unsigned>(task.n());
  const std::uint64_t mask = detail::low_mask(n);
  std::mt19937_64 rng(config.rng_seed);
  std::uniform_int_distribution<std::uint64_t> any_word(0, mask);
  std::uniform_int_distribution<unsigned> any_bit(0, n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const auto start = std::chrono::steady_clock::now();
  IncrementalEvaluator eval(task.pool, task.trusted, kind, std::vector<Label>(n, 0));
  detail::DistinctOptima optima;
  std::uint64_t evals = 0;
  auto record = [&] {
    ++evals;
    optima.offer(eval.errors(), eval.word());
  };

  switch (config.kind) {
    case HeuristicKind::Random: {
      if (!config.without_replacement) {
        for (; evals < config.budget;) {
          eval.jump_to(any_word(rng));
          record();
        }
        break;
      }
      const std::uint64_t space = n >= 63 ? std::numeric_limits<std::uint64_t>::max() : mask + 1;
      const std::uint64_t draws = std::min(config.budget, space);
      if (n <= 26 && draws * 2 >= space) {
        std::vector<std::uint64_t> order(space);
        std::iota(order.begin(), order.end(), std::uint64_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        for (std::uint64_t k = 0; k < draws; ++k) {
          eval.jump_to(order[k]);
          record();
        }
      } else {
        std::unordered_set<std::uint64_t> seen;
        while (evals < draws) {
          const std::uint64_t w = any_word(rng);
          if (!seen.insert(w).second) continue;
          eval.jump_to(w);
          record();
        }
      }
      break;
    }

    case HeuristicKind::GreedyFlip: {
      // First-improvement hill climbing from all-zeros, then from random words.
      std::uint64_t start_word = 0;
      for (unsigned climb = 0; climb <= config.restarts && evals < config.budget; ++climb) {
        eval.jump_to(start_word);
        record();
        std::size_t current = eval.errors();
        bool improved = true;
        while (improved && evals < config.budget) {
          improved = false;
          for (unsigned i = 0; i < n && evals < config.budget; ++i) {
            eval.flip(i);
            record();
            if (eval.errors() < current) {
              current = eval.errors();
              improved = true;
              break;
            }
            eval.flip(i);
          }
        }
        start_word = any_word(rng);
      }
      break;
    }

    case HeuristicKind::Anneal: {
      const std::uint64_t chains = std::uint64_t{config.restarts} + 1;
      for (std::uint64_t c = 0; c < chains && evals < config.budget; ++c) {
        const std::uint64_t share =
            config.budget / chains + (c < config.budget % chains ? 1 : 0);
        const std::uint64_t stop = evals + share;
        eval.jump_to(any_word(rng));
        record();
        auto current = static_cast<long long>(eval.errors());
        double temperature = config.initial_temperature;
        while (evals < stop) {
          const unsigned i = any_bit(rng);
          eval.flip(i);
          record();
          const auto proposed = static_cast<long long>(eval.errors());
          const long long delta = proposed - current;
          const bool accept =
              delta <= 0 || unit(rng) < std::exp(-static_cast<double>(delta) / temperature);
          if (accept)
            current = proposed;
          else
            eval.flip(i);
          temperature *= config.cooling;
        }
      }
      break;
    }
  }

  const Seconds elapsed = std::chrono::steady_clock::now() - start;
  return optima.outcome(task.m(), evals, elapsed);
}

// ---------------------------------------------------------------------------
// Chance of hitting the optimum with a uniform random labeling
// ---------------------------------------------------------------------------

struct ChanceHitResult {
  unsigned n = 0;
  double best_mu = 0.0;
  std::uint64_t k_opt = 0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double empirical_rate = 0.0;
  /// k_opt / 2^n.
  double predicted_rate = 0.0;

  /// Binomial standard deviation of the empirical rate under predicted_rate.
  double standard_error() const {
    const double p = predicted_rate;
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  }
};

inline ChanceHitResult chance_hit_experiment(const Task& task, LearnerKind kind,
                                             std::uint64_t trials, std::uint64_t rng_seed,
                                             unsigned workers = 1, SearchLimits limits = {}) {
  if (trials < 1) throw ContractViolation("chance-hit experiment needs at least one trial");
  const SearchOutcome exhaustive = exhaustive_search(task, kind, workers, limits);
  const auto n = static_cast<unsigned>(task.n());

  ChanceHitResult out;
  out.n = n;
  out.best_mu = exhaustive.best_mu;
  out.k_opt = exhaustive.optimum_count;
  out.trials = trials;
  out.predicted_rate = std::ldexp(static_cast<double>(out.k_opt), -static_cast<int>(n));

  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<std::uint64_t> any_word(0, detail::low_mask(n));
  IncrementalEvaluator eval(task.pool, task.trusted, kind, std::vector<Label>(n, 0));
  for (std::uint64_t t = 0; t < trials; ++t) {
    eval.jump_to(any_word(rng));
    if (eval.errors() == exhaustive.best_errors) ++out.hits;
  }
  out.empirical_rate = static_cast<double>(out.hits) / static_cast<double>(trials);
  return out;
}

} // namespace labelsearch
