#pragma once

// Binary-reflected Gray code enumeration of n-bit labelings.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>

#include "labelsearch/core.hpp"

namespace labelsearch {

inline constexpr unsigned kMaxGrayBits = 32;

/// Position in a reflected Gray sweep: word == step ^ (step >> 1).
struct GrayCursor {
  std::uint64_t step = 0;
  std::uint64_t word = 0;
  unsigned n = 0;

  /// Moves to the next word and returns the index of the bit that changed.
  unsigned advance() noexcept {
    ++step;
    const auto bit = static_cast<unsigned>(std::countr_zero(step));
    word ^= std::uint64_t{1} << bit;
    return bit;
  }

  std::uint64_t length() const noexcept { return std::uint64_t{1} << n; }
  bool done() const noexcept { return step + 1 >= length(); }
};

constexpr std::uint64_t gray_encode(std::uint64_t step) noexcept { return step ^ (step >> 1); }

struct GrayStep {
  /// Bit flipped to reach this labeling; empty for the all-zero start.
  std::optional<unsigned> flipped;
  Labeling labeling;
};

/// Range over all 2^n labelings in Gray order, starting at all-zeros.
class GraySequence {
public:
  explicit GraySequence(unsigned n) : n_(n) {
    if (n < 1 || n > kMaxGrayBits)
      throw OutOfRange("gray_sequence: n=" + std::to_string(n) + " outside [1, 32]");
  }

  class iterator {
  public:
    using value_type = GrayStep;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    explicit iterator(unsigned n) : cursor_{0, 0, n} {}

    GrayStep operator*() const {
      return GrayStep{last_flip_, Labeling::from_word(cursor_.word, cursor_.n)};
    }
    iterator& operator++() {
      last_flip_ = cursor_.advance();
      return *this;
    }
    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& it, std::default_sentinel_t) {
      return it.cursor_.step >= it.cursor_.length();
    }

  private:
    GrayCursor cursor_{};
    std::optional<unsigned> last_flip_{};
  };

  iterator begin() const { return iterator(n_); }
  std::default_sentinel_t end() const { return {}; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << n_; }

private:
  unsigned n_;
};

inline GraySequence gray_sequence(unsigned n) { return GraySequence(n); }

} // namespace labelsearch
