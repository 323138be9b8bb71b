#pragma once

// Analytical runtimes for exhaustive label search under hardware speedups,
// Grover-style query counts, and the supervision cost ledger.
//
// Durations are real-valued seconds. Every 2^k factor is applied with ldexp,
// which is exact in binary floating point for the exponents used here.

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "labelsearch/core.hpp"

namespace labelsearch::cost {

/// 2^n * t_c.
inline double classical_runtime(unsigned n, double t_c) {
  if (!(t_c > 0.0)) throw DomainError("per-cycle time t_c must be positive");
  return std::ldexp(t_c, static_cast<int>(n));
}

/// (2^n / L) * t_c for a speedup L = t_c / t_q >= 1.
inline double accelerated_runtime(unsigned n, double t_c, double speedup) {
  if (!(speedup >= 1.0) || !std::isfinite(speedup))
    throw DomainError("speedup L must be a finite value >= 1");
  return classical_runtime(n, t_c) / speedup;
}

enum class RegimeKind { Constant, Polynomial, Exponential };

/// How the speedup L grows with n: constant L0, polynomial n^alpha, or exponential 2^(beta n).
class SpeedupRegime {
public:
  static SpeedupRegime constant(double factor) {
    if (!(factor >= 1.0) || !std::isfinite(factor))
      throw DomainError("constant speedup L0 must be a finite value >= 1");
    return SpeedupRegime(RegimeKind::Constant, factor);
  }
  static SpeedupRegime polynomial(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw DomainError("polynomial speedup exponent alpha must be > 0");
    return SpeedupRegime(RegimeKind::Polynomial, alpha);
  }
  static SpeedupRegime exponential(double beta) {
    if (!(beta > 0.0 && beta <= 1.0))
      throw DomainError("exponential speedup rate beta must lie in (0, 1]");
    return SpeedupRegime(RegimeKind::Exponential, beta);
  }

  /// Parses "const:4", "poly:2" or "exp:0.5".
  static SpeedupRegime parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
      throw DomainError("regime must look like kind:value, got '" + std::string(text) + "'");
    const std::string kind(text.substr(0, colon));
    const std::string value_text(text.substr(colon + 1));
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(value_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value_text.size())
      throw DomainError("regime parameter '" + value_text + "' is not a number");
    if (kind == "const" || kind == "constant") return constant(value);
    if (kind == "poly" || kind == "polynomial") return polynomial(value);
    if (kind == "exp" || kind == "exponential") return exponential(value);
    throw DomainError("unknown regime kind '" + kind + "'");
  }

  RegimeKind kind() const noexcept { return kind_; }
  /// L0, alpha or beta depending on kind().
  double parameter() const noexcept { return parameter_; }

  std::string to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << (kind_ == RegimeKind::Constant ? "const:" : kind_ == RegimeKind::Polynomial ? "poly:" : "exp:")
       << parameter_;
    return os.str();
  }

private:
  SpeedupRegime(RegimeKind kind, double p) : kind_(kind), parameter_(p) {}

  RegimeKind kind_;
  double parameter_;
};

inline double regime_runtime(unsigned n, double t_c, const SpeedupRegime& regime) {
  switch (regime.kind()) {
    case RegimeKind::Constant:
      return classical_runtime(n, t_c) / regime.parameter();
    case RegimeKind::Polynomial:
      if (n == 0) throw DomainError("polynomial speedup n^alpha is undefined at n = 0");
      return classical_runtime(n, t_c) / std::pow(static_cast<double>(n), regime.parameter());
    case RegimeKind::Exponential: {
      if (!(t_c > 0.0)) throw DomainError("per-cycle time t_c must be positive");
      // 2^((1-beta) n) = 2^(n - beta n); split the exponent so integer n stays exact.
      return std::ldexp(t_c * std::exp2(-regime.parameter() * n), static_cast<int>(n));
    }
  }
  return 0.0;
}

/// Leading-order Grover query count 2^(n/2) over N = 2^n candidates.
inline double grover_queries(unsigned n) {
  const double base = std::ldexp(1.0, static_cast<int>(n / 2));
  return (n % 2 == 0) ? base : base * std::sqrt(2.0);
}

// ---------------------------------------------------------------------------
// Supervision cost ledger
// ---------------------------------------------------------------------------

struct CostLedger {
  double label = 0.0;
  double curate = 0.0;
  double compute = 0.0;
  double latency = 0.0;
  double risk = 0.0;

  void validate() const {
    for (double v : {label, curate, compute, latency, risk})
      if (!(v >= 0.0) || !std::isfinite(v))
        throw DomainError("ledger components must be finite and nonnegative");
  }
};

inline double ledger_total(const CostLedger& ledger) {
  ledger.validate();
  return ledger.label + ledger.curate + ledger.compute + ledger.latency + ledger.risk;
}

/// Quality per unit of supervision cost.
inline double perf_per_cost(double quality, const CostLedger& ledger) {
  if (!(quality >= 0.0)) throw DomainError("quality must be nonnegative");
  const double total = ledger_total(ledger);
  if (total <= 0.0) throw DomainError("performance per cost is undefined for zero total cost");
  return quality / total;
}

// ---------------------------------------------------------------------------
// Scaling tables
// ---------------------------------------------------------------------------

struct ScalingRow {
  unsigned n = 0;
  double classical = 0.0;
  std::optional<double> constant;
  std::optional<double> polynomial;
  std::optional<double> exponential;
  double grover = 0.0;
};

inline constexpr std::string_view kScalingCsvHeader =
    "n,T_classical,T_const,T_poly,T_exp,grover_queries";

/// One row per n. A regime column is empty when that regime was not requested
/// or is undefined at n (polynomial at n = 0). At most one regime per kind.
inline std::vector<ScalingRow> scaling_table(const std::vector<unsigned>& n_values, double t_c,
                                             const std::vector<SpeedupRegime>& regimes) {
  if (n_values.empty()) throw DomainError("scaling table needs at least one n");
  for (std::size_t i = 1; i < n_values.size(); ++i)
    if (n_values[i] <= n_values[i - 1]) throw DomainError("n values must be strictly ascending");
  std::optional<SpeedupRegime> by_kind[3];
  for (const auto& r : regimes) {
    auto& slot = by_kind[static_cast<int>(r.kind())];
    if (slot) throw DomainError("scaling table accepts one regime per kind");
    slot = r;
  }

  std::vector<ScalingRow> rows;
  rows.reserve(n_values.size());
  for (unsigned n : n_values) {
    ScalingRow row;
    row.n = n;
    row.classical = classical_runtime(n, t_c);
    if (by_kind[0]) row.constant = regime_runtime(n, t_c, *by_kind[0]);
    if (by_kind[1] && n > 0) row.polynomial = regime_runtime(n, t_c, *by_kind[1]);
    if (by_kind[2]) row.exponential = regime_runtime(n, t_c, *by_kind[2]);
    row.grover = grover_queries(n);
    rows.push_back(row);
  }
  return rows;
}

inline void write_scaling_csv(std::ostream& os, const std::vector<ScalingRow>& rows) {
  const auto cell = [&os](const std::optional<double>& v) {
    if (v) os << *v;
  };
  const auto old_precision = os.precision(17);
  os << kScalingCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << r.classical << ',';
    cell(r.constant);
    os << ',';
    cell(r.polynomial);
    os << ',';
    cell(r.exponential);
    os << ',' << r.grover << '\n';
  }
  os.precision(old_precision);
}

} // namespace labelsearch::cost
