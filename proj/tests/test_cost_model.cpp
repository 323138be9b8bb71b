#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "labelsearch/cost_model.hpp"

using namespace labelsearch;
using namespace labelsearch::cost;

namespace {

// Plain textbook least squares, independent of the library's stats helpers.
double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

} // namespace

TEST(ClassicalRuntime, ClosedFormValues) {
  EXPECT_EQ(classical_runtime(0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(classical_runtime(10, 1e-3), 1.024);
  for (unsigned n = 1; n <= 20; ++n)
    EXPECT_EQ(classical_runtime(n + 1, 0.37) / classical_runtime(n, 0.37), 2.0);
  EXPECT_EQ(classical_runtime(63, 1.0), 9223372036854775808.0);
  EXPECT_THROW(classical_runtime(3, 0.0), DomainError);
}

TEST(AcceleratedRuntime, DividesBySpeedup) {
  EXPECT_DOUBLE_EQ(accelerated_runtime(10, 1e-3, 4.0), 0.256);
  EXPECT_EQ(accelerated_runtime(10, 1e-3, 1.0), classical_runtime(10, 1e-3));
  EXPECT_DOUBLE_EQ(accelerated_runtime(20, 1e-3, std::ldexp(1.0, 20)), 1e-3);
  EXPECT_THROW(accelerated_runtime(10, 1e-3, 0.5), DomainError);
}

TEST(AcceleratedRuntime, TimesSpeedupRecoversClassical) {
  for (unsigned n = 0; n <= 63; ++n) {
    for (double L : {1.0, 2.0, 64.0, 1024.0}) {
      EXPECT_EQ(accelerated_runtime(n, 0.001, L) * L, classical_runtime(n, 0.001));
    }
    for (double L : {3.0, 7.5, 1e6}) {
      const double c = classical_runtime(n, 0.001);
      EXPECT_NEAR(accelerated_runtime(n, 0.001, L) * L, c, 4e-16 * c);
    }
  }
}

TEST(RegimeRuntime, ClosedForms) {
  EXPECT_EQ(regime_runtime(16, 1.0, SpeedupRegime::polynomial(2.0)), 256.0);
  for (unsigned n = 0; n <= 63; ++n)
    EXPECT_EQ(regime_runtime(n, 0.5, SpeedupRegime::exponential(1.0)), 0.5);
  EXPECT_EQ(regime_runtime(10, 1.0, SpeedupRegime::constant(4.0)), 256.0);
  const auto half = SpeedupRegime::exponential(0.5);
  for (unsigned n = 0; n < 40; ++n)
    EXPECT_NEAR(regime_runtime(n + 1, 1.0, half) / regime_runtime(n, 1.0, half), std::sqrt(2.0), 1e-12);
  EXPECT_THROW(regime_runtime(0, 1.0, SpeedupRegime::polynomial(1.0)), DomainError);
}

TEST(RegimeRuntime, InvalidRegimesAreRejected) {
  EXPECT_THROW(SpeedupRegime::constant(0.5), DomainError);
  EXPECT_THROW(SpeedupRegime::polynomial(0.0), DomainError);
  EXPECT_THROW(SpeedupRegime::exponential(0.0), DomainError);
  EXPECT_THROW(SpeedupRegime::exponential(1.5), DomainError);
  EXPECT_THROW(SpeedupRegime::parse("linear:2"), DomainError);
  EXPECT_THROW(SpeedupRegime::parse("poly:abc"), DomainError);
  EXPECT_THROW(SpeedupRegime::parse("poly"), DomainError);
  EXPECT_EQ(SpeedupRegime::parse("exp:0.25").parameter(), 0.25);
  EXPECT_EQ(SpeedupRegime::parse("const:4").kind(), RegimeKind::Constant);
}

TEST(GroverQueries, HalfExponent) {
  EXPECT_EQ(grover_queries(10), 32.0);
  EXPECT_EQ(grover_queries(0), 1.0);
  for (unsigned n = 2; n <= 63; ++n)
    EXPECT_NEAR(std::log2(grover_queries(n)) - std::log2(grover_queries(n - 2)), 1.0, 1e-12);
}

TEST(Ledger, TotalsAndRatios) {
  const CostLedger unit{1, 1, 1, 1, 1};
  EXPECT_EQ(ledger_total(unit), 5.0);
  EXPECT_DOUBLE_EQ(perf_per_cost(0.9, unit), 0.18);
  const CostLedger doubled{2, 2, 2, 2, 2};
  EXPECT_DOUBLE_EQ(perf_per_cost(0.9, doubled), perf_per_cost(0.9, unit) / 2);
  EXPECT_THROW(perf_per_cost(0.9, CostLedger{}), DomainError);
  EXPECT_THROW(ledger_total(CostLedger{-1, 0, 0, 0, 0}), DomainError);
}

TEST(ScalingTable, ClassicalColumnAndConstantScaling) {
  const auto rows = scaling_table({1, 2, 3, 4}, 1.0, {SpeedupRegime::constant(4.0)});
  ASSERT_EQ(rows.size(), 4u);
  const double expected[] = {2, 4, 8, 16};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(rows[i].classical, expected[i]);
    EXPECT_EQ(*rows[i].constant, expected[i] / 4.0);
    EXPECT_FALSE(rows[i].polynomial.has_value());
  }
}

TEST(ScalingTable, ExponentialColumnSlope) {
  std::vector<unsigned> ns;
  for (unsigned n = 1; n <= 30; ++n) ns.push_back(n);
  const auto rows = scaling_table(ns, 1e-3, {SpeedupRegime::exponential(0.25)});
  std::vector<double> x, y;
  for (const auto& r : rows) {
    x.push_back(r.n);
    y.push_back(std::log2(*r.exponential));
  }
  EXPECT_NEAR(slope_of(x, y), 0.75, 1e-9);
}

TEST(ScalingTable, CsvLayout) {
  const auto rows = scaling_table({0, 1, 2}, 1.0,
                                  {SpeedupRegime::constant(2.0), SpeedupRegime::polynomial(1.0),
                                   SpeedupRegime::exponential(0.5)});
  std::ostringstream os;
  write_scaling_csv(os, rows);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,T_classical,T_const,T_poly,T_exp,grover_queries");
  std::getline(in, line);
  EXPECT_EQ(line, "0,1,0.5,,1,1");
  std::getline(in, line);
  EXPECT_EQ(line, "1,2,1,2,1.4142135623730951,1.4142135623730951");
}

TEST(ScalingTable, RejectsBadInput) {
  EXPECT_THROW(scaling_table({}, 1.0, {}), DomainError);
  EXPECT_THROW(scaling_table({3, 2}, 1.0, {}), DomainError);
  EXPECT_THROW(scaling_table({1}, 1.0, {SpeedupRegime::constant(2), SpeedupRegime::constant(3)}),
               DomainError);
}
