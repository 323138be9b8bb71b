#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "labelsearch/core.hpp"

using namespace labelsearch;

namespace {

TrustedSet make_trusted(const std::vector<Label>& ys) {
  std::vector<LabeledExample> ex;
  for (std::size_t i = 0; i < ys.size(); ++i) ex.push_back({FeatureVector{double(i)}, ys[i]});
  return TrustedSet(ex);
}

} // namespace

TEST(EvaluateMu, PerfectAgreementIsZero) {
  const auto a = make_trusted({0, 1, 1, 0});
  const std::vector<Label> pred{0, 1, 1, 0};
  const auto r = evaluate_mu(pred, a);
  EXPECT_EQ(r.mu, 0.0);
  EXPECT_EQ(r.correct_count, 4u);
}

TEST(EvaluateMu, TotalDisagreementIsOne) {
  const auto a = make_trusted({0, 1, 1, 0});
  const std::vector<Label> pred{1, 0, 0, 1};
  EXPECT_EQ(evaluate_mu(pred, a).mu, 1.0);
}

TEST(EvaluateMu, OneOfFiveWrong) {
  const auto a = make_trusted({0, 1, 1, 0, 1});
  const std::vector<Label> pred{0, 1, 0, 0, 1};
  const auto r = evaluate_mu(pred, a);
  EXPECT_DOUBLE_EQ(r.mu, 0.2);
  EXPECT_EQ(r.correct_count, 4u);
}

TEST(EvaluateMu, LengthMismatchIsContractViolation) {
  const auto a = make_trusted({0, 1, 1});
  const std::vector<Label> pred{0, 1};
  EXPECT_THROW(evaluate_mu(pred, a), ContractViolation);
}

TEST(EvaluateMu, ValuesAreMultiplesOfOneOverMAndPermutationInvariant) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng() % 17;
    std::vector<Label> ys(m), pred(m);
    for (auto& y : ys) y = rng() & 1;
    for (auto& p : pred) p = rng() & 1;
    const auto r = evaluate_mu(pred, make_trusted(ys));
    EXPECT_EQ(r.mu, double(m - r.correct_count) / double(m));
    EXPECT_DOUBLE_EQ(r.mu, 1.0 - double(r.correct_count) / double(m)) << "m=" << m;

    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Label> ys2(m), pred2(m);
    for (std::size_t i = 0; i < m; ++i) {
      ys2[i] = ys[perm[i]];
      pred2[i] = pred[perm[i]];
    }
    EXPECT_EQ(evaluate_mu(pred2, make_trusted(ys2)).mu, r.mu);
  }
}

TEST(Labeling, FromWordBitPositions) {
  const auto l = labeling_from_word(0b101, 3);
  EXPECT_EQ(l.labels(), (std::vector<Label>{1, 0, 1}));
  EXPECT_EQ(l.word(), 0b101u);
}

TEST(Labeling, ZeroAndSaturatedWords) {
  EXPECT_EQ(labeling_from_word(0, 5).labels(), std::vector<Label>(5, 0));
  EXPECT_EQ(labeling_from_word((1u << 4) - 1, 4).labels(), std::vector<Label>(4, 1));
  EXPECT_EQ(labeling_from_word((std::uint64_t{1} << 63) - 1, 63).size(), 63u);
}

TEST(Labeling, RejectsOutOfRangeWords) {
  EXPECT_THROW(labeling_from_word(8, 3), OutOfRange);
  EXPECT_THROW(labeling_from_word(0, 64), OutOfRange);
  EXPECT_THROW(labeling_from_word(1, 0), OutOfRange);
}

TEST(Labeling, FlipTwiceIsIdentityAndLabelsRoundTrip) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const unsigned n = 1 + rng() % 63;
    const std::uint64_t w = rng() & ((std::uint64_t{1} << n) - 1);
    const auto l = labeling_from_word(w, n);
    const unsigned i = rng() % n;
    EXPECT_NE(l.flipped(i).word(), w);
    EXPECT_EQ(l.flipped(i).flipped(i), l);
    EXPECT_EQ(Labeling::from_labels(l.labels()), l);
  }
}

TEST(DomainTypes, RejectInconsistentData) {
  EXPECT_THROW(FeatureVector(std::vector<double>{}), ContractViolation);
  EXPECT_THROW(FeatureVector({1.0, std::numeric_limits<double>::quiet_NaN()}), ContractViolation);
  EXPECT_THROW(TrustedSet(std::vector<LabeledExample>{}), ContractViolation);
  EXPECT_THROW(TrustedSet({{FeatureVector{1.0}, 0}, {FeatureVector{1.0, 2.0}, 1}}), ContractViolation);
  EXPECT_THROW(TrustedSet({{FeatureVector{1.0}, 2}}), ContractViolation);
  EXPECT_THROW(UnlabeledPool(std::vector<FeatureVector>{}), ContractViolation);

  Task t{TrustedSet({{FeatureVector{1.0}, 0}}), UnlabeledPool({FeatureVector{1.0, 2.0}}), {}, 0};
  EXPECT_THROW(t.validate(), ContractViolation);
  Task u{TrustedSet({{FeatureVector{1.0}, 0}}), UnlabeledPool({FeatureVector{1.0}}),
         std::vector<Label>{0, 1}, 0};
  EXPECT_THROW(u.validate(), ContractViolation);
}

TEST(DomainTypes, SingleClassTrustedSetIsAllowed) {
  EXPECT_NO_THROW(TrustedSet({{FeatureVector{1.0}, 1}, {FeatureVector{2.0}, 1}}));
}
