#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "termcut/axioms.hpp"
#include "termcut/concentration.hpp"
#include "termcut/error.hpp"

using namespace termcut;

namespace {

RankedTermList ranking(std::string id, const std::vector<double>& weights) {
  RankedTermList r{std::move(id), Measure::TF, {}, false};
  for (std::size_t i = 0; i < weights.size(); ++i)
    r.entries.push_back({"t" + std::to_string(100 + i), weights[i]});
  return r;
}

}  // namespace

TEST(Cv, Oracles) {
  EXPECT_EQ(coefficient_of_variation(std::vector<double>{3, 3, 3, 3}), 0.0);
  EXPECT_DOUBLE_EQ(coefficient_of_variation(std::vector<double>{1, 0, 0, 0}), 1.7320508075688772);
  EXPECT_DOUBLE_EQ(coefficient_of_variation(std::vector<double>{2, 1}), 1.0 / 3.0);
  EXPECT_THROW(coefficient_of_variation({}), Error);
}

TEST(Cv, ScaleInvariant) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const auto v = axioms::random_weight_vector(rng);
    const double k = std::pow(10.0, std::uniform_real_distribution<double>(-3, 3)(rng));
    EXPECT_NEAR(coefficient_of_variation(axioms::scale(v, k)), coefficient_of_variation(v), 1e-12);
  }
}

TEST(Curve, UniformIsSquareRoot) {
  const auto c = concentration_curve(ranking("d", std::vector<double>(8, 2.0)));
  ASSERT_EQ(c.points.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_DOUBLE_EQ(c.points[i].fraction, (i + 1) / 8.0);
    EXPECT_NEAR(c.points[i].similarity, std::sqrt((i + 1) / 8.0), 1e-15);
  }
}

TEST(Curve, SingleTermAndExample) {
  const auto one = concentration_curve(ranking("d", {0.7}));
  ASSERT_EQ(one.points.size(), 1u);
  EXPECT_EQ(one.points[0].fraction, 1.0);
  EXPECT_EQ(one.points[0].similarity, 1.0);

  const auto ex = concentration_curve(ranking("d", {14, 13, 12, 7, 6, 5, 5, 5, 5, 1}));
  EXPECT_DOUBLE_EQ(ex.points[2].fraction, 0.3);
  EXPECT_DOUBLE_EQ(ex.points[2].similarity, 0.8557885841254395);
  EXPECT_EQ(ex.points.back().fraction, 1.0);
  EXPECT_EQ(ex.points.back().similarity, 1.0);
}

TEST(Curve, DominanceImpliesSmallerSelectedFraction) {
  std::mt19937_64 rng(17);
  std::size_t checked = 0;
  for (int t = 0; t < 400 && checked < 50; ++t) {
    const auto a = axioms::random_weight_vector(rng, 5, 60);
    const auto b = axioms::random_weight_vector(rng, a.size(), a.size());
    const auto ca = concentration_curve(ranking("a", a));
    const auto cb = concentration_curve(ranking("b", b));
    bool dominates = true;
    for (std::size_t i = 0; i < a.size(); ++i)
      dominates = dominates && ca.points[i].similarity >= cb.points[i].similarity;
    if (!dominates) continue;
    ++checked;
    for (const double per : {50.0, 70.0, 82.0, 90.0, 95.0, 99.0})
      EXPECT_LE(cutoff_sc(a, per), cutoff_sc(b, per));
  }
  EXPECT_GT(checked, 0u);
}

TEST(Histogram, Binning) {
  // CV 0 and CV sqrt(3) ~ 1.73 in width-1 bins.
  const auto bins = cv_histogram({ranking("a", {2, 2}), ranking("b", {1, 1e-300, 1e-300, 1e-300})}, 1.0);
  ASSERT_EQ(bins.size(), 2u);
  EXPECT_EQ(bins[0].fraction, 0.5);
  EXPECT_EQ(bins[1].lo, 1.0);
  EXPECT_EQ(bins[1].fraction, 0.5);

  const auto single = cv_histogram({ranking("a", {3, 1})}, 0.25);
  double total = 0;
  for (const auto& b : single) total += b.fraction;
  EXPECT_EQ(total, 1.0);
}

TEST(Histogram, SkipsEmptyRankings) {
  const auto bins = cv_histogram({ranking("a", {2, 2}), ranking("b", {})}, 1.0);
  ASSERT_EQ(bins.size(), 1u);
  EXPECT_EQ(bins[0].fraction, 1.0);
}

TEST(CutoffTable, MeanAndDeviation) {
  const std::vector<double> ex = {14, 13, 12, 7, 6, 5, 5, 5, 5, 1};
  // SC(82) cutoffs 3 and 5.
  const auto t = cutoff_vs_size_table({ranking("a", ex), ranking("b", std::vector<double>(7, 1.0))},
                                      {82});
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].cutoffs[0], 3u);
  EXPECT_EQ(t.rows[1].cutoffs[0], 5u);
  EXPECT_DOUBLE_EQ(t.mean[0], 4.0);
  EXPECT_DOUBLE_EQ(t.stddev[0], 1.0);

  const auto same = cutoff_vs_size_table({ranking("a", ex), ranking("b", ex)}, {70, 100});
  EXPECT_EQ(same.stddev, (std::vector<double>{0.0, 0.0}));
  const auto full = cutoff_vs_size_table({ranking("u", std::vector<double>(6, 2.0))}, {100});
  EXPECT_EQ(full.rows[0].cutoffs[0], 6u);
}

TEST(Csv, CurveEndsAtOneOne) {
  std::ostringstream out;
  write_curves_csv(out, {concentration_curve(ranking("d", {3, 2, 1}))});
  const auto s = out.str();
  EXPECT_EQ(s.substr(0, 26), "doc_id,fraction,similarity");
  EXPECT_NE(s.find("d,1,1\n"), std::string::npos);
  EXPECT_EQ(s.substr(s.size() - 6), "d,1,1\n");
}
