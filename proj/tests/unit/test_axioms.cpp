#include <gtest/gtest.h>

#include <random>

#include "termcut/axioms.hpp"
#include "termcut/error.hpp"

using namespace termcut;
using namespace termcut::axioms;

namespace {

const WeightVector L2 = {1.0, 0.7, 0.5, 0.3, 0.2, 0.1};
const WeightVector kExample = {14, 13, 12, 7, 6, 5, 5, 5, 5, 1};

void expect_near_vec(const WeightVector& a, const WeightVector& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12) << "at " << i;
}

}  // namespace

TEST(Transformations, AddZeros) {
  EXPECT_EQ(add_zeros({5, 4}, 2), (WeightVector{5, 4, 0, 0}));
  EXPECT_EQ(add_zeros({1}, 0), (WeightVector{1}));
  EXPECT_EQ(add_zeros({}, 3), (WeightVector{0, 0, 0}));
}

TEST(Transformations, Scale) {
  expect_near_vec(scale({10, 7, 5, 3, 2, 1}, 0.1), L2);
  EXPECT_EQ(scale({2}, 3), (WeightVector{6}));
  EXPECT_THROW(scale({2}, 0), Error);
}

TEST(Transformations, Shift) {
  expect_near_vec(shift_all(L2, 1), {2.0, 1.7, 1.5, 1.3, 1.2, 1.1});
  EXPECT_EQ(shift_all({0, 0}, 0.5), (WeightVector{0.5, 0.5}));
  EXPECT_THROW(shift_all({1}, -1), Error);
}

TEST(Transformations, TransferPaperExamples) {
  const auto a = transfer(L2, 3, 4, 0.1);
  expect_near_vec(a.weights, {1.0, 0.7, 0.5, 0.4, 0.1, 0.1});
  EXPECT_EQ(a.receiver_rank, 4u);

  const auto b = transfer(kExample, 3, 8, 4);
  EXPECT_EQ(b.weights, (WeightVector{14, 13, 12, 11, 6, 5, 5, 5, 1, 1}));
  EXPECT_EQ(b.receiver_rank, 4u);

  const auto full = transfer({3, 2, 1}, 0, 2, 1);
  EXPECT_EQ(full.weights, (WeightVector{4, 2, 0}));
}

TEST(Transformations, TransferRejectsInvalid) {
  EXPECT_THROW(transfer({3, 3}, 0, 1, 1), Error);   // not strictly heavier
  EXPECT_THROW(transfer({3, 2}, 0, 1, 2.5), Error); // more than the donor has
  EXPECT_THROW(transfer({3, 2}, 0, 5, 1), Error);
}

TEST(Transformations, EnrichAndImpoverish) {
  EXPECT_EQ(enrich_top({5, 3}, 2), (WeightVector{7, 3}));
  EXPECT_EQ(impoverish_bottom({5, 3}, 3), (WeightVector{5, 0}));
  EXPECT_EQ(enrich_top({1}, 1), (WeightVector{2}));
}

TEST(Transformations, KeepSortedOrder) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const auto v = random_weight_vector(rng);
    for (const auto p : {Property::P6, Property::P7}) {
      const auto params = draw_params(p, v, rng);
      if (!params) continue;
      WeightVector out = p == Property::P6
                             ? transfer(v, params->receiver, params->donor, params->transfer_amount).weights
                             : enrich_top(v, params->top_amount);
      EXPECT_TRUE(std::is_sorted(out.rbegin(), out.rend()));
    }
  }
}

TEST(CheckProperty, FpFailsP3OnFiveFourThree) {
  TransformParams params;
  params.zeros = 2;
  const auto v = check_property(bind_cutoff({CutoffKind::FP, 50}), Property::P3, {5, 4, 3}, params);
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.witness->cutoff_before, 2u);
  EXPECT_EQ(v.witness->cutoff_after, 3u);
  EXPECT_EQ(v.witness->transformed, (WeightVector{5, 4, 3, 0, 0}));
}

TEST(CheckProperty, VtFailsP6OnPaperTransfer) {
  TransformParams params;
  params.receiver = 3;
  params.donor = 4;
  params.transfer_amount = 0.1;
  const auto fn = bind_cutoff({CutoffKind::VT, 40});
  const auto v = check_property(fn, Property::P6, L2, params);
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.witness->cutoff_before, 3u);
  EXPECT_EQ(v.witness->cutoff_after, 4u);
  // Re-feeding the witness reproduces the failure.
  EXPECT_FALSE(check_property(fn, Property::P6, v.witness->input, v.witness->params).holds);
}

TEST(CheckProperty, ScHoldsP4UnderRandomScaling) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    const auto v = random_weight_vector(rng);
    const auto fn = bind_cutoff({CutoffKind::SC, draw_param(CutoffKind::SC, rng)});
    EXPECT_TRUE(check_property(fn, Property::P4, v, *draw_params(Property::P4, v, rng)).holds);
  }
}

// The two-sided weak transfer statement is not a theorem for SC: here the
// receiver lands at rank 2, the cutoff before is 2, yet the cutoff grows.
TEST(CheckProperty, PinnedWeakTransferCounterexampleForSc) {
  TransformParams params;
  params.receiver = 2;
  params.donor = 3;
  params.transfer_amount = 1.01;
  const auto v =
      check_property(bind_cutoff({CutoffKind::SC, 92}), Property::WeakP6, {10, 5, 4, 1.5}, params);
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.witness->receiver_rank, 2u);
  EXPECT_EQ(v.witness->cutoff_before, 2u);
  EXPECT_EQ(v.witness->cutoff_after, 3u);
}

TEST(CheckProperty, ScP1AndP2) {
  const auto fn = bind_cutoff({CutoffKind::SC, 90});
  EXPECT_TRUE(check_property(fn, Property::P1, {3, 0, 0, 0}, TransformParams{}).holds);
  TransformParams params;
  params.rivals = {{4, 0, 0, 0}, {2, 1, 1, 0}};
  EXPECT_TRUE(check_property(fn, Property::P2, {1, 1, 1, 1}, params).holds);
  EXPECT_THROW(check_property(fn, Property::P2, {2, 1, 1, 0}, params), Error);
}

// FN's cutoff is min(m, n), so padding with zeros changes it only while m > n.
TEST(CheckProperty, FnP3DependsOnM) {
  TransformParams params;
  params.zeros = 3;
  const WeightVector v = {4, 3, 2};
  EXPECT_TRUE(check_property(bind_cutoff({CutoffKind::FN, 2}), Property::P3, v, params).holds);
  EXPECT_TRUE(check_property(bind_cutoff({CutoffKind::FN, 3}), Property::P3, v, params).holds);
  EXPECT_FALSE(check_property(bind_cutoff({CutoffKind::FN, 5}), Property::P3, v, params).holds);
}

TEST(CheckProperty, RcUniformVectorSelectsNothing) {
  // Strict '>' against a threshold equal to the common weight.
  const auto fn = bind_cutoff({CutoffKind::RC, 50});
  TransformParams params;
  params.rivals = {{2, 1, 1, 0}};
  const auto v = check_property(fn, Property::P2, {1, 1, 1, 1}, params);
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.witness->cutoff_before, 0u);
}

TEST(CheckProperty, RcImpoverishingBottomCanRaiseCutoff) {
  // Lowering the minimum lowers the range threshold.
  TransformParams params;
  params.top_amount = 0.0;
  params.bottom_amount = 2.0;
  const auto v = check_property(bind_cutoff({CutoffKind::RC, 50}), Property::P7, {10, 7, 6, 2}, params);
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.witness->cutoff_before, 2u);
  EXPECT_EQ(v.witness->cutoff_after, 3u);
}

TEST(Suite, ParallelMatchesSerial) {
  for (const auto kind : {CutoffKind::SC, CutoffKind::VT, CutoffKind::RC, CutoffKind::FP}) {
    const auto a = run_axiom_suite(kind, std::nullopt, 150, 42);
    const auto b = run_axiom_suite_serial(kind, std::nullopt, 150, 42);
    EXPECT_EQ(report_to_json(a, ExpectMode::Table1), report_to_json(b, ExpectMode::Table1));
  }
}

// The spec's own example run. Strict zero for wP6 holds at this seed only;
// other seeds occasionally find a weak-transfer counterexample.
TEST(Suite, ScPattern) {
  const auto r = run_axiom_suite(CutoffKind::SC, std::nullopt, 1000, 42);
  for (const auto p : kAllProperties) {
    if (p == Property::P6)
      EXPECT_GT(r.tallies.at(p).failures(), 0u);
    else
      EXPECT_EQ(r.tallies.at(p).failures(), 0u) << to_string(p);
  }
  EXPECT_TRUE(all_expectations_met(r, ExpectMode::Table1));
  EXPECT_FALSE(all_expectations_met(r, ExpectMode::All));
}

TEST(Suite, VtPattern) {
  const auto r = run_axiom_suite(CutoffKind::VT, std::nullopt, 1000, 42);
  for (const auto p : {Property::P1, Property::P2, Property::P3, Property::P4, Property::P5,
                       Property::P7})
    EXPECT_EQ(r.tallies.at(p).failures(), 0u) << to_string(p);
  EXPECT_GT(r.tallies.at(Property::P6).failures(), 0u);
}

TEST(Suite, FnNeverFailsScaleShiftOrTransfer) {
  const auto r = run_axiom_suite(CutoffKind::FN, std::nullopt, 300, 42);
  for (const auto p : {Property::P2, Property::P4, Property::P5, Property::P6, Property::P7})
    EXPECT_EQ(r.tallies.at(p).failures(), 0u) << to_string(p);
}

TEST(Suite, FirstCounterexampleIsReproducible) {
  const auto r = run_axiom_suite(CutoffKind::VT, std::nullopt, 500, 3);
  const auto& c = r.tallies.at(Property::P6).first_counterexample;
  ASSERT_TRUE(c.has_value());
  EXPECT_FALSE(check_property(bind_cutoff(c->cutoff), Property::P6, c->witness.input,
                              c->witness.params)
                   .holds);
}

TEST(Expectations, Table1Cells) {
  EXPECT_EQ(table1_expectation(CutoffKind::SC, Property::P6), Expectation::Fails);
  EXPECT_EQ(table1_expectation(CutoffKind::SC, Property::WeakP6), Expectation::Holds);
  EXPECT_EQ(table1_expectation(CutoffKind::VT, Property::P6), Expectation::Fails);
  EXPECT_EQ(table1_expectation(CutoffKind::RC, Property::P3), Expectation::Fails);
  EXPECT_EQ(table1_expectation(CutoffKind::FP, Property::P3), Expectation::Fails);
  EXPECT_EQ(table1_expectation(CutoffKind::FP, Property::P1), Expectation::Exempt);
  EXPECT_EQ(expectation(ExpectMode::All, CutoffKind::FP, Property::P3), Expectation::Holds);
}

// The shift and enrichment inequalities hold for every vector. The weak
// transfer implication does not (see the pinned counterexample), so random
// pairs only rarely violate it and the count is not asserted here.
TEST(Appendix, ShiftAndEnrichmentHoldNumerically) {
  const auto r = verify_similarity_proofs(1000, 7);
  EXPECT_EQ(r.pairs, 1000u);
  EXPECT_EQ(r.shift_violations, 0u);
  EXPECT_EQ(r.enrichment_violations, 0u);
  EXPECT_LT(r.weak_transfer_violations, 20u);
}

TEST(Properties, ParseAndPrint) {
  EXPECT_EQ(parse_property("wP6"), Property::WeakP6);
  EXPECT_STREQ(to_string(Property::P7), "P7");
  EXPECT_THROW(parse_property("P8"), Error);
}
