#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "termcut/corpus.hpp"
#include "termcut/cutoff.hpp"
#include "termcut/retrieval.hpp"
#include "termcut/weighting.hpp"

namespace termcut {

struct HoldoutConfig {
  GroupingMode mode = GroupingMode::Committee;
  Measure measure = Measure::Diff;
  CutoffSpec cutoff{CutoffKind::SC, 95.0};
  Bm25Params bm25;
  std::int64_t min_initiatives = 10;
  double train_fraction = 0.8;
  std::size_t repetitions = 5;
  std::uint64_t seed = 0;
  std::size_t query_depth = 0;  // 0: rank every matching profile
  std::size_t ndcg_depth = 10;

  void validate() const;
};

struct QueryResult {
  std::string query_id;  // the test initiative
  std::size_t relevant = 0;
  double ndcg = 0.0;
};

struct RepetitionResult {
  std::size_t repetition = 0;
  std::size_t train_initiatives = 0;
  std::size_t test_initiatives = 0;
  std::size_t profiles = 0;
  double mean_profile_size = 0.0;
  std::vector<QueryResult> queries;  // sorted by query_id
  double mean_ndcg = 0.0;
};

struct EvaluationReport {
  HoldoutConfig config;
  std::vector<RepetitionResult> repetitions;
  double grand_mean = 0.0;
  double grand_stddev = 0.0;  // population, over repetition means
};

/// Repeated holdout over initiatives: each repetition shuffles the
/// initiatives with a seed derived from (seed, repetition), builds profiles
/// from the training share, and uses each test initiative's full text as a
/// query whose relevant speakers are its participants. Throws
/// InsufficientData when fewer than two initiatives survive speaker filtering.
EvaluationReport holdout_evaluate(const std::vector<RawRecord>& records,
                                  const StopwordSet& stopwords, const HoldoutConfig& config);

/// Splits initiatives for one repetition; the first element is the training
/// share. Both shares are non-empty and sorted.
std::pair<std::vector<std::string>, std::vector<std::string>> split_initiatives(
    std::vector<std::string> initiatives, double train_fraction, std::uint64_t seed);

void write_report_json(std::ostream& out, const EvaluationReport& report);
void write_report_csv(std::ostream& out, const EvaluationReport& report);

}  // namespace termcut
