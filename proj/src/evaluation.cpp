#include "termcut/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <map>
#include <random>
#include <set>

#include "termcut/error.hpp"
#include "termcut/seed.hpp"

namespace termcut {

void HoldoutConfig::validate() const {
  cutoff.validate();
  bm25.validate();
  if (min_initiatives < 0)
    throw Error(ErrorCode::InvalidArgument, "min_initiatives must be non-negative");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw Error(ErrorCode::InvalidArgument, "train_fraction must lie in (0,1)");
  if (repetitions < 1) throw Error(ErrorCode::InvalidArgument, "repetitions must be >= 1");
  if (ndcg_depth < 1) throw Error(ErrorCode::InvalidArgument, "ndcg depth must be >= 1");
}

std::pair<std::vector<std::string>, std::vector<std::string>> split_initiatives(
    std::vector<std::string> initiatives, double train_fraction, std::uint64_t seed) {
  if (initiatives.size() < 2)
    throw Error(ErrorCode::InsufficientData, "a holdout split needs at least two initiatives");
  std::sort(initiatives.begin(), initiatives.end());
  std::mt19937_64 rng(seed);
  std::shuffle(initiatives.begin(), initiatives.end(), rng);
  const auto total = initiatives.size();
  auto n_train = static_cast<std::size_t>(std::round(train_fraction * static_cast<double>(total)));
  n_train = std::clamp<std::size_t>(n_train, 1, total - 1);
  std::vector<std::string> train(initiatives.begin(),
                                 initiatives.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<std::string> test(initiatives.begin() + static_cast<std::ptrdiff_t>(n_train),
                                initiatives.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

namespace {

struct InitiativeQuery {
  TermFreqs terms;
  std::set<std::string> participants;
};

double population_stddev(const std::vector<double>& values, double mean) {
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  return values.empty() ? 0.0 : std::sqrt(ss / static_cast<double>(values.size()));
}

}  // namespace

EvaluationReport holdout_evaluate(const std::vector<RawRecord>& records,
                                  const StopwordSet& stopwords, const HoldoutConfig& config) {
  config.validate();
  const auto kept = filter_speaker_records(records, config.min_initiatives);

  std::map<std::string, InitiativeQuery> by_initiative;
  for (const auto& r : kept) {
    if (r.initiative_id.empty()) continue;
    auto& q = by_initiative[r.initiative_id];
    q.participants.insert(r.speaker_id);
    for (auto& token : tokenize(r.text, stopwords)) ++q.terms[std::move(token)];
  }
  if (by_initiative.size() < 2)
    throw Error(ErrorCode::InsufficientData,
                "fewer than two initiatives remain after speaker filtering");
  std::vector<std::string> initiatives;
  for (const auto& [id, q] : by_initiative) initiatives.push_back(id);

  EvaluationReport report;
  report.config = config;
  std::vector<double> means;
  for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
    auto [train, test] =
        split_initiatives(initiatives, config.train_fraction, derive_seed(config.seed, rep));
    const std::set<std::string> train_set(train.begin(), train.end());

    // Records outside any initiative carry no query, so they always train.
    std::vector<RawRecord> train_records;
    for (const auto& r : kept)
      if (r.initiative_id.empty() || train_set.contains(r.initiative_id)) train_records.push_back(r);

    const auto collection = build_collection(train_records, config.mode, stopwords);
    if (collection.documents.size() < 2)
      throw Error(ErrorCode::InsufficientData, "training share yields fewer than two documents");
    const auto rankings = rank_collection(collection, config.measure);
    const auto profiles = build_profiles(rankings, config.cutoff);

    std::vector<VirtualDocument> vdocs;
    vdocs.reserve(profiles.size());
    double selected = 0.0;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      vdocs.push_back(make_virtual_document(profiles[i], collection.documents[i]));
      selected += static_cast<double>(profiles[i].l());
    }
    const auto index = index_profiles(vdocs);

    std::vector<QueryDoc> queries;
    queries.reserve(test.size());
    for (const auto& id : test) queries.push_back({id, by_initiative.at(id).terms});
    const auto rankings_per_query = query_batch(index, queries, config.query_depth, config.bm25);

    RepetitionResult result;
    result.repetition = rep;
    result.train_initiatives = train.size();
    result.test_initiatives = test.size();
    result.profiles = profiles.size();
    result.mean_profile_size = profiles.empty() ? 0.0 : selected / static_cast<double>(profiles.size());
    double sum = 0.0;
    for (std::size_t q = 0; q < queries.size(); ++q) {
      const auto& relevant = by_initiative.at(queries[q].query_id).participants;
      const double ndcg =
          ndcg_at_k(fuse_subprofiles(rankings_per_query[q]), relevant, config.ndcg_depth);
      result.queries.push_back({queries[q].query_id, relevant.size(), ndcg});
      sum += ndcg;
    }
    result.mean_ndcg = sum / static_cast<double>(queries.size());
    means.push_back(result.mean_ndcg);
    report.repetitions.push_back(std::move(result));
  }

  double total = 0.0;
  for (const double m : means) total += m;
  report.grand_mean = total / static_cast<double>(means.size());
  report.grand_stddev = population_stddev(means, report.grand_mean);
  return report;
}

void write_report_json(std::ostream& out, const EvaluationReport& report) {
  using nlohmann::ordered_json;
  const auto& c = report.config;
  const ordered_json config = {{"mode", to_string(c.mode)},
                               {"measure", to_string(c.measure)},
                               {"cutoff", to_string(c.cutoff.kind)},
                               {"param", c.cutoff.param},
                               {"bm25", {{"k1", c.bm25.k1}, {"b", c.bm25.b}}},
                               {"min_initiatives", c.min_initiatives},
                               {"train_fraction", c.train_fraction},
                               {"repetitions", c.repetitions},
                               {"seed", c.seed},
                               {"query_depth", c.query_depth},
                               {"ndcg_depth", c.ndcg_depth}};
  ordered_json reps = ordered_json::array();
  for (const auto& r : report.repetitions) {
    ordered_json queries = ordered_json::array();
    for (const auto& q : r.queries)
      queries.push_back({{"query_id", q.query_id}, {"relevant", q.relevant}, {"ndcg", q.ndcg}});
    reps.push_back({{"repetition", r.repetition},
                    {"train_initiatives", r.train_initiatives},
                    {"test_initiatives", r.test_initiatives},
                    {"profiles", r.profiles},
                    {"mean_profile_size", r.mean_profile_size},
                    {"mean_ndcg", r.mean_ndcg},
                    {"queries", queries}});
  }
  const ordered_json j = {{"config", config},
                          {"grand_mean", report.grand_mean},
                          {"grand_stddev", report.grand_stddev},
                          {"repetitions", reps}};
  out << j.dump(2) << '\n';
}

void write_report_csv(std::ostream& out, const EvaluationReport& report) {
  out << "repetition,query_id,ndcg10\n";
  char buf[64];
  for (const auto& r : report.repetitions) {
    for (const auto& q : r.queries) {
      std::snprintf(buf, sizeof buf, "%.12g", q.ndcg);
      out << r.repetition << ',' << q.query_id << ',' << buf << '\n';
    }
  }
}

}  // namespace termcut
