// Serial reference against OpenMP kernels on the same inputs.

#include <benchmark/benchmark.h>

#include "termcut/axioms.hpp"
#include "termcut/corpus.hpp"
#include "termcut/cutoff.hpp"
#include "termcut/retrieval.hpp"
#include "termcut/synthetic.hpp"
#include "termcut/weighting.hpp"

using namespace termcut;

namespace {

const SourceCollection& collection() {
  static const SourceCollection c = [] {
    SyntheticCorpusSpec spec;
    spec.speakers = 200;
    spec.vocabulary = 400;
    spec.overlap = 0.5;
    spec.tokens_per_record = 120;
    return build_collection(synthetic_corpus(spec), GroupingMode::Initiative, {});
  }();
  return c;
}

const std::vector<RankedTermList>& rankings() {
  static const auto r = rank_collection(collection(), Measure::Diff);
  return r;
}

struct RetrievalFixture {
  InvertedIndex index;
  std::vector<QueryDoc> queries;
};

const RetrievalFixture& retrieval() {
  static const RetrievalFixture f = [] {
    RetrievalFixture out;
    const auto profiles = build_profiles(rankings(), {CutoffKind::SC, 95});
    std::vector<VirtualDocument> docs;
    for (std::size_t i = 0; i < profiles.size(); ++i)
      docs.push_back(make_virtual_document(profiles[i], collection().documents[i]));
    out.index = index_profiles(docs);
    for (std::size_t i = 0; i < collection().documents.size(); i += 4)
      out.queries.push_back({collection().documents[i].doc_id, collection().documents[i].term_freqs});
    return out;
  }();
  return f;
}

void BM_RankCollection_Serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rank_collection_serial(collection(), Measure::Diff));
}
void BM_RankCollection_Parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rank_collection(collection(), Measure::Diff));
}

void BM_BuildProfiles_Serial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(build_profiles_serial(rankings(), {CutoffKind::SC, 95}));
}
void BM_BuildProfiles_Parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_profiles(rankings(), {CutoffKind::SC, 95}));
}

void BM_AxiomSuite_Serial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(axioms::run_axiom_suite_serial(CutoffKind::SC, std::nullopt, 1000, 42));
}
void BM_AxiomSuite_Parallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(axioms::run_axiom_suite(CutoffKind::SC, std::nullopt, 1000, 42));
}

void BM_QueryBatch_Serial(benchmark::State& state) {
  const auto& f = retrieval();
  for (auto _ : state) benchmark::DoNotOptimize(query_batch_serial(f.index, f.queries, 10));
}
void BM_QueryBatch_Parallel(benchmark::State& state) {
  const auto& f = retrieval();
  for (auto _ : state) benchmark::DoNotOptimize(query_batch(f.index, f.queries, 10));
}

}  // namespace

BENCHMARK(BM_RankCollection_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankCollection_Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BuildProfiles_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildProfiles_Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AxiomSuite_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AxiomSuite_Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_QueryBatch_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QueryBatch_Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

int main(int argc, char** argv) {
  // Build the shared inputs up front so no benchmark pays for them.
  retrieval();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
