#include "termcut/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>

#include "termcut/error.hpp"

namespace termcut {

Measure parse_measure(std::string_view name) {
  if (name == "tf") return Measure::TF;
  if (name == "tfidf") return Measure::TFIDF;
  if (name == "ppmi") return Measure::PPMI;
  if (name == "diff") return Measure::Diff;
  throw Error(ErrorCode::InvalidArgument, "unknown measure '" + std::string(name) + "'");
}

const char* to_string(Measure measure) noexcept {
  switch (measure) {
    case Measure::TF: return "tf";
    case Measure::TFIDF: return "tfidf";
    case Measure::PPMI: return "ppmi";
    case Measure::Diff: return "diff";
  }
  return "unknown";
}

std::vector<double> RankedTermList::weights() const {
  std::vector<double> w;
  w.reserve(entries.size());
  for (const auto& e : entries) w.push_back(e.weight);
  return w;
}

namespace {

std::int64_t require_frequency(std::string_view term, const TokenizedDocument& doc) {
  const auto f = doc.frequency(term);
  if (f <= 0)
    throw Error(ErrorCode::TermAbsent,
                "term '" + std::string(term) + "' not in document " + doc.doc_id);
  return f;
}

std::int64_t lookup(const TermFreqs& map, std::string_view term) {
  const auto it = map.find(term);
  return it == map.end() ? 0 : it->second;
}

}  // namespace

double tf(std::string_view term, const TokenizedDocument& doc) {
  return static_cast<double>(require_frequency(term, doc));
}

double tfidf(std::string_view term, const TokenizedDocument& doc, const CollectionStats& stats,
             double log_base) {
  const auto f = require_frequency(term, doc);
  const auto df = lookup(stats.doc_freq, term);
  if (df <= 0 || df > stats.num_documents)
    throw Error(ErrorCode::InvalidArgument, "statistics do not cover term '" + std::string(term) + "'");
  const double ratio = static_cast<double>(stats.num_documents) / static_cast<double>(df);
  return static_cast<double>(f) * std::log(ratio) / std::log(log_base);
}

double ppmi(std::string_view term, const TokenizedDocument& doc, const CollectionStats& stats,
            double log_base) {
  const auto f = require_frequency(term, doc);
  const auto cf = lookup(stats.coll_freq, term);
  if (cf < f) throw Error(ErrorCode::InvalidArgument, "statistics do not cover document " + doc.doc_id);
  // (f/M) / ((cf/M)(len/M)) without the intermediate divisions, so that an
  // exactly independent term gives a ratio of exactly 1.
  const double num = static_cast<double>(f) * static_cast<double>(stats.total_occurrences);
  const double den = static_cast<double>(cf) * static_cast<double>(doc.length);
  const double pmi = std::log(num / den) / std::log(log_base);
  return std::max(0.0, pmi);
}

double diff(std::string_view term, const TokenizedDocument& doc, const CollectionStats& stats) {
  const auto f = require_frequency(term, doc);
  const auto cf = lookup(stats.coll_freq, term);
  const auto outside_len = stats.total_occurrences - doc.length;
  if (outside_len <= 0)
    throw Error(ErrorCode::DegenerateCollection,
                "document " + doc.doc_id + " holds every occurrence of the collection");
  const double inside = static_cast<double>(f) / static_cast<double>(doc.length);
  const double outside = static_cast<double>(cf - f) / static_cast<double>(outside_len);
  return std::max(0.0, inside - outside);
}

double term_weight(Measure measure, std::string_view term, const TokenizedDocument& doc,
                   const CollectionStats& stats, double log_base) {
  switch (measure) {
    case Measure::TF: return tf(term, doc);
    case Measure::TFIDF: return tfidf(term, doc, stats, log_base);
    case Measure::PPMI: return ppmi(term, doc, stats, log_base);
    case Measure::Diff: return diff(term, doc, stats);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown measure");
}

RankedTermList rank_terms(const TokenizedDocument& doc, Measure measure,
                          const CollectionStats& stats, double log_base) {
  if (doc.term_freqs.empty())
    throw Error(ErrorCode::InvalidArgument, "document " + doc.doc_id + " has no terms");
  RankedTermList out;
  out.doc_id = doc.doc_id;
  out.measure = measure;
  out.entries.reserve(doc.term_freqs.size());
  for (const auto& [term, count] : doc.term_freqs) {
    const double w = term_weight(measure, term, doc, stats, log_base);
    if (w > 0.0) out.entries.push_back({term, w});
  }
  // term_freqs iterates in term order, so a stable sort on weight alone gives
  // the term-ascending tie-break.
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const WeightedTerm& a, const WeightedTerm& b) { return a.weight > b.weight; });
  out.all_nonpositive = out.entries.empty();
  return out;
}

std::vector<RankedTermList> rank_collection_serial(const SourceCollection& collection,
                                                   Measure measure) {
  std::vector<RankedTermList> out;
  out.reserve(collection.documents.size());
  for (const auto& doc : collection.documents)
    out.push_back(rank_terms(doc, measure, collection.stats));
  return out;
}

std::vector<RankedTermList> rank_collection(const SourceCollection& collection, Measure measure) {
  const auto& docs = collection.documents;
  const auto n = static_cast<std::ptrdiff_t>(docs.size());
  std::vector<RankedTermList> out(docs.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = rank_terms(docs[i], measure, collection.stats);
    } catch (...) {
#pragma omp critical(termcut_rank_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

void write_ranked_csv(std::ostream& out, const std::vector<RankedTermList>& rankings) {
  out << "doc_id,rank,term,weight\n";
  char buf[64];
  for (const auto& r : rankings) {
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.12g", r.entries[i].weight);
      out << r.doc_id << ',' << (i + 1) << ',' << r.entries[i].term << ',' << buf << '\n';
    }
  }
}

}  // namespace termcut
