#pragma once

#include <cstddef>
#include <numbers>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "termcut/corpus.hpp"

namespace termcut {

enum class Measure { TF, TFIDF, PPMI, Diff };

Measure parse_measure(std::string_view name);
const char* to_string(Measure measure) noexcept;

struct WeightedTerm {
  std::string term;
  double weight = 0.0;

  bool operator==(const WeightedTerm&) const = default;
};

/// Terms of one document with strictly positive weight, sorted by weight
/// descending and then by term ascending.
struct RankedTermList {
  std::string doc_id;
  Measure measure = Measure::TF;
  std::vector<WeightedTerm> entries;
  // Set when the document had terms but none kept a positive weight.
  bool all_nonpositive = false;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
  std::vector<double> weights() const;

  bool operator==(const RankedTermList&) const = default;
};

// Individual measures. Each throws TermAbsent when `term` is not in `doc`.
// PPMI and Diff return the clamped value (never negative). `log_base` only
// affects TFIDF and PPMI.
double tf(std::string_view term, const TokenizedDocument& doc);
double tfidf(std::string_view term, const TokenizedDocument& doc, const CollectionStats& stats,
             double log_base = std::numbers::e);
double ppmi(std::string_view term, const TokenizedDocument& doc, const CollectionStats& stats,
            double log_base = std::numbers::e);
double diff(std::string_view term, const TokenizedDocument& doc, const CollectionStats& stats);

double term_weight(Measure measure, std::string_view term, const TokenizedDocument& doc,
                   const CollectionStats& stats, double log_base = std::numbers::e);

RankedTermList rank_terms(const TokenizedDocument& doc, Measure measure,
                          const CollectionStats& stats, double log_base = std::numbers::e);

/// Ranks every document of the collection. The OpenMP version and the serial
/// reference produce identical output, in collection order.
std::vector<RankedTermList> rank_collection(const SourceCollection& collection, Measure measure);
std::vector<RankedTermList> rank_collection_serial(const SourceCollection& collection,
                                                   Measure measure);

/// CSV `doc_id,rank,term,weight`, weights with 12 significant digits.
void write_ranked_csv(std::ostream& out, const std::vector<RankedTermList>& rankings);

}  // namespace termcut
