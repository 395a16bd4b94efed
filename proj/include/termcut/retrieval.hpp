#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "termcut/corpus.hpp"
#include "termcut/cutoff.hpp"

namespace termcut {

/// A profile rendered as a bag of words: the selected terms with their
/// original frequencies in the source document.
struct VirtualDocument {
  std::string profile_id;
  std::string speaker_id;
  TermFreqs term_freqs;
  std::int64_t length = 0;
};

VirtualDocument make_virtual_document(const Profile& profile, const TokenizedDocument& source);

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;

  void validate() const;  // k1 >= 0, b in [0,1]
};

struct Posting {
  std::uint32_t doc = 0;  // index into InvertedIndex::documents()
  std::int64_t tf = 0;

  bool operator==(const Posting&) const = default;
};

struct IndexedDocument {
  std::string profile_id;
  std::string speaker_id;
  std::int64_t length = 0;

  bool operator==(const IndexedDocument&) const = default;
};

class InvertedIndex {
 public:
  InvertedIndex() = default;

  /// Throws DuplicateProfileId. Documents are stored in profile_id order.
  static InvertedIndex build(const std::vector<VirtualDocument>& documents);

  std::size_t size() const noexcept { return documents_.size(); }
  const std::vector<IndexedDocument>& documents() const noexcept { return documents_; }
  double average_length() const noexcept { return average_length_; }

  /// Empty span when the term is not indexed. Postings are in doc order.
  std::span<const Posting> postings(std::string_view term) const;
  std::size_t doc_freq(std::string_view term) const { return postings(term).size(); }
  std::int64_t term_frequency(std::size_t doc, std::string_view term) const;
  std::size_t find(std::string_view profile_id) const;  // size() when absent

  /// ln(1 + (P - n_t + 0.5) / (n_t + 0.5)); positive for every n_t <= P.
  double idf(std::string_view term) const;

  const std::map<std::string, std::vector<Posting>, std::less<>>& terms() const noexcept {
    return postings_;
  }

  // Self-describing, versioned JSON persistence.
  static constexpr int kFormatVersion = 1;
  void write_json(std::ostream& out) const;
  static InvertedIndex read_json(std::istream& in);

  bool operator==(const InvertedIndex&) const = default;

 private:
  std::vector<IndexedDocument> documents_;
  std::map<std::string, std::vector<Posting>, std::less<>> postings_;
  double average_length_ = 0.0;
};

InvertedIndex index_profiles(const std::vector<VirtualDocument>& documents);

/// Okapi BM25 of one indexed document against a query given as raw term
/// counts; each query term contributes its count times the term score.
double bm25_score(const TermFreqs& query, std::size_t doc, const InvertedIndex& index,
                  const Bm25Params& params);

struct Hit {
  std::string profile_id;
  std::string speaker_id;
  double score = 0.0;

  bool operator==(const Hit&) const = default;
};

/// Hits sorted by score descending, then profile_id ascending. Only documents
/// sharing at least one term with the query appear.
struct ScoredRanking {
  std::string query_id;
  std::vector<Hit> hits;

  bool operator==(const ScoredRanking&) const = default;
};

/// Top-k documents; k == 0 returns every matching document.
ScoredRanking query(const InvertedIndex& index, std::string_view query_id, const TermFreqs& terms,
                    std::size_t k, const Bm25Params& params = {});

struct QueryDoc {
  std::string query_id;
  TermFreqs terms;
};

std::vector<ScoredRanking> query_batch(const InvertedIndex& index,
                                       const std::vector<QueryDoc>& queries, std::size_t k,
                                       const Bm25Params& params = {});
std::vector<ScoredRanking> query_batch_serial(const InvertedIndex& index,
                                              const std::vector<QueryDoc>& queries,
                                              std::size_t k, const Bm25Params& params = {});

struct SpeakerScore {
  std::string speaker_id;
  double score = 0.0;

  bool operator==(const SpeakerScore&) const = default;
};

/// Per speaker, sum of score_r / log2(r + 1) over its hits at 1-based rank r;
/// sorted by fused score descending, then speaker_id.
std::vector<SpeakerScore> fuse_subprofiles(const ScoredRanking& ranking);

/// Binary-gain NDCG@k. Throws NoRelevant when `relevant` is empty.
double ndcg_at_k(const std::vector<SpeakerScore>& ranking, const std::set<std::string>& relevant,
                 std::size_t k = 10);

}  // namespace termcut
