#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "termcut/text.hpp"

namespace termcut {

/// How speeches are grouped into source documents: one per speaker, one per
/// (speaker, committee) pair, or one per (speaker, initiative) pair.
enum class GroupingMode { All, Committee, Initiative };

GroupingMode parse_mode(std::string_view name);
const char* to_string(GroupingMode mode) noexcept;

struct RawRecord {
  std::string record_id;
  std::string speaker_id;
  std::string committee_id;
  std::string initiative_id;
  std::string text;

  bool operator==(const RawRecord&) const = default;
};

// Ordered map so that every traversal of a document is deterministic.
using TermFreqs = std::map<std::string, std::int64_t, std::less<>>;

struct TokenizedDocument {
  std::string doc_id;
  std::string speaker_id;
  std::string group_id;  // committee or initiative id; empty in All mode
  TermFreqs term_freqs;
  std::int64_t length = 0;

  std::int64_t frequency(std::string_view term) const;
  bool operator==(const TokenizedDocument&) const = default;
};

struct CollectionStats {
  std::int64_t num_documents = 0;      // N
  std::int64_t total_occurrences = 0;  // M
  TermFreqs doc_freq;                  // N_t
  TermFreqs coll_freq;                 // sum over documents of f_tj

  bool operator==(const CollectionStats&) const = default;
};

struct BuildDiagnostics {
  std::size_t rejected_records = 0;  // missing the id the mode groups by
  std::size_t dropped_groups = 0;    // tokenized to nothing

  bool operator==(const BuildDiagnostics&) const = default;
};

struct SourceCollection {
  GroupingMode mode = GroupingMode::All;
  std::vector<TokenizedDocument> documents;  // sorted by doc_id
  CollectionStats stats;
  // Distinct non-empty initiative ids per speaker over every ingested record,
  // kept so speaker filtering does not need the raw records again.
  std::map<std::string, std::set<std::string>> speaker_initiatives;
  BuildDiagnostics diagnostics;

  const TokenizedDocument* find(std::string_view doc_id) const;
  bool operator==(const SourceCollection&) const = default;
};

CollectionStats collection_stats(const std::vector<TokenizedDocument>& documents);

/// Groups records per `mode`, sums term frequencies over each group's texts
/// and computes collection statistics. Records lacking the grouping id are
/// rejected and groups that yield no tokens are dropped; both are counted in
/// the diagnostics.
SourceCollection build_collection(const std::vector<RawRecord>& records, GroupingMode mode,
                                  const StopwordSet& stopwords);

/// Removes every document of speakers with fewer than `min_initiatives`
/// distinct initiatives.
SourceCollection filter_speakers(const SourceCollection& collection, std::int64_t min_initiatives);

/// Same rule applied before grouping; used by the holdout evaluation.
std::vector<RawRecord> filter_speaker_records(const std::vector<RawRecord>& records,
                                              std::int64_t min_initiatives);

std::string group_document_id(GroupingMode mode, const RawRecord& record);

// JSON Lines corpus input. Errors name the offending 1-based line.
std::vector<RawRecord> read_records_jsonl(std::istream& in);
std::vector<RawRecord> load_records_jsonl(const std::string& path);

// Versioned JSON collection file written by `termcut ingest`. Reading
// recomputes the statistics and rejects files whose stored stats disagree.
inline constexpr int kCollectionFormatVersion = 1;
void write_collection(std::ostream& out, const SourceCollection& collection);
SourceCollection read_collection(std::istream& in);
SourceCollection load_collection(const std::string& path);

}  // namespace termcut
