#include "termcut/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <unordered_set>

#include "termcut/error.hpp"

namespace termcut {

using nlohmann::json;

GroupingMode parse_mode(std::string_view name) {
  if (name == "all") return GroupingMode::All;
  if (name == "committee") return GroupingMode::Committee;
  if (name == "initiative") return GroupingMode::Initiative;
  throw Error(ErrorCode::UnknownMode, "unknown grouping mode '" + std::string(name) + "'");
}

const char* to_string(GroupingMode mode) noexcept {
  switch (mode) {
    case GroupingMode::All: return "all";
    case GroupingMode::Committee: return "committee";
    case GroupingMode::Initiative: return "initiative";
  }
  return "unknown";
}

std::int64_t TokenizedDocument::frequency(std::string_view term) const {
  const auto it = term_freqs.find(term);
  return it == term_freqs.end() ? 0 : it->second;
}

const TokenizedDocument* SourceCollection::find(std::string_view doc_id) const {
  const auto it = std::lower_bound(
      documents.begin(), documents.end(), doc_id,
      [](const TokenizedDocument& d, std::string_view id) { return d.doc_id < id; });
  return it != documents.end() && it->doc_id == doc_id ? &*it : nullptr;
}

CollectionStats collection_stats(const std::vector<TokenizedDocument>& documents) {
  CollectionStats stats;
  stats.num_documents = static_cast<std::int64_t>(documents.size());
  for (const auto& doc : documents) {
    for (const auto& [term, count] : doc.term_freqs) {
      ++stats.doc_freq[term];
      stats.coll_freq[term] += count;
      stats.total_occurrences += count;
    }
  }
  return stats;
}

namespace {

const std::string& group_field(GroupingMode mode, const RawRecord& record) {
  static const std::string kNone;
  switch (mode) {
    case GroupingMode::Committee: return record.committee_id;
    case GroupingMode::Initiative: return record.initiative_id;
    case GroupingMode::All: break;
  }
  return kNone;
}

void validate_records(const std::vector<RawRecord>& records) {
  std::unordered_set<std::string_view> seen;
  for (const auto& r : records) {
    if (r.speaker_id.empty())
      throw Error(ErrorCode::MalformedInput, "record '" + r.record_id + "' has no speaker_id");
    if (!seen.insert(r.record_id).second)
      throw Error(ErrorCode::MalformedInput, "duplicate record_id '" + r.record_id + "'");
  }
}

}  // namespace

std::string group_document_id(GroupingMode mode, const RawRecord& record) {
  if (mode == GroupingMode::All) return record.speaker_id;
  return record.speaker_id + "|" + group_field(mode, record);
}

SourceCollection build_collection(const std::vector<RawRecord>& records, GroupingMode mode,
                                  const StopwordSet& stopwords) {
  if (records.empty()) throw Error(ErrorCode::InvalidArgument, "no records to build from");
  validate_records(records);

  SourceCollection out;
  out.mode = mode;

  std::map<std::string, TokenizedDocument> groups;
  for (const auto& record : records) {
    if (!record.initiative_id.empty())
      out.speaker_initiatives[record.speaker_id].insert(record.initiative_id);
    else
      out.speaker_initiatives.try_emplace(record.speaker_id);

    const auto& group_id = group_field(mode, record);
    if (mode != GroupingMode::All && group_id.empty()) {
      ++out.diagnostics.rejected_records;
      continue;
    }
    auto [it, inserted] = groups.try_emplace(group_document_id(mode, record));
    auto& doc = it->second;
    if (inserted) {
      doc.doc_id = it->first;
      doc.speaker_id = record.speaker_id;
      doc.group_id = group_id;
    }
    for (auto& token : tokenize(record.text, stopwords)) {
      ++doc.term_freqs[std::move(token)];
      ++doc.length;
    }
  }

  out.documents.reserve(groups.size());
  for (auto& [id, doc] : groups) {
    if (doc.length == 0) {
      ++out.diagnostics.dropped_groups;
      continue;
    }
    out.documents.push_back(std::move(doc));
  }
  out.stats = collection_stats(out.documents);
  return out;
}

SourceCollection filter_speakers(const SourceCollection& collection,
                                 std::int64_t min_initiatives) {
  if (min_initiatives < 0)
    throw Error(ErrorCode::InvalidArgument, "min_initiatives must be non-negative");
  auto keep = [&](const std::string& speaker) {
    const auto it = collection.speaker_initiatives.find(speaker);
    const auto count = it == collection.speaker_initiatives.end() ? 0 : it->second.size();
    return static_cast<std::int64_t>(count) >= min_initiatives;
  };

  SourceCollection out;
  out.mode = collection.mode;
  out.diagnostics = collection.diagnostics;
  for (const auto& [speaker, initiatives] : collection.speaker_initiatives)
    if (keep(speaker)) out.speaker_initiatives.emplace(speaker, initiatives);
  for (const auto& doc : collection.documents)
    if (keep(doc.speaker_id)) out.documents.push_back(doc);
  out.stats = collection_stats(out.documents);
  return out;
}

std::vector<RawRecord> filter_speaker_records(const std::vector<RawRecord>& records,
                                              std::int64_t min_initiatives) {
  if (min_initiatives < 0)
    throw Error(ErrorCode::InvalidArgument, "min_initiatives must be non-negative");
  std::map<std::string_view, std::set<std::string_view>> initiatives;
  for (const auto& r : records) {
    auto& set = initiatives[r.speaker_id];
    if (!r.initiative_id.empty()) set.insert(r.initiative_id);
  }
  std::vector<RawRecord> out;
  for (const auto& r : records)
    if (static_cast<std::int64_t>(initiatives[r.speaker_id].size()) >= min_initiatives)
      out.push_back(r);
  return out;
}

namespace {

std::string optional_string(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string())
    throw Error(ErrorCode::MalformedInput,
                "line " + std::to_string(line) + ": key '" + key + "' must be a string");
  return it->get<std::string>();
}

std::string required_string(const json& obj, const char* key, std::size_t line) {
  if (!obj.contains(key))
    throw Error(ErrorCode::MalformedInput,
                "line " + std::to_string(line) + ": missing key '" + key + "'");
  return optional_string(obj, key, line);
}

}  // namespace

std::vector<RawRecord> read_records_jsonl(std::istream& in) {
  std::vector<RawRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::MalformedInput,
                  "line " + std::to_string(line_no) + ": invalid JSON (" + e.what() + ")");
    }
    if (!obj.is_object())
      throw Error(ErrorCode::MalformedInput,
                  "line " + std::to_string(line_no) + ": expected a JSON object");
    RawRecord r;
    r.record_id = required_string(obj, "record_id", line_no);
    r.speaker_id = required_string(obj, "speaker_id", line_no);
    r.committee_id = optional_string(obj, "committee_id", line_no);
    r.initiative_id = optional_string(obj, "initiative_id", line_no);
    r.text = required_string(obj, "text", line_no);
    if (r.speaker_id.empty())
      throw Error(ErrorCode::MalformedInput,
                  "line " + std::to_string(line_no) + ": empty speaker_id");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<RawRecord> load_records_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open corpus file " + path);
  return read_records_jsonl(in);
}

void write_collection(std::ostream& out, const SourceCollection& collection) {
  json docs = json::array();
  for (const auto& d : collection.documents) {
    docs.push_back({{"doc_id", d.doc_id},
                    {"speaker_id", d.speaker_id},
                    {"group_id", d.group_id},
                    {"length", d.length},
                    {"terms", d.term_freqs}});
  }
  json speakers = json::object();
  for (const auto& [speaker, initiatives] : collection.speaker_initiatives)
    speakers[speaker] = initiatives;
  const json j = {
      {"format", "termcut-collection"},
      {"version", kCollectionFormatVersion},
      {"mode", to_string(collection.mode)},
      {"stats",
       {{"documents", collection.stats.num_documents},
        {"occurrences", collection.stats.total_occurrences},
        {"terms", collection.stats.doc_freq.size()}}},
      {"diagnostics",
       {{"rejected_records", collection.diagnostics.rejected_records},
        {"dropped_groups", collection.diagnostics.dropped_groups}}},
      {"speaker_initiatives", speakers},
      {"documents", docs},
  };
  out << j.dump(1) << '\n';
}

SourceCollection read_collection(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, std::string("collection file: ") + e.what());
  }
  try {
    if (j.at("format") != "termcut-collection")
      throw Error(ErrorCode::MalformedInput, "not a termcut collection file");
    if (j.at("version") != kCollectionFormatVersion)
      throw Error(ErrorCode::MalformedInput,
                  "unsupported collection version " + j.at("version").dump());

    SourceCollection c;
    c.mode = parse_mode(j.at("mode").get<std::string>());
    for (const auto& [speaker, initiatives] : j.at("speaker_initiatives").items())
      c.speaker_initiatives[speaker] = initiatives.get<std::set<std::string>>();
    for (const auto& d : j.at("documents")) {
      TokenizedDocument doc;
      doc.doc_id = d.at("doc_id").get<std::string>();
      doc.speaker_id = d.at("speaker_id").get<std::string>();
      doc.group_id = d.at("group_id").get<std::string>();
      doc.length = d.at("length").get<std::int64_t>();
      for (const auto& [term, count] : d.at("terms").items())
        doc.term_freqs.emplace(term, count.get<std::int64_t>());
      std::int64_t sum = 0;
      for (const auto& [term, count] : doc.term_freqs) {
        if (count < 1)
          throw Error(ErrorCode::MalformedInput, "non-positive count in " + doc.doc_id);
        sum += count;
      }
      if (sum != doc.length)
        throw Error(ErrorCode::MalformedInput, "length mismatch in " + doc.doc_id);
      c.documents.push_back(std::move(doc));
    }
    if (!std::is_sorted(c.documents.begin(), c.documents.end(),
                        [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; }))
      throw Error(ErrorCode::MalformedInput, "documents are not sorted by doc_id");

    const auto& diag = j.at("diagnostics");
    c.diagnostics.rejected_records = diag.at("rejected_records").get<std::size_t>();
    c.diagnostics.dropped_groups = diag.at("dropped_groups").get<std::size_t>();

    c.stats = collection_stats(c.documents);
    const auto& stored = j.at("stats");
    if (stored.at("documents").get<std::int64_t>() != c.stats.num_documents ||
        stored.at("occurrences").get<std::int64_t>() != c.stats.total_occurrences ||
        stored.at("terms").get<std::size_t>() != c.stats.doc_freq.size())
      throw Error(ErrorCode::MalformedInput, "stored statistics disagree with documents");
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedInput, std::string("collection file: ") + e.what());
  }
}

SourceCollection load_collection(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open collection file " + path);
  return read_collection(in);
}

}  // namespace termcut
