#include "termcut/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <json.hpp>
#include <unordered_map>

#include "termcut/error.hpp"

namespace termcut {

VirtualDocument make_virtual_document(const Profile& profile, const TokenizedDocument& source) {
  if (profile.doc_id != source.doc_id)
    throw Error(ErrorCode::InvalidArgument,
                "profile " + profile.doc_id + " does not come from " + source.doc_id);
  VirtualDocument vd;
  vd.profile_id = profile.doc_id;
  vd.speaker_id = source.speaker_id;
  for (const auto& t : profile.selected) {
    const auto f = source.frequency(t.term);
    if (f <= 0)
      throw Error(ErrorCode::TermAbsent, "selected term '" + t.term + "' missing from source");
    vd.term_freqs.emplace(t.term, f);
    vd.length += f;
  }
  return vd;
}

void Bm25Params::validate() const {
  if (!(k1 >= 0.0) || !(b >= 0.0 && b <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "BM25 needs k1 >= 0 and b in [0,1]");
}

InvertedIndex InvertedIndex::build(const std::vector<VirtualDocument>& documents) {
  std::vector<const VirtualDocument*> order;
  order.reserve(documents.size());
  for (const auto& d : documents) order.push_back(&d);
  std::sort(order.begin(), order.end(),
            [](const auto* a, const auto* b) { return a->profile_id < b->profile_id; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (order[i]->profile_id == order[i - 1]->profile_id)
      throw Error(ErrorCode::DuplicateProfileId, "duplicate profile id " + order[i]->profile_id);

  InvertedIndex index;
  index.documents_.reserve(order.size());
  double total_length = 0.0;
  for (std::uint32_t doc = 0; doc < order.size(); ++doc) {
    const auto& vd = *order[doc];
    index.documents_.push_back({vd.profile_id, vd.speaker_id, vd.length});
    total_length += static_cast<double>(vd.length);
    for (const auto& [term, tf] : vd.term_freqs) index.postings_[term].push_back({doc, tf});
  }
  if (!order.empty()) index.average_length_ = total_length / static_cast<double>(order.size());
  return index;
}

InvertedIndex index_profiles(const std::vector<VirtualDocument>& documents) {
  return InvertedIndex::build(documents);
}

std::span<const Posting> InvertedIndex::postings(std::string_view term) const {
  const auto it = postings_.find(term);
  if (it == postings_.end()) return {};
  return it->second;
}

std::int64_t InvertedIndex::term_frequency(std::size_t doc, std::string_view term) const {
  const auto list = postings(term);
  const auto it = std::lower_bound(list.begin(), list.end(), doc,
                                   [](const Posting& p, std::size_t d) { return p.doc < d; });
  return it != list.end() && it->doc == doc ? it->tf : 0;
}

std::size_t InvertedIndex::find(std::string_view profile_id) const {
  const auto it = std::lower_bound(
      documents_.begin(), documents_.end(), profile_id,
      [](const IndexedDocument& d, std::string_view id) { return d.profile_id < id; });
  if (it == documents_.end() || it->profile_id != profile_id) return documents_.size();
  return static_cast<std::size_t>(it - documents_.begin());
}

double InvertedIndex::idf(std::string_view term) const {
  const double p = static_cast<double>(documents_.size());
  const double nt = static_cast<double>(doc_freq(term));
  return std::log(1.0 + (p - nt + 0.5) / (nt + 0.5));
}

namespace {

double term_score(double idf, double tf, double length, double avg_length,
                  const Bm25Params& params) {
  const double norm = avg_length > 0.0 ? length / avg_length : 1.0;
  return idf * tf * (params.k1 + 1.0) / (tf + params.k1 * (1.0 - params.b + params.b * norm));
}

}  // namespace

double bm25_score(const TermFreqs& query, std::size_t doc, const InvertedIndex& index,
                  const Bm25Params& params) {
  if (doc >= index.size()) throw Error(ErrorCode::InvalidArgument, "document index out of range");
  const double length = static_cast<double>(index.documents()[doc].length);
  double score = 0.0;
  for (const auto& [term, qtf] : query) {
    const auto tf = index.term_frequency(doc, term);
    if (tf == 0) continue;
    score += static_cast<double>(qtf) *
             term_score(index.idf(term), static_cast<double>(tf), length, index.average_length(),
                        params);
  }
  return score;
}

ScoredRanking query(const InvertedIndex& index, std::string_view query_id, const TermFreqs& terms,
                    std::size_t k, const Bm25Params& params) {
  params.validate();
  const auto& docs = index.documents();
  std::vector<double> acc(docs.size(), 0.0);
  std::vector<char> matched(docs.size(), 0);
  // Same term order and arithmetic as bm25_score, so the scores agree exactly.
  for (const auto& [term, qtf] : terms) {
    const auto list = index.postings(term);
    if (list.empty()) continue;
    const double idf = index.idf(term);
    for (const auto& p : list) {
      acc[p.doc] += static_cast<double>(qtf) *
                    term_score(idf, static_cast<double>(p.tf),
                               static_cast<double>(docs[p.doc].length), index.average_length(),
                               params);
      matched[p.doc] = 1;
    }
  }

  std::vector<std::uint32_t> hits;
  for (std::uint32_t d = 0; d < docs.size(); ++d)
    if (matched[d]) hits.push_back(d);
  // Documents are stored in profile_id order, so the index breaks ties.
  auto better = [&](std::uint32_t a, std::uint32_t b) {
    return acc[a] != acc[b] ? acc[a] > acc[b] : a < b;
  };
  const std::size_t keep = k == 0 ? hits.size() : std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep), hits.end(),
                    better);
  hits.resize(keep);

  ScoredRanking out;
  out.query_id = query_id;
  out.hits.reserve(keep);
  for (const auto d : hits) out.hits.push_back({docs[d].profile_id, docs[d].speaker_id, acc[d]});
  return out;
}

std::vector<ScoredRanking> query_batch_serial(const InvertedIndex& index,
                                              const std::vector<QueryDoc>& queries,
                                              std::size_t k, const Bm25Params& params) {
  std::vector<ScoredRanking> out;
  out.reserve(queries.size());
  for (const auto& q : queries) out.push_back(query(index, q.query_id, q.terms, k, params));
  return out;
}

std::vector<ScoredRanking> query_batch(const InvertedIndex& index,
                                       const std::vector<QueryDoc>& queries, std::size_t k,
                                       const Bm25Params& params) {
  params.validate();
  std::vector<ScoredRanking> out(queries.size());
  const auto n = static_cast<std::ptrdiff_t>(queries.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = query(index, queries[i].query_id, queries[i].terms, k, params);
    } catch (...) {
#pragma omp critical(termcut_query_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<SpeakerScore> fuse_subprofiles(const ScoredRanking& ranking) {
  std::map<std::string, double> fused;
  for (std::size_t r = 0; r < ranking.hits.size(); ++r) {
    const auto& hit = ranking.hits[r];
    fused[hit.speaker_id] += hit.score / std::log2(static_cast<double>(r) + 2.0);
  }
  std::vector<SpeakerScore> out;
  out.reserve(fused.size());
  for (const auto& [speaker, score] : fused) out.push_back({speaker, score});
  // Stable over the speaker-sorted map, so equal scores keep speaker order.
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.score > b.score; });
  return out;
}

double ndcg_at_k(const std::vector<SpeakerScore>& ranking, const std::set<std::string>& relevant,
                 std::size_t k) {
  if (relevant.empty()) throw Error(ErrorCode::NoRelevant, "query has no relevant speakers");
  double dcg = 0.0;
  for (std::size_t i = 0; i < std::min(k, ranking.size()); ++i)
    if (relevant.contains(ranking[i].speaker_id)) dcg += 1.0 / std::log2(double(i) + 2.0);
  double ideal = 0.0;
  for (std::size_t i = 0; i < std::min(k, relevant.size()); ++i)
    ideal += 1.0 / std::log2(double(i) + 2.0);
  return ideal > 0.0 ? dcg / ideal : 0.0;
}

void InvertedIndex::write_json(std::ostream& out) const {
  using nlohmann::ordered_json;
  ordered_json docs = ordered_json::array();
  for (const auto& d : documents_)
    docs.push_back({{"profile_id", d.profile_id}, {"speaker_id", d.speaker_id}, {"length", d.length}});
  ordered_json postings = ordered_json::object();
  for (const auto& [term, list] : postings_) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : list) arr.push_back({p.doc, p.tf});
    postings[term] = std::move(arr);
  }
  const ordered_json j = {{"format", "termcut-index"},
                          {"version", kFormatVersion},
                          {"documents_count", documents_.size()},
                          {"average_length", average_length_},
                          {"documents", docs},
                          {"postings", postings}};
  out << j.dump() << '\n';
}

InvertedIndex InvertedIndex::read_json(std::istream& in) {
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.at("format") != "termcut-index")
      throw Error(ErrorCode::MalformedInput, "not a termcut index file");
    if (j.at("version") != kFormatVersion)
      throw Error(ErrorCode::MalformedInput, "unsupported index version " + j.at("version").dump());
    std::vector<VirtualDocument> docs;
    for (const auto& d : j.at("documents"))
      docs.push_back({d.at("profile_id").get<std::string>(), d.at("speaker_id").get<std::string>(),
                      {}, d.at("length").get<std::int64_t>()});
    for (const auto& [term, list] : j.at("postings").items()) {
      for (const auto& p : list) {
        const auto doc = p.at(0).get<std::size_t>();
        if (doc >= docs.size()) throw Error(ErrorCode::MalformedInput, "posting out of range");
        docs[doc].term_freqs.emplace(term, p.at(1).get<std::int64_t>());
      }
    }
    auto index = build(docs);
    if (index.size() != j.at("documents_count").get<std::size_t>())
      throw Error(ErrorCode::MalformedInput, "document count mismatch");
    return index;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedInput, std::string("index file: ") + e.what());
  }
}

}  // namespace termcut
