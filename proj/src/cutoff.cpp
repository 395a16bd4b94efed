#include "termcut/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <json.hpp>
#include <ranges>

#include "termcut/error.hpp"

namespace termcut {
namespace {

void require_non_empty(std::span<const double> weights) {
  if (weights.empty()) throw Error(ErrorCode::EmptyRanking, "cutoff of an empty ranking");
}

void require_percentage(double per, bool allow_zero, bool allow_hundred) {
  const bool low_ok = allow_zero ? per >= 0.0 : per > 0.0;
  const bool high_ok = allow_hundred ? per <= 100.0 : per < 100.0;
  if (!(low_ok && high_ok) || std::isnan(per))
    throw Error(ErrorCode::InvalidArgument, "percentage out of range: " + std::to_string(per));
}

// Number of leading entries satisfying a predicate that is monotone on a
// non-increasing sequence.
template <typename Pred>
std::size_t leading_count(std::span<const double> weights, Pred pred) {
  return static_cast<std::size_t>(std::ranges::partition_point(weights, pred) - weights.begin());
}

}  // namespace

std::size_t cutoff_fn(std::span<const double> weights, std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "FN needs m >= 1");
  return std::min(static_cast<std::size_t>(m), weights.size());
}

std::size_t cutoff_fp(std::span<const double> weights, double per) {
  require_percentage(per, false, true);
  // std::round rounds halfway cases away from zero.
  const double l = std::round(static_cast<double>(weights.size()) * per / 100.0);
  return std::min(static_cast<std::size_t>(l), weights.size());
}

std::size_t cutoff_at(std::span<const double> weights, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "AT needs delta > 0");
  const double floor = delta - kTieTolerance * delta;
  return leading_count(weights, [floor](double w) { return w >= floor; });
}

std::size_t cutoff_vt(std::span<const double> weights, double per) {
  require_percentage(per, false, true);
  require_non_empty(weights);
  const double max = weights.front();
  const double floor = max * per / 100.0 - kTieTolerance * max;
  return leading_count(weights, [floor](double w) { return w >= floor; });
}

std::size_t cutoff_rc(std::span<const double> weights, double per) {
  require_percentage(per, true, false);
  require_non_empty(weights);
  const double max = weights.front();
  const double min = weights.back();
  const double threshold = min + per / 100.0 * (max - min) + kTieTolerance * max;
  return leading_count(weights, [threshold](double w) { return w > threshold; });
}

PrefixSimilarity::PrefixSimilarity(std::span<const double> weights) : prefix_(weights.size() + 1) {
  require_non_empty(weights);
  for (std::size_t i = 0; i < weights.size(); ++i)
    prefix_[i + 1] = prefix_[i] + weights[i] * weights[i];
  if (!(prefix_.back() > 0.0))
    throw Error(ErrorCode::EmptyRanking, "similarity of a vector without positive weights");
}

double PrefixSimilarity::at(std::size_t i) const {
  if (i > size()) throw Error(ErrorCode::InvalidArgument, "prefix length beyond ranking size");
  return std::sqrt(prefix_[i] / prefix_.back());
}

std::size_t PrefixSimilarity::cutoff(double per) const {
  require_percentage(per, false, true);
  const double target = per / 100.0 - kTieTolerance;
  const auto lengths = std::views::iota(std::size_t{1}, size() + 1);
  // at() is non-decreasing in i and reaches 1 at i = n, so the search
  // always lands inside the range.
  return *std::ranges::partition_point(lengths, [&](std::size_t i) { return at(i) < target; });
}

double sim_prefix(std::span<const double> weights, std::size_t i) {
  require_non_empty(weights);
  if (i > weights.size())
    throw Error(ErrorCode::InvalidArgument, "prefix length beyond ranking size");
  double prefix = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (k == i) prefix = total;
    total += weights[k] * weights[k];
  }
  if (i == weights.size()) prefix = total;
  if (!(total > 0.0))
    throw Error(ErrorCode::EmptyRanking, "similarity of a vector without positive weights");
  return std::sqrt(prefix / total);
}

std::size_t cutoff_sc(std::span<const double> weights, double per) {
  require_percentage(per, false, true);
  return PrefixSimilarity(weights).cutoff(per);
}

CutoffKind parse_cutoff_kind(std::string_view name) {
  if (name == "fn") return CutoffKind::FN;
  if (name == "fp") return CutoffKind::FP;
  if (name == "at") return CutoffKind::AT;
  if (name == "vt") return CutoffKind::VT;
  if (name == "rc") return CutoffKind::RC;
  if (name == "sc") return CutoffKind::SC;
  throw Error(ErrorCode::InvalidArgument, "unknown cutoff kind '" + std::string(name) + "'");
}

const char* to_string(CutoffKind kind) noexcept {
  switch (kind) {
    case CutoffKind::FN: return "fn";
    case CutoffKind::FP: return "fp";
    case CutoffKind::AT: return "at";
    case CutoffKind::VT: return "vt";
    case CutoffKind::RC: return "rc";
    case CutoffKind::SC: return "sc";
  }
  return "unknown";
}

void CutoffSpec::validate() const {
  switch (kind) {
    case CutoffKind::FN:
      if (!(param >= 1.0) || param != std::floor(param))
        throw Error(ErrorCode::InvalidArgument, "FN needs an integer m >= 1");
      return;
    case CutoffKind::FP:
    case CutoffKind::VT:
    case CutoffKind::SC:
      require_percentage(param, false, true);
      return;
    case CutoffKind::RC:
      require_percentage(param, true, false);
      return;
    case CutoffKind::AT:
      if (!(param > 0.0)) throw Error(ErrorCode::InvalidArgument, "AT needs delta > 0");
      return;
  }
}

std::string CutoffSpec::label() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%g", to_string(kind), param);
  return buf;
}

std::size_t compute_cutoff(std::span<const double> weights, const CutoffSpec& spec) {
  switch (spec.kind) {
    case CutoffKind::FN: return cutoff_fn(weights, static_cast<std::int64_t>(spec.param));
    case CutoffKind::FP: return cutoff_fp(weights, spec.param);
    case CutoffKind::AT: return cutoff_at(weights, spec.param);
    case CutoffKind::VT: return cutoff_vt(weights, spec.param);
    case CutoffKind::RC: return cutoff_rc(weights, spec.param);
    case CutoffKind::SC: return cutoff_sc(weights, spec.param);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown cutoff kind");
}

Profile apply_cutoff(const RankedTermList& ranking, const CutoffSpec& spec) {
  spec.validate();
  Profile p;
  p.doc_id = ranking.doc_id;
  p.measure = ranking.measure;
  p.cutoff = spec;
  p.original_size = ranking.size();
  if (ranking.empty()) return p;
  const auto weights = ranking.weights();
  const auto l = compute_cutoff(weights, spec);
  p.selected.assign(ranking.entries.begin(),
                    ranking.entries.begin() + static_cast<std::ptrdiff_t>(l));
  return p;
}

std::vector<Profile> build_profiles_serial(const std::vector<RankedTermList>& rankings,
                                           const CutoffSpec& spec) {
  std::vector<Profile> out;
  out.reserve(rankings.size());
  for (const auto& r : rankings) out.push_back(apply_cutoff(r, spec));
  return out;
}

std::vector<Profile> build_profiles(const std::vector<RankedTermList>& rankings,
                                    const CutoffSpec& spec) {
  spec.validate();
  const auto n = static_cast<std::ptrdiff_t>(rankings.size());
  std::vector<Profile> out(rankings.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = apply_cutoff(rankings[i], spec);
    } catch (...) {
#pragma omp critical(termcut_profile_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

void write_profiles_jsonl(std::ostream& out, const std::vector<Profile>& profiles) {
  for (const auto& p : profiles) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& t : p.selected) terms.push_back({{"term", t.term}, {"weight", t.weight}});
    const nlohmann::ordered_json line = {
        {"doc_id", p.doc_id},
        {"measure", to_string(p.measure)},
        {"cutoff_kind", to_string(p.cutoff.kind)},
        {"param", p.cutoff.param},
        {"l", p.l()},
        {"n", p.original_size},
        {"terms", terms},
    };
    out << line.dump() << '\n';
  }
}

}  // namespace termcut
