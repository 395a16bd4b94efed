#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "termcut/weighting.hpp"

namespace termcut {

// Every cutoff below reads a weight sequence sorted non-increasing and
// returns l, the length of the selected prefix. Zeros are allowed in the
// sequence; they are ordinary entries for FN and FP.

/// Weights within this fraction of the largest weight of a threshold are
/// treated as equal to it, so that cutoffs follow exact arithmetic at ties.
inline constexpr double kTieTolerance = 1e-12;

std::size_t cutoff_fn(std::span<const double> weights, std::int64_t m);
std::size_t cutoff_fp(std::span<const double> weights, double per);
std::size_t cutoff_at(std::span<const double> weights, double delta);
std::size_t cutoff_vt(std::span<const double> weights, double per);
std::size_t cutoff_rc(std::span<const double> weights, double per);
std::size_t cutoff_sc(std::span<const double> weights, double per);

/// Cosine similarity between the i-prefix of the weight vector (rest zeroed)
/// and the whole vector: sqrt(sum_{k<=i} w_k^2 / sum_k w_k^2).
double sim_prefix(std::span<const double> weights, std::size_t i);

/// Prefix sums of squared weights, for repeated similarity queries and the
/// logarithmic SC search.
class PrefixSimilarity {
 public:
  explicit PrefixSimilarity(std::span<const double> weights);

  std::size_t size() const noexcept { return prefix_.size() - 1; }
  double at(std::size_t i) const;
  /// Smallest i with at(i) >= per/100.
  std::size_t cutoff(double per) const;

 private:
  std::vector<double> prefix_;  // prefix_[i] = sum of the first i squares
};

enum class CutoffKind { FN, FP, AT, VT, RC, SC };

CutoffKind parse_cutoff_kind(std::string_view name);
const char* to_string(CutoffKind kind) noexcept;

struct CutoffSpec {
  CutoffKind kind = CutoffKind::FN;
  double param = 0.0;

  /// Throws InvalidArgument when param is outside the kind's range:
  /// FN integer >= 1; FP, VT, SC in (0,100]; RC in [0,100); AT > 0.
  void validate() const;
  std::string label() const;  // e.g. "sc82"

  bool operator==(const CutoffSpec&) const = default;
};

std::size_t compute_cutoff(std::span<const double> weights, const CutoffSpec& spec);

struct Profile {
  std::string doc_id;
  Measure measure = Measure::TF;
  CutoffSpec cutoff;
  std::vector<WeightedTerm> selected;  // the first l entries of the ranking
  std::size_t original_size = 0;

  std::size_t l() const noexcept { return selected.size(); }
  bool operator==(const Profile&) const = default;
};

/// An empty ranking yields an empty profile whatever the cutoff kind.
Profile apply_cutoff(const RankedTermList& ranking, const CutoffSpec& spec);

std::vector<Profile> build_profiles(const std::vector<RankedTermList>& rankings,
                                    const CutoffSpec& spec);
std::vector<Profile> build_profiles_serial(const std::vector<RankedTermList>& rankings,
                                           const CutoffSpec& spec);

/// JSON Lines: {doc_id, measure, cutoff_kind, param, l, terms:[{term,weight}]}.
void write_profiles_jsonl(std::ostream& out, const std::vector<Profile>& profiles);

}  // namespace termcut
