#pragma once

// Executable checks of the concentration properties a cutoff function should
// satisfy, evaluated on raw weight vectors through the distribution
// transformations each property is stated over.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "termcut/cutoff.hpp"

namespace termcut::axioms {

/// Sorted non-increasing, non-negative. Unlike a ranking, zeros are allowed.
using WeightVector = std::vector<double>;

enum class Property { P1, P2, P3, P4, P5, P6, WeakP6, P7 };

inline constexpr std::array<Property, 8> kAllProperties = {
    Property::P1, Property::P2, Property::P3,     Property::P4,
    Property::P5, Property::P6, Property::WeakP6, Property::P7};

const char* to_string(Property property) noexcept;
Property parse_property(std::string_view name);

// Transformations. All results are sorted non-increasing.
WeightVector add_zeros(const WeightVector& v, std::size_t count);
WeightVector scale(const WeightVector& v, double factor);
WeightVector shift_all(const WeightVector& v, double amount);

struct TransferResult {
  WeightVector weights;
  // 1-based rank of the receiving weight after re-sorting; ahead of any
  // equal weights.
  std::size_t receiver_rank = 0;
};

/// Moves `amount` from the weight at index `donor` to the strictly heavier
/// weight at index `receiver` (0-based indices into `v`).
TransferResult transfer(const WeightVector& v, std::size_t receiver, std::size_t donor,
                        double amount);
WeightVector enrich_top(const WeightVector& v, double amount);
WeightVector impoverish_bottom(const WeightVector& v, double amount);

using CutoffFunction = std::function<std::size_t(std::span<const double>)>;
CutoffFunction bind_cutoff(const CutoffSpec& spec);

/// Transformation parameters; each property reads only its own fields.
struct TransformParams {
  std::size_t zeros = 1;                  // P3
  double factor = 1.0;                    // P4
  double shift = 0.0;                     // P5
  std::size_t receiver = 0;               // P6, wP6
  std::size_t donor = 1;                  // P6, wP6
  double transfer_amount = 0.0;           // P6, wP6
  double top_amount = 0.0;                // P7, richest get richer
  double bottom_amount = 0.0;             // P7, poorest get poorer; 0 skips it
  std::vector<WeightVector> rivals;       // P2, same length and sum as v

  bool operator==(const TransformParams&) const = default;
};

struct Witness {
  WeightVector input;
  TransformParams params;
  WeightVector transformed;
  std::size_t cutoff_before = 0;
  std::size_t cutoff_after = 0;
  std::optional<std::size_t> receiver_rank;
  std::string note;
};

struct PropertyVerdict {
  Property property = Property::P1;
  bool holds = true;
  std::optional<Witness> witness;  // present iff !holds
};

/// Evaluates the property's defining inequality on cutoffs before and after
/// its transformation:
///   P1  v = {w,0,...,0}: C(v) == 1
///   P2  v uniform: C(v) >= C(r) for every same-length, same-sum rival r
///   P3  C(v) == C(v + zeros)      P4  C(v) == C(k v)
///   P5  C(v) <= C(v + h)          P6  C(v+) <= C(v)
///   wP6 C(v) <  l+ => C(v) <= C(v+);  C(v) >= l+ => C(v) >= C(v+)
///   P7  C(v*) <= C(v) for the enrich-top and impoverish-bottom variants
/// Throws InvalidArgument when v does not meet the property's precondition.
PropertyVerdict check_property(const CutoffFunction& cutoff, Property property,
                               const WeightVector& v, const TransformParams& params);

/// Draws any transformation parameters from `rng_seed`, then checks.
/// Returns nullopt when v admits no transformation for the property (e.g. a
/// transfer on a uniform vector).
std::optional<PropertyVerdict> check_property(const CutoffFunction& cutoff, Property property,
                                              const WeightVector& v, std::uint64_t rng_seed);

// Random inputs used by the suite.
WeightVector random_weight_vector(std::mt19937_64& rng, std::size_t min_length = 2,
                                  std::size_t max_length = 200);
/// The property-specific input derived from a base vector (one-hot for P1,
/// uniform for P2, the vector itself otherwise).
WeightVector property_input(Property property, const WeightVector& base);
/// Random transformation parameters for `input`; P2 rivals are a fresh
/// random vector and a perturbed copy, both rescaled to the same sum.
std::optional<TransformParams> draw_params(Property property, const WeightVector& input,
                                           std::mt19937_64& rng);
double draw_param(CutoffKind kind, std::mt19937_64& rng);

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept;

struct Counterexample {
  std::size_t trial = 0;
  CutoffSpec cutoff;
  Witness witness;
};

struct PropertyTally {
  std::size_t trials = 0;  // trials where the property was applicable
  std::size_t passes = 0;
  std::optional<Counterexample> first_counterexample;  // lowest trial index

  std::size_t failures() const noexcept { return trials - passes; }
};

struct SuiteReport {
  CutoffKind kind = CutoffKind::SC;
  std::optional<double> param;  // nullopt: drawn per trial
  std::size_t n_trials = 0;
  std::uint64_t seed = 0;
  std::map<Property, PropertyTally> tallies;
};

/// Randomized search over vectors of length 2..200 mixing uniform,
/// exponential and Zipf(1.1) generators. Trial t uses trial_seed(seed, t), so
/// the parallel run and the serial reference agree exactly.
SuiteReport run_axiom_suite(CutoffKind kind, std::optional<double> param, std::size_t n_trials,
                            std::uint64_t seed);
SuiteReport run_axiom_suite_serial(CutoffKind kind, std::optional<double> param,
                                   std::size_t n_trials, std::uint64_t seed);

enum class Expectation { Holds, Fails, Exempt };
enum class ExpectMode { Table1, All };

const char* to_string(Expectation expectation) noexcept;
ExpectMode parse_expect_mode(std::string_view name);

/// Expected outcome per cutoff kind and property from the published summary
/// table. FN has no row there, so every cell is exempt.
Expectation table1_expectation(CutoffKind kind, Property property) noexcept;
Expectation expectation(ExpectMode mode, CutoffKind kind, Property property) noexcept;

/// Holds needs zero failures, Fails needs at least one, Exempt always passes.
bool expectation_met(Expectation expectation, const PropertyTally& tally) noexcept;
bool all_expectations_met(const SuiteReport& report, ExpectMode mode);

std::string report_to_json(const SuiteReport& report, ExpectMode mode);

// Numerical counterparts of the cosine-similarity proofs, checked on every
// prefix length with the given tolerance.
bool similarity_drops_under_shift(std::span<const double> v, double shift,
                                  double tolerance = 1e-9);
bool similarity_rises_under_enrichment(std::span<const double> v, double amount,
                                       double tolerance = 1e-9);

struct AppendixReport {
  std::size_t pairs = 0;
  std::size_t shift_violations = 0;
  std::size_t weak_transfer_violations = 0;
  std::size_t enrichment_violations = 0;
};

AppendixReport verify_similarity_proofs(std::size_t pairs, std::uint64_t seed);

}  // namespace termcut::axioms
