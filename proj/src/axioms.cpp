#include "termcut/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <json.hpp>
#include <numeric>

#include "termcut/error.hpp"
#include "termcut/seed.hpp"

namespace termcut::axioms {

const char* to_string(Property property) noexcept {
  switch (property) {
    case Property::P1: return "P1";
    case Property::P2: return "P2";
    case Property::P3: return "P3";
    case Property::P4: return "P4";
    case Property::P5: return "P5";
    case Property::P6: return "P6";
    case Property::WeakP6: return "wP6";
    case Property::P7: return "P7";
  }
  return "unknown";
}

Property parse_property(std::string_view name) {
  for (const auto p : kAllProperties)
    if (name == to_string(p)) return p;
  throw Error(ErrorCode::UnsupportedProperty, "unknown property '" + std::string(name) + "'");
}

namespace {

void validate_vector(const WeightVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0) || !std::isfinite(v[i]))
      throw Error(ErrorCode::InvalidArgument, "weights must be finite and non-negative");
    if (i > 0 && v[i] > v[i - 1])
      throw Error(ErrorCode::InvalidArgument, "weights must be sorted non-increasing");
  }
}

void sort_descending(WeightVector& v) { std::sort(v.begin(), v.end(), std::greater<>()); }

double sum(const WeightVector& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double mean(const WeightVector& v) { return v.empty() ? 0.0 : sum(v) / static_cast<double>(v.size()); }

}  // namespace

WeightVector add_zeros(const WeightVector& v, std::size_t count) {
  WeightVector out = v;
  out.resize(v.size() + count, 0.0);
  return out;
}

WeightVector scale(const WeightVector& v, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw Error(ErrorCode::NonPositiveFactor, "scale factor must be positive");
  WeightVector out = v;
  for (auto& w : out) w *= factor;
  return out;
}

WeightVector shift_all(const WeightVector& v, double amount) {
  if (!(amount > 0.0) || !std::isfinite(amount))
    throw Error(ErrorCode::InvalidAmount, "shift must be positive");
  WeightVector out = v;
  for (auto& w : out) w += amount;
  return out;
}

TransferResult transfer(const WeightVector& v, std::size_t receiver, std::size_t donor,
                        double amount) {
  if (receiver >= v.size() || donor >= v.size() || receiver == donor)
    throw Error(ErrorCode::InvalidTransfer, "transfer indices out of range");
  if (!(v[receiver] > v[donor]))
    throw Error(ErrorCode::InvalidTransfer, "receiver must be strictly heavier than donor");
  if (!(amount > 0.0) || amount > v[donor])
    throw Error(ErrorCode::InvalidTransfer, "amount must lie in (0, donor weight]");

  const double gained = v[receiver] + amount;
  const double lost = v[donor] - amount;
  WeightVector rest;
  rest.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != receiver && i != donor) rest.push_back(v[i]);

  // Receiver goes ahead of equal weights, donor behind them.
  const auto gained_pos =
      std::partition_point(rest.begin(), rest.end(), [&](double w) { return w > gained; });
  const auto rank = static_cast<std::size_t>(gained_pos - rest.begin()) + 1;
  rest.insert(gained_pos, gained);
  const auto lost_pos =
      std::partition_point(rest.begin(), rest.end(), [&](double w) { return w >= lost; });
  rest.insert(lost_pos, lost);
  return {std::move(rest), rank};
}

WeightVector enrich_top(const WeightVector& v, double amount) {
  if (v.empty() || !(amount > 0.0) || !std::isfinite(amount))
    throw Error(ErrorCode::InvalidAmount, "enrichment needs a positive amount and weights");
  WeightVector out = v;
  out.front() += amount;
  return out;
}

WeightVector impoverish_bottom(const WeightVector& v, double amount) {
  if (v.empty() || !(amount > 0.0) || amount > v.back())
    throw Error(ErrorCode::InvalidAmount, "impoverishment amount must lie in (0, lowest weight]");
  WeightVector out = v;
  out.back() -= amount;
  sort_descending(out);
  return out;
}

CutoffFunction bind_cutoff(const CutoffSpec& spec) {
  spec.validate();
  return [spec](std::span<const double> weights) { return compute_cutoff(weights, spec); };
}

namespace {

PropertyVerdict pass(Property p) { return {p, true, std::nullopt}; }

PropertyVerdict fail(Property p, const WeightVector& v, const TransformParams& params,
                     WeightVector transformed, std::size_t before, std::size_t after,
                     std::string note, std::optional<std::size_t> rank = std::nullopt) {
  Witness w{v, params, std::move(transformed), before, after, rank, std::move(note)};
  return {p, false, std::move(w)};
}

bool is_one_hot(const WeightVector& v) {
  return !v.empty() && v.front() > 0.0 &&
         std::all_of(v.begin() + 1, v.end(), [](double w) { return w == 0.0; });
}

bool is_uniform(const WeightVector& v) {
  return !v.empty() && v.front() > 0.0 &&
         std::all_of(v.begin(), v.end(), [&](double w) { return w == v.front(); });
}

}  // namespace

PropertyVerdict check_property(const CutoffFunction& cutoff, Property property,
                               const WeightVector& v, const TransformParams& params) {
  validate_vector(v);
  if (v.empty() || !(v.front() > 0.0))
    throw Error(ErrorCode::InvalidArgument, "property checks need a positive weight");
  const std::size_t before = cutoff(v);

  switch (property) {
    case Property::P1: {
      if (!is_one_hot(v)) throw Error(ErrorCode::InvalidArgument, "P1 needs {w,0,...,0}");
      if (before == 1) return pass(property);
      return fail(property, v, params, v, before, before, "cutoff on a one-hot vector is not 1");
    }
    case Property::P2: {
      if (!is_uniform(v)) throw Error(ErrorCode::InvalidArgument, "P2 needs a uniform vector");
      if (params.rivals.empty()) throw Error(ErrorCode::InvalidArgument, "P2 needs rivals");
      const double total = sum(v);
      for (const auto& rival : params.rivals) {
        validate_vector(rival);
        if (rival.size() != v.size() || std::abs(sum(rival) - total) > 1e-9 * total)
          throw Error(ErrorCode::InvalidArgument, "P2 rivals need the same length and sum");
        const std::size_t other = cutoff(rival);
        if (before < other)
          return fail(property, v, params, rival, before, other,
                      "a less uniform vector gets a larger cutoff");
      }
      return pass(property);
    }
    case Property::P3: {
      auto t = add_zeros(v, params.zeros);
      const std::size_t after = cutoff(t);
      if (after == before) return pass(property);
      return fail(property, v, params, std::move(t), before, after, "adding zeros moved the cutoff");
    }
    case Property::P4: {
      auto t = scale(v, params.factor);
      const std::size_t after = cutoff(t);
      if (after == before) return pass(property);
      return fail(property, v, params, std::move(t), before, after, "scaling moved the cutoff");
    }
    case Property::P5: {
      auto t = shift_all(v, params.shift);
      const std::size_t after = cutoff(t);
      if (before <= after) return pass(property);
      return fail(property, v, params, std::move(t), before, after,
                  "a nominal increase lowered the cutoff");
    }
    case Property::P6:
    case Property::WeakP6: {
      auto tr = transfer(v, params.receiver, params.donor, params.transfer_amount);
      const std::size_t after = cutoff(tr.weights);
      bool holds;
      if (property == Property::P6)
        holds = after <= before;
      else
        holds = before < tr.receiver_rank ? before <= after : before >= after;
      if (holds) return pass(property);
      return fail(property, v, params, std::move(tr.weights), before, after,
                  property == Property::P6 ? "a transfer to a heavier term raised the cutoff"
                                           : "the cutoff moved against the receiver's new rank",
                  tr.receiver_rank);
    }
    case Property::P7: {
      if (!(params.top_amount > 0.0) && !(params.bottom_amount > 0.0))
        throw Error(ErrorCode::InvalidAmount, "P7 needs a positive amount");
      if (params.top_amount > 0.0) {
        auto t = enrich_top(v, params.top_amount);
        const std::size_t after = cutoff(t);
        if (after > before)
          return fail(property, v, params, std::move(t), before, after,
                      "enriching the top term raised the cutoff");
      }
      if (params.bottom_amount > 0.0) {
        auto t = impoverish_bottom(v, params.bottom_amount);
        const std::size_t after = cutoff(t);
        if (after > before)
          return fail(property, v, params, std::move(t), before, after,
                      "impoverishing the bottom term raised the cutoff");
      }
      return pass(property);
    }
  }
  throw Error(ErrorCode::UnsupportedProperty, "unsupported property");
}

std::optional<PropertyVerdict> check_property(const CutoffFunction& cutoff, Property property,
                                              const WeightVector& v, std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  const auto params = draw_params(property, v, rng);
  if (!params) return std::nullopt;
  return check_property(cutoff, property, v, *params);
}

namespace {

double log_uniform(std::mt19937_64& rng, double lo_exp, double hi_exp) {
  return std::pow(10.0, std::uniform_real_distribution<double>(lo_exp, hi_exp)(rng));
}

// Uniform in (0, 1].
double open_unit(std::mt19937_64& rng) {
  return 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

WeightVector zipf_counts(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> rank_weights(n);
  for (std::size_t r = 0; r < n; ++r) rank_weights[r] = 1.0 / std::pow(double(r + 1), 1.1);
  std::discrete_distribution<std::size_t> zipf(rank_weights.begin(), rank_weights.end());
  const auto tokens = static_cast<std::size_t>(
      double(n) * std::uniform_real_distribution<double>(1.0, 20.0)(rng));
  // Every rank starts at one occurrence so all weights stay positive.
  WeightVector counts(n, 1.0);
  for (std::size_t t = 0; t < tokens; ++t) counts[zipf(rng)] += 1.0;
  return counts;
}

}  // namespace

WeightVector random_weight_vector(std::mt19937_64& rng, std::size_t min_length,
                                  std::size_t max_length) {
  const auto n = std::uniform_int_distribution<std::size_t>(min_length, max_length)(rng);
  const auto generator = std::uniform_int_distribution<int>(0, 3)(rng);
  WeightVector v(n);
  switch (generator) {
    case 0: {
      const double s = log_uniform(rng, -2.0, 3.0);
      for (auto& w : v) w = s * open_unit(rng);
      break;
    }
    case 1: {
      const double s = log_uniform(rng, -2.0, 3.0);
      std::exponential_distribution<double> exp(1.0);
      for (auto& w : v) w = s * std::max(exp(rng), 1e-12);
      break;
    }
    case 2: {
      const double s = log_uniform(rng, -2.0, 3.0);
      std::uniform_real_distribution<double> jitter(0.5, 1.5);
      for (std::size_t r = 0; r < n; ++r) v[r] = s * jitter(rng) / std::pow(double(r + 1), 1.1);
      break;
    }
    default:
      v = zipf_counts(rng, n);
      break;
  }
  sort_descending(v);
  return v;
}

WeightVector property_input(Property property, const WeightVector& base) {
  switch (property) {
    case Property::P1: {
      WeightVector v(base.size(), 0.0);
      v.front() = base.front();
      return v;
    }
    case Property::P2:
      return WeightVector(base.size(), mean(base));
    default:
      return base;
  }
}

std::optional<TransformParams> draw_params(Property property, const WeightVector& input,
                                           std::mt19937_64& rng) {
  TransformParams p;
  const std::size_t n = input.size();
  switch (property) {
    case Property::P1:
      return p;
    case Property::P2: {
      const double total = sum(input);
      auto rescaled = [total](WeightVector r) {
        const double s = sum(r);
        for (auto& w : r) w *= total / s;
        sort_descending(r);
        return r;
      };
      p.rivals.push_back(rescaled(random_weight_vector(rng, n, n)));
      WeightVector near = input;
      std::uniform_real_distribution<double> noise(0.95, 1.05);
      for (auto& w : near) w *= noise(rng);
      p.rivals.push_back(rescaled(std::move(near)));
      return p;
    }
    case Property::P3:
      p.zeros = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(n, 1))(rng);
      return p;
    case Property::P4:
      p.factor = log_uniform(rng, -3.0, 3.0);
      return p;
    case Property::P5:
      p.shift = mean(input) * log_uniform(rng, -3.0, 1.0);
      return p;
    case Property::P6:
    case Property::WeakP6: {
      std::vector<std::size_t> donors;
      for (std::size_t d = 1; d < n; ++d)
        if (input[d] > 0.0 && input[d] < input.front()) donors.push_back(d);
      if (donors.empty()) return std::nullopt;
      p.donor = donors[std::uniform_int_distribution<std::size_t>(0, donors.size() - 1)(rng)];
      const auto heavier = static_cast<std::size_t>(
          std::partition_point(input.begin(), input.end(),
                               [&](double w) { return w > input[p.donor]; }) -
          input.begin());
      p.receiver = std::uniform_int_distribution<std::size_t>(0, heavier - 1)(rng);
      const bool full = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < 0.1;
      p.transfer_amount = full ? input[p.donor] : input[p.donor] * open_unit(rng);
      return p;
    }
    case Property::P7: {
      p.top_amount = mean(input) * log_uniform(rng, -3.0, 1.0);
      if (input.back() > 0.0) {
        const bool full = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < 0.1;
        p.bottom_amount = full ? input.back() : input.back() * open_unit(rng);
      }
      return p;
    }
  }
  throw Error(ErrorCode::UnsupportedProperty, "unsupported property");
}

double draw_param(CutoffKind kind, std::mt19937_64& rng) {
  switch (kind) {
    case CutoffKind::FN:
      return static_cast<double>(std::uniform_int_distribution<int>(1, 250)(rng));
    case CutoffKind::FP:
    case CutoffKind::VT:
    case CutoffKind::SC:
      return std::uniform_real_distribution<double>(1.0, 100.0)(rng);
    case CutoffKind::RC:
      return std::uniform_real_distribution<double>(0.0, 99.0)(rng);
    case CutoffKind::AT:
      return log_uniform(rng, -2.0, 2.0);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown cutoff kind");
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
  return derive_seed(seed, trial);
}

namespace {

struct TrialOutcome {
  CutoffSpec cutoff;
  std::array<std::optional<PropertyVerdict>, kAllProperties.size()> verdicts;
};

TrialOutcome run_trial(CutoffKind kind, std::optional<double> param, std::uint64_t seed,
                       std::size_t trial) {
  std::mt19937_64 rng(trial_seed(seed, trial));
  const auto base = random_weight_vector(rng);
  TrialOutcome out;
  out.cutoff = {kind, param ? *param : draw_param(kind, rng)};
  const auto fn = bind_cutoff(out.cutoff);
  for (std::size_t k = 0; k < kAllProperties.size(); ++k) {
    const auto property = kAllProperties[k];
    const auto input = property_input(property, base);
    const auto params = draw_params(property, input, rng);
    if (params) out.verdicts[k] = check_property(fn, property, input, *params);
  }
  return out;
}

SuiteReport tally(CutoffKind kind, std::optional<double> param, std::uint64_t seed,
                  std::vector<TrialOutcome>& outcomes) {
  SuiteReport report;
  report.kind = kind;
  report.param = param;
  report.n_trials = outcomes.size();
  report.seed = seed;
  for (const auto p : kAllProperties) report.tallies[p];
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    for (std::size_t k = 0; k < kAllProperties.size(); ++k) {
      auto& verdict = outcomes[t].verdicts[k];
      if (!verdict) continue;
      auto& entry = report.tallies[kAllProperties[k]];
      ++entry.trials;
      if (verdict->holds) {
        ++entry.passes;
      } else if (!entry.first_counterexample) {
        entry.first_counterexample = Counterexample{t, outcomes[t].cutoff, std::move(*verdict->witness)};
      }
    }
  }
  return report;
}

void require_trials(std::size_t n_trials, std::optional<double> param, CutoffKind kind) {
  if (n_trials < 1) throw Error(ErrorCode::InvalidArgument, "the suite needs at least one trial");
  if (param) CutoffSpec{kind, *param}.validate();
}

}  // namespace

SuiteReport run_axiom_suite_serial(CutoffKind kind, std::optional<double> param,
                                   std::size_t n_trials, std::uint64_t seed) {
  require_trials(n_trials, param, kind);
  std::vector<TrialOutcome> outcomes;
  outcomes.reserve(n_trials);
  for (std::size_t t = 0; t < n_trials; ++t) outcomes.push_back(run_trial(kind, param, seed, t));
  return tally(kind, param, seed, outcomes);
}

SuiteReport run_axiom_suite(CutoffKind kind, std::optional<double> param, std::size_t n_trials,
                            std::uint64_t seed) {
  require_trials(n_trials, param, kind);
  std::vector<TrialOutcome> outcomes(n_trials);
  const auto n = static_cast<std::ptrdiff_t>(n_trials);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    try {
      outcomes[t] = run_trial(kind, param, seed, static_cast<std::size_t>(t));
    } catch (...) {
#pragma omp critical(termcut_suite_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return tally(kind, param, seed, outcomes);
}

const char* to_string(Expectation expectation) noexcept {
  switch (expectation) {
    case Expectation::Holds: return "holds";
    case Expectation::Fails: return "fails";
    case Expectation::Exempt: return "exempt";
  }
  return "unknown";
}

ExpectMode parse_expect_mode(std::string_view name) {
  if (name == "table1") return ExpectMode::Table1;
  if (name == "all") return ExpectMode::All;
  throw Error(ErrorCode::InvalidArgument, "unknown expectation mode '" + std::string(name) + "'");
}

Expectation table1_expectation(CutoffKind kind, Property property) noexcept {
  using enum Property;
  constexpr auto H = Expectation::Holds;
  constexpr auto F = Expectation::Fails;
  constexpr auto X = Expectation::Exempt;
  switch (kind) {
    case CutoffKind::FP:
      // Empty P1/P2 cells are "not verified", not "violated".
      switch (property) {
        case P3: return F;
        case P4: case P5: case P6: case P7: return H;
        default: return X;
      }
    case CutoffKind::VT:
      switch (property) {
        case P6: return F;
        case WeakP6: return X;
        default: return H;
      }
    case CutoffKind::RC:
      switch (property) {
        case P3: case P6: return F;
        case WeakP6: return X;
        default: return H;
      }
    case CutoffKind::SC:
      return property == P6 ? F : H;
    case CutoffKind::AT:
      return property == P4 ? F : X;
    case CutoffKind::FN:
      return X;
  }
  return X;
}

Expectation expectation(ExpectMode mode, CutoffKind kind, Property property) noexcept {
  return mode == ExpectMode::All ? Expectation::Holds : table1_expectation(kind, property);
}

bool expectation_met(Expectation expectation, const PropertyTally& tally) noexcept {
  switch (expectation) {
    case Expectation::Holds: return tally.failures() == 0;
    case Expectation::Fails: return tally.failures() > 0;
    case Expectation::Exempt: return true;
  }
  return false;
}

bool all_expectations_met(const SuiteReport& report, ExpectMode mode) {
  for (const auto& [property, t] : report.tallies)
    if (!expectation_met(expectation(mode, report.kind, property), t)) return false;
  return true;
}

std::string report_to_json(const SuiteReport& report, ExpectMode mode) {
  using nlohmann::ordered_json;
  ordered_json properties = ordered_json::object();
  for (const auto p : kAllProperties) {
    const auto& t = report.tallies.at(p);
    const auto e = expectation(mode, report.kind, p);
    ordered_json entry = {{"trials", t.trials},
                          {"passes", t.passes},
                          {"failures", t.failures()},
                          {"expectation", to_string(e)},
                          {"met", expectation_met(e, t)}};
    if (t.first_counterexample) {
      const auto& c = *t.first_counterexample;
      const auto& w = c.witness;
      ordered_json params = {{"zeros", w.params.zeros},
                             {"factor", w.params.factor},
                             {"shift", w.params.shift},
                             {"receiver", w.params.receiver},
                             {"donor", w.params.donor},
                             {"transfer_amount", w.params.transfer_amount},
                             {"top_amount", w.params.top_amount},
                             {"bottom_amount", w.params.bottom_amount},
                             {"rivals", w.params.rivals}};
      ordered_json ce = {{"trial", c.trial},
                         {"param", c.cutoff.param},
                         {"note", w.note},
                         {"cutoff_before", w.cutoff_before},
                         {"cutoff_after", w.cutoff_after},
                         {"receiver_rank", w.receiver_rank ? ordered_json(*w.receiver_rank)
                                                           : ordered_json(nullptr)},
                         {"input", w.input},
                         {"transformed", w.transformed},
                         {"params", params}};
      entry["counterexample"] = std::move(ce);
    }
    properties[to_string(p)] = std::move(entry);
  }
  const ordered_json j = {
      {"cutoff", to_string(report.kind)},
      {"param", report.param ? ordered_json(*report.param) : ordered_json(nullptr)},
      {"trials", report.n_trials},
      {"seed", report.seed},
      {"expect", mode == ExpectMode::All ? "all" : "table1"},
      {"all_met", all_expectations_met(report, mode)},
      {"properties", properties},
  };
  return j.dump(2);
}

bool similarity_drops_under_shift(std::span<const double> v, double shift, double tolerance) {
  const WeightVector base(v.begin(), v.end());
  const PrefixSimilarity before(base);
  const PrefixSimilarity after(shift_all(base, shift));
  for (std::size_t i = 1; i <= base.size(); ++i)
    if (after.at(i) > before.at(i) + tolerance) return false;
  return true;
}

bool similarity_rises_under_enrichment(std::span<const double> v, double amount,
                                       double tolerance) {
  const WeightVector base(v.begin(), v.end());
  const PrefixSimilarity before(base);
  const PrefixSimilarity after(enrich_top(base, amount));
  for (std::size_t i = 1; i <= base.size(); ++i)
    if (after.at(i) < before.at(i) - tolerance) return false;
  return true;
}

AppendixReport verify_similarity_proofs(std::size_t pairs, std::uint64_t seed) {
  AppendixReport report;
  report.pairs = pairs;
  for (std::size_t t = 0; t < pairs; ++t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    auto v = random_weight_vector(rng);
    const double h = mean(v) * log_uniform(rng, -3.0, 1.0);
    if (!similarity_drops_under_shift(v, h)) ++report.shift_violations;
    if (!similarity_rises_under_enrichment(v, h)) ++report.enrichment_violations;

    auto params = draw_params(Property::WeakP6, v, rng);
    while (!params) {
      v = random_weight_vector(rng);
      params = draw_params(Property::WeakP6, v, rng);
    }
    const CutoffSpec sc{CutoffKind::SC, draw_param(CutoffKind::SC, rng)};
    if (!check_property(bind_cutoff(sc), Property::WeakP6, v, *params).holds)
      ++report.weak_transfer_violations;
  }
  return report;
}

}  // namespace termcut::axioms
