#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "termcut/axioms.hpp"
#include "termcut/concentration.hpp"
#include "termcut/corpus.hpp"
#include "termcut/cutoff.hpp"
#include "termcut/error.hpp"
#include "termcut/evaluation.hpp"
#include "termcut/synthetic.hpp"
#include "termcut/weighting.hpp"

namespace termcut::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Usage-level failures detected after CLI11 parsing (bad config, bad ranges).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kModes = {"all", "committee", "initiative"};
const std::vector<std::string> kMeasures = {"tf", "tfidf", "ppmi", "diff"};
const std::vector<std::string> kCutoffs = {"fn", "fp", "at", "vt", "rc", "sc"};

void write_file(const fs::path& dir, const std::string& name,
                const std::function<void(std::ostream&)>& body) {
  fs::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  body(out);
  if (!out) throw Error(ErrorCode::InvalidArgument, "failed writing " + path.string());
}

std::string fmt(double value, const char* spec = "%.4f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, value);
  return buf;
}

StopwordSet stopwords_or_empty(const std::string& path) {
  return path.empty() ? StopwordSet{} : load_stopwords(path);
}

CutoffSpec make_cutoff(const std::string& kind, double param) {
  CutoffSpec spec{parse_cutoff_kind(kind), param};
  try {
    spec.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return spec;
}

// ---- ingest

struct IngestArgs {
  std::string input, stopwords, mode = "all", out;
  std::int64_t min_initiatives = 0;
};

int cmd_ingest(const IngestArgs& a, std::ostream& out) {
  const auto records = load_records_jsonl(a.input);
  auto collection = build_collection(records, parse_mode(a.mode), stopwords_or_empty(a.stopwords));
  if (a.min_initiatives > 0) collection = filter_speakers(collection, a.min_initiatives);
  write_file(a.out, "collection.json", [&](std::ostream& o) { write_collection(o, collection); });
  out << "documents " << collection.stats.num_documents << ", occurrences "
      << collection.stats.total_occurrences << ", terms " << collection.stats.doc_freq.size()
      << ", rejected records " << collection.diagnostics.rejected_records << ", dropped groups "
      << collection.diagnostics.dropped_groups << '\n';
  return kOk;
}

// ---- profile

struct ProfileArgs {
  std::string collection, measure, cutoff, out;
  double param = 0.0;
  bool ranked = false;
};

int cmd_profile(const ProfileArgs& a, std::ostream& out) {
  const auto spec = make_cutoff(a.cutoff, a.param);
  const auto measure = parse_measure(a.measure);
  const auto collection = load_collection(a.collection);
  const auto rankings = rank_collection(collection, measure);
  const auto profiles = build_profiles(rankings, spec);

  const std::string stem = std::string(to_string(measure)) + "_" + spec.label();
  write_file(a.out, "profiles_" + stem + ".jsonl",
             [&](std::ostream& o) { write_profiles_jsonl(o, profiles); });
  if (a.ranked)
    write_file(a.out, "ranked_" + std::string(to_string(measure)) + ".csv",
               [&](std::ostream& o) { write_ranked_csv(o, rankings); });

  double sum = 0.0, sq = 0.0;
  for (const auto& p : profiles) sum += static_cast<double>(p.l());
  const double n = static_cast<double>(profiles.size());
  const double mean = profiles.empty() ? 0.0 : sum / n;
  for (const auto& p : profiles) sq += (static_cast<double>(p.l()) - mean) * (static_cast<double>(p.l()) - mean);
  const double sd = profiles.empty() ? 0.0 : std::sqrt(sq / n);
  out << "profiles " << profiles.size() << ", " << stem << ", mean l " << fmt(mean, "%.2f")
      << " +- " << fmt(sd, "%.2f") << '\n';
  return kOk;
}

// ---- axioms

struct AxiomsArgs {
  std::string cutoff, expect = "table1", out;
  std::optional<double> param;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
};

int cmd_axioms(const AxiomsArgs& a, std::ostream& out) {
  const auto kind = parse_cutoff_kind(a.cutoff);
  if (a.param) make_cutoff(a.cutoff, *a.param);
  const auto mode = axioms::parse_expect_mode(a.expect);
  const auto report = axioms::run_axiom_suite(kind, a.param, a.trials, a.seed);
  const bool met = axioms::all_expectations_met(report, mode);

  if (!a.out.empty()) {
    const std::string name = "axioms_" + (a.param ? CutoffSpec{kind, *a.param}.label()
                                                  : std::string(to_string(kind))) +
                             ".json";
    write_file(a.out, name, [&](std::ostream& o) { o << axioms::report_to_json(report, mode) << '\n'; });
  }
  for (const auto& [property, t] : report.tallies) {
    const auto e = axioms::expectation(mode, kind, property);
    out << axioms::to_string(property) << ": " << t.passes << "/" << t.trials << " pass";
    if (t.failures() > 0) out << ", " << t.failures() << " counterexamples";
    out << " (expected " << axioms::to_string(e) << ", "
        << (axioms::expectation_met(e, t) ? "ok" : "UNEXPECTED") << ")\n";
  }
  out << (met ? "all expectations met" : "expectations not met") << '\n';
  return met ? kOk : kExpectationFailed;
}

// ---- analyze

struct AnalyzeArgs {
  std::string collection, measure, out;
  std::vector<double> thresholds = {70, 80, 90, 95, 99};
  double bin_width = 0.25;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  if (!(a.bin_width > 0.0)) throw UsageError("--bin-width must be positive");
  for (const double t : a.thresholds)
    if (!(t > 0.0 && t <= 100.0)) throw UsageError("--thresholds must lie in (0,100]");
  const auto measure = parse_measure(a.measure);
  const auto collection = load_collection(a.collection);
  const auto rankings = rank_collection(collection, measure);

  std::vector<ConcentrationCurve> curves;
  for (const auto& r : rankings)
    if (!r.empty()) curves.push_back(concentration_curve(r));
  const auto bins = cv_histogram(rankings, a.bin_width);
  const auto table = cutoff_vs_size_table(rankings, a.thresholds);

  const std::string m = to_string(measure);
  write_file(a.out, "curves_" + m + ".csv", [&](std::ostream& o) { write_curves_csv(o, curves); });
  write_file(a.out, "cv_histogram_" + m + ".csv",
             [&](std::ostream& o) { write_histogram_csv(o, bins); });
  write_file(a.out, "cutoff_sizes_" + m + ".csv",
             [&](std::ostream& o) { write_cutoff_table_csv(o, table); });
  out << "curves " << curves.size() << ", histogram bins " << bins.size() << ", table rows "
      << table.rows.size() << '\n';
  return kOk;
}

// ---- evaluate

template <typename T>
T config_value(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("config key '") + key + "' has the wrong type");
  }
}

struct EvaluateInputs {
  std::string corpus, stopwords;
  HoldoutConfig config;
};

EvaluateInputs read_evaluate_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");

  static const char* const kRequired[] = {"corpus",     "mode",           "measure",
                                          "cutoff",     "param",          "min_initiatives",
                                          "train_fraction", "repetitions", "seed"};
  std::string missing;
  for (const char* key : kRequired)
    if (!j.contains(key)) missing += (missing.empty() ? "" : ", ") + std::string(key);
  if (!missing.empty()) throw UsageError("config is missing required key(s): " + missing);

  // Relative paths are taken relative to the config file.
  const auto base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    return fs::path(p).is_absolute() ? p : (base / p).string();
  };

  EvaluateInputs in_;
  in_.corpus = resolve(config_value<std::string>(j, "corpus"));
  if (j.contains("stopwords")) in_.stopwords = resolve(config_value<std::string>(j, "stopwords"));
  auto& c = in_.config;
  try {
    c.mode = parse_mode(config_value<std::string>(j, "mode"));
    c.measure = parse_measure(config_value<std::string>(j, "measure"));
    c.cutoff = {parse_cutoff_kind(config_value<std::string>(j, "cutoff")),
                config_value<double>(j, "param")};
    c.min_initiatives = config_value<std::int64_t>(j, "min_initiatives");
    c.train_fraction = config_value<double>(j, "train_fraction");
    c.repetitions = config_value<std::size_t>(j, "repetitions");
    c.seed = config_value<std::uint64_t>(j, "seed");
    if (j.contains("bm25")) {
      const auto& b = j.at("bm25");
      if (b.contains("k1")) c.bm25.k1 = config_value<double>(b, "k1");
      if (b.contains("b")) c.bm25.b = config_value<double>(b, "b");
    }
    if (j.contains("query_depth")) c.query_depth = config_value<std::size_t>(j, "query_depth");
    if (j.contains("ndcg_depth")) c.ndcg_depth = config_value<std::size_t>(j, "ndcg_depth");
    c.validate();
  } catch (const Error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return in_;
}

struct EvaluateArgs {
  std::string config, out;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const auto inputs = read_evaluate_config(a.config);
  if (!fs::exists(inputs.corpus)) throw UsageError("corpus file not found: " + inputs.corpus);
  const auto records = load_records_jsonl(inputs.corpus);
  const auto report = holdout_evaluate(records, stopwords_or_empty(inputs.stopwords), inputs.config);
  write_file(a.out, "evaluation.json", [&](std::ostream& o) { write_report_json(o, report); });
  write_file(a.out, "evaluation.csv", [&](std::ostream& o) { write_report_csv(o, report); });
  out << "NDCG@" << inputs.config.ndcg_depth << " " << fmt(report.grand_mean) << " +- "
      << fmt(report.grand_stddev) << " over " << report.repetitions.size() << " repetitions\n";
  return kOk;
}

// ---- synth

struct SynthArgs {
  SyntheticCorpusSpec spec;
  std::string out;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  const auto records = synthetic_corpus(a.spec);
  write_file(a.out, "synthetic.jsonl", [&](std::ostream& o) {
    for (const auto& r : records) {
      const nlohmann::ordered_json j = {{"record_id", r.record_id},
                                        {"speaker_id", r.speaker_id},
                                        {"committee_id", r.committee_id},
                                        {"initiative_id", r.initiative_id},
                                        {"text", r.text}};
      o << j.dump() << '\n';
    }
  });
  out << "records " << records.size() << '\n';
  return kOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnknownMode:
    case ErrorCode::UnsupportedProperty:
      return kUsage;
    default:
      return kDataError;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Term-selection cutoffs for speaker profiles", "termcut"};
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* s_ingest = app.add_subcommand("ingest", "Build a collection file from JSONL records");
  s_ingest->add_option("--input", ingest.input, "JSONL corpus")->required()->check(CLI::ExistingFile);
  s_ingest->add_option("--stopwords", ingest.stopwords, "Stopword list")->check(CLI::ExistingFile);
  s_ingest->add_option("--mode", ingest.mode, "Grouping mode")->check(CLI::IsMember(kModes))->capture_default_str();
  s_ingest->add_option("--min-initiatives", ingest.min_initiatives, "Drop speakers below this")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  s_ingest->add_option("--out", ingest.out, "Output directory")->required();

  ProfileArgs profile;
  auto* s_profile = app.add_subcommand("profile", "Weight, rank and cut every document");
  s_profile->add_option("--collection", profile.collection)->required()->check(CLI::ExistingFile);
  s_profile->add_option("--measure", profile.measure)->required()->check(CLI::IsMember(kMeasures));
  s_profile->add_option("--cutoff", profile.cutoff)->required()->check(CLI::IsMember(kCutoffs));
  s_profile->add_option("--param", profile.param)->required();
  s_profile->add_flag("--ranked", profile.ranked, "Also write the full ranked term lists");
  s_profile->add_option("--out", profile.out)->required();

  AxiomsArgs ax;
  auto* s_axioms = app.add_subcommand("axioms", "Randomized property check of a cutoff");
  s_axioms->add_option("--cutoff", ax.cutoff)->required()->check(CLI::IsMember(kCutoffs));
  s_axioms->add_option("--param", ax.param, "Fixed parameter; drawn per trial when absent");
  s_axioms->add_option("--trials", ax.trials)->check(CLI::PositiveNumber)->capture_default_str();
  s_axioms->add_option("--seed", ax.seed)->capture_default_str();
  s_axioms->add_option("--expect", ax.expect)->check(CLI::IsMember({"table1", "all"}))->capture_default_str();
  s_axioms->add_option("--out", ax.out, "Directory for the JSON report");

  AnalyzeArgs an;
  auto* s_analyze = app.add_subcommand("analyze", "Concentration curves, CV histogram, cutoff sizes");
  s_analyze->add_option("--collection", an.collection)->required()->check(CLI::ExistingFile);
  s_analyze->add_option("--measure", an.measure)->required()->check(CLI::IsMember(kMeasures));
  s_analyze->add_option("--thresholds", an.thresholds, "SC thresholds")->delimiter(',')->capture_default_str();
  s_analyze->add_option("--bin-width", an.bin_width)->capture_default_str();
  s_analyze->add_option("--out", an.out)->required();

  EvaluateArgs ev;
  auto* s_evaluate = app.add_subcommand("evaluate", "Repeated holdout retrieval evaluation");
  s_evaluate->add_option("--config", ev.config, "JSON configuration")->required()->check(CLI::ExistingFile);
  s_evaluate->add_option("--out", ev.out)->required();

  SynthArgs sy;
  auto* s_synth = app.add_subcommand("synth", "Generate a synthetic JSONL corpus");
  s_synth->add_option("--speakers", sy.spec.speakers)->capture_default_str();
  s_synth->add_option("--vocabulary", sy.spec.vocabulary)->capture_default_str();
  s_synth->add_option("--overlap", sy.spec.overlap)->capture_default_str();
  s_synth->add_option("--initiatives", sy.spec.initiatives_per_speaker)->capture_default_str();
  s_synth->add_option("--records", sy.spec.records_per_initiative)->capture_default_str();
  s_synth->add_option("--tokens", sy.spec.tokens_per_record)->capture_default_str();
  s_synth->add_option("--committees", sy.spec.committees)->capture_default_str();
  s_synth->add_option("--seed", sy.spec.seed)->capture_default_str();
  s_synth->add_option("--out", sy.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*s_ingest) return cmd_ingest(ingest, out);
    if (*s_profile) return cmd_profile(profile, out);
    if (*s_axioms) return cmd_axioms(ax, out);
    if (*s_analyze) return cmd_analyze(an, out);
    if (*s_evaluate) return cmd_evaluate(ev, out);
    if (*s_synth) return cmd_synth(sy, out);
  } catch (const UsageError& e) {
    err << "termcut: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "termcut: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "termcut: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace termcut::cli
