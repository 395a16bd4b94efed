#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using termcut::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "termcut");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::set<std::string> listing(const fs::path& dir) {
  std::set<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) names.insert(e.path().filename().string());
  return names;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("termcut_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Synthetic corpus and its collection, under sub-directory `sub`.
  std::string make_collection(const std::string& sub, const std::string& overlap = "0.5") {
    EXPECT_EQ(cli({"synth", "--speakers", "6", "--overlap", overlap, "--out", path(sub)}).code, 0);
    EXPECT_EQ(cli({"ingest", "--input", path(sub + "/synthetic.jsonl"), "--mode", "committee",
                   "--out", path(sub)})
                  .code,
              0);
    return path(sub + "/collection.json");
  }

  fs::path dir_;
};

const std::string kData = TERMCUT_TEST_DATA;

}  // namespace

TEST_F(Cli, IngestValidFile) {
  const auto r = cli({"ingest", "--input", kData + "/three_records.jsonl", "--stopwords",
                      kData + "/stopwords.txt", "--mode", "all", "--out", path("o")});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(path("o/collection.json")));
  EXPECT_EQ(j["format"], "termcut-collection");
  EXPECT_EQ(j["version"], 1);
  EXPECT_LE(j["documents"].size(), 3u);
  EXPECT_EQ(listing(path("o")), (std::set<std::string>{"collection.json"}));
}

TEST_F(Cli, IngestCommitteeRejectsEmptyIds) {
  const auto r = cli({"ingest", "--input", kData + "/three_records.jsonl", "--mode", "committee",
                      "--out", path("o")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("rejected records 1"), std::string::npos) << r.out;
}

TEST_F(Cli, IngestMalformedNamesLine) {
  const auto r = cli({"ingest", "--input", kData + "/malformed.jsonl", "--out", path("o")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("o/collection.json")));
}

TEST_F(Cli, MissingInputIsUsageError) {
  EXPECT_EQ(cli({"ingest", "--input", path("nope.jsonl"), "--out", path("o")}).code, 1);
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(Cli, ProfileUnknownMeasureIsUsageError) {
  const auto c = make_collection("c");
  const auto r = cli({"profile", "--collection", c, "--measure", "bm25", "--cutoff", "sc",
                      "--param", "90", "--out", path("p")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(cli({"profile", "--collection", c, "--measure", "diff", "--cutoff", "rc", "--param",
                 "100", "--out", path("p")})
                .code,
            1);
}

TEST_F(Cli, ProfileScReportsMeanSize) {
  const auto c = make_collection("c");
  const auto r = cli({"profile", "--collection", c, "--measure", "diff", "--cutoff", "sc",
                      "--param", "99.7", "--out", path("p")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("mean l "), std::string::npos);
  EXPECT_NE(r.out.find(" +- "), std::string::npos);
  EXPECT_TRUE(fs::exists(path("p/profiles_diff_sc99.7.jsonl")));
}

TEST_F(Cli, ProfileFnBoundsSize) {
  const auto c = make_collection("c");
  ASSERT_EQ(cli({"profile", "--collection", c, "--measure", "tf", "--cutoff", "fn", "--param",
                 "750", "--out", path("p")})
                .code,
            0);
  std::ifstream in(path("p/profiles_tf_fn750.jsonl"));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_LE(j["l"].get<int>(), 750);
    EXPECT_EQ(j["terms"].size(), j["l"].get<std::size_t>());
    ++rows;
  }
  EXPECT_GT(rows, 0u);
}

TEST_F(Cli, AxiomsExitCodes) {
  auto sc = cli({"axioms", "--cutoff", "sc", "--trials", "300", "--seed", "42", "--out", path("a")});
  EXPECT_EQ(sc.code, 0) << sc.out;
  EXPECT_NE(sc.out.find("P6: "), std::string::npos);
  EXPECT_NE(sc.out.find("expected fails, ok"), std::string::npos);
  const auto j = nlohmann::json::parse(slurp(path("a/axioms_sc.json")));
  EXPECT_TRUE(j["properties"]["P6"].contains("counterexample"));

  EXPECT_EQ(cli({"axioms", "--cutoff", "vt", "--trials", "300", "--expect", "table1"}).code, 0);
  EXPECT_EQ(cli({"axioms", "--cutoff", "fp", "--trials", "300", "--expect", "all"}).code, 3);
  EXPECT_EQ(cli({"axioms", "--cutoff", "sc", "--expect", "some"}).code, 1);
}

TEST_F(Cli, AnalyzeOutputsAndDeterminism) {
  const auto c = make_collection("c");
  const std::vector<std::string> args = {"analyze", "--collection", c, "--measure", "ppmi",
                                         "--thresholds", "70,90,99", "--bin-width", "0.1"};
  auto first = args, second = args;
  first.insert(first.end(), {"--out", path("a1")});
  second.insert(second.end(), {"--out", path("a2")});
  ASSERT_EQ(cli(first).code, 0);
  ASSERT_EQ(cli(second).code, 0);
  const std::set<std::string> files = {"curves_ppmi.csv", "cv_histogram_ppmi.csv",
                                       "cutoff_sizes_ppmi.csv"};
  EXPECT_EQ(listing(path("a1")), files);
  for (const auto& f : files) EXPECT_EQ(slurp(path("a1/" + f)), slurp(path("a2/" + f))) << f;

  // Each document's curve ends at (1,1).
  std::ifstream in(path("a1/curves_ppmi.csv"));
  std::string line, prev_doc, prev_line;
  std::getline(in, line);
  std::size_t docs = 0;
  auto check_end = [&] {
    if (prev_line.empty()) return;
    EXPECT_EQ(prev_line.substr(prev_line.size() - 4), ",1,1") << prev_line;
    ++docs;
  };
  while (std::getline(in, line)) {
    const auto doc = line.substr(0, line.find(','));
    if (doc != prev_doc) check_end();
    prev_doc = doc;
    prev_line = line;
  }
  check_end();
  EXPECT_GT(docs, 1u);
  const auto table = slurp(path("a1/cutoff_sizes_ppmi.csv"));
  EXPECT_EQ(table.substr(0, table.find('\n')),
            "doc_id,n,l_70,l_90,l_99,frac_70,frac_90,frac_99");
}

TEST_F(Cli, EvaluateSyntheticFixture) {
  ASSERT_EQ(cli({"synth", "--out", path("e")}).code, 0);
  std::ofstream(path("e/config.json")) << R"({"corpus": "synthetic.jsonl", "mode": "committee",
      "measure": "diff", "cutoff": "sc", "param": 95, "min_initiatives": 10,
      "train_fraction": 0.8, "repetitions": 3, "seed": 11})";
  const auto r = cli({"evaluate", "--config", path("e/config.json"), "--out", path("r1")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("NDCG@10 1.0000"), std::string::npos) << r.out;
  ASSERT_EQ(cli({"evaluate", "--config", path("e/config.json"), "--out", path("r2")}).code, 0);
  EXPECT_EQ(slurp(path("r1/evaluation.json")), slurp(path("r2/evaluation.json")));
  EXPECT_EQ(slurp(path("r1/evaluation.csv")), slurp(path("r2/evaluation.csv")));
  const auto j = nlohmann::json::parse(slurp(path("r1/evaluation.json")));
  EXPECT_EQ(j["grand_mean"], 1.0);
}

TEST_F(Cli, EvaluateMissingKeyIsNamed) {
  std::ofstream(path("config.json")) << R"({"corpus": "x.jsonl", "mode": "committee",
      "measure": "diff", "cutoff": "sc", "param": 95, "min_initiatives": 10,
      "repetitions": 3, "seed": 1})";
  const auto r = cli({"evaluate", "--config", path("config.json"), "--out", path("r")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("train_fraction"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("r")));
}

TEST_F(Cli, EvaluateBadValueIsUsageError) {
  std::ofstream(path("config.json")) << R"({"corpus": "x.jsonl", "mode": "committee",
      "measure": "diff", "cutoff": "sc", "param": 95, "min_initiatives": 10,
      "train_fraction": 1.5, "repetitions": 3, "seed": 1})";
  EXPECT_EQ(cli({"evaluate", "--config", path("config.json"), "--out", path("r")}).code, 1);
}
