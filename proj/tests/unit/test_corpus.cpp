#include <gtest/gtest.h>

#include <sstream>

#include "termcut/corpus.hpp"
#include "termcut/error.hpp"
#include "termcut/text.hpp"

using namespace termcut;

namespace {

std::vector<RawRecord> three_records() {
  return {{"r1", "s1", "c1", "i1", "educación pública"},
          {"r2", "s1", "c1", "i2", "sanidad pública"},
          {"r3", "s1", "c2", "i3", "empleo joven"}};
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no termcut::Error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Tokenize, LowercasesAndDropsStopwords) {
  EXPECT_EQ(tokenize("La educación, la educación pública", {"la"}),
            (std::vector<std::string>{"educación", "educación", "pública"}));
}

TEST(Tokenize, EmptyText) { EXPECT_TRUE(tokenize("", {}).empty()); }

TEST(Tokenize, SplitsOnPunctuationAndDropsShortTokens) {
  EXPECT_EQ(tokenize("A1-b2 c", {}), (std::vector<std::string>{"a1", "b2"}));
}

TEST(Tokenize, NonAsciiUppercase) {
  EXPECT_EQ(tokenize("ÉPOCA Ñandú", {}), (std::vector<std::string>{"época", "ñandú"}));
}

TEST(Tokenize, InvalidUtf8ActsAsSeparator) {
  EXPECT_EQ(tokenize("ab\xff" "cd", {}), (std::vector<std::string>{"ab", "cd"}));
}

TEST(Stopwords, TrimmedAndLowercased) {
  std::istringstream in("  La \n\nDE\r\n");
  const auto s = read_stopwords(in);
  EXPECT_EQ(s, (StopwordSet{"la", "de"}));
}

TEST(BuildCollection, GroupingModes) {
  const auto records = three_records();
  EXPECT_EQ(build_collection(records, GroupingMode::Committee, {}).documents.size(), 2u);
  EXPECT_EQ(build_collection(records, GroupingMode::All, {}).documents.size(), 1u);
  EXPECT_EQ(build_collection(records, GroupingMode::Initiative, {}).documents.size(), 3u);
}

TEST(BuildCollection, DocumentIdsAndFrequencies) {
  const auto c = build_collection(three_records(), GroupingMode::Committee, {});
  ASSERT_EQ(c.documents[0].doc_id, "s1|c1");
  EXPECT_EQ(c.documents[0].frequency("pública"), 2);
  EXPECT_EQ(c.documents[0].length, 4);
  EXPECT_EQ(c.documents[1].group_id, "c2");
  EXPECT_NE(c.find("s1|c2"), nullptr);
  EXPECT_EQ(c.find("s1|c3"), nullptr);
}

TEST(BuildCollection, RejectsRecordsWithoutGroupId) {
  auto records = three_records();
  records[2].committee_id.clear();
  const auto c = build_collection(records, GroupingMode::Committee, {});
  EXPECT_EQ(c.documents.size(), 1u);
  EXPECT_EQ(c.diagnostics.rejected_records, 1u);
}

TEST(BuildCollection, DropsGroupsWithoutTokens) {
  auto records = three_records();
  records[2].text = "a , b";
  const auto c = build_collection(records, GroupingMode::Committee, {});
  EXPECT_EQ(c.documents.size(), 1u);
  EXPECT_EQ(c.diagnostics.dropped_groups, 1u);
}

TEST(BuildCollection, DuplicateRecordIdIsMalformed) {
  auto records = three_records();
  records[1].record_id = "r1";
  EXPECT_EQ(code_of([&] { build_collection(records, GroupingMode::All, {}); }),
            ErrorCode::MalformedInput);
}

TEST(BuildCollection, OrderIndependent) {
  auto records = three_records();
  const auto a = build_collection(records, GroupingMode::Committee, {});
  std::reverse(records.begin(), records.end());
  EXPECT_EQ(a, build_collection(records, GroupingMode::Committee, {}));
}

TEST(CollectionStats, HandCount) {
  TokenizedDocument d1{"d1", "s", "", {{"a", 2}, {"b", 1}}, 3};
  TokenizedDocument d2{"d2", "s", "", {{"a", 1}}, 1};
  const auto s = collection_stats({d1, d2});
  EXPECT_EQ(s.num_documents, 2);
  EXPECT_EQ(s.total_occurrences, 4);
  EXPECT_EQ(s.doc_freq.at("a"), 2);
  EXPECT_EQ(s.coll_freq.at("a"), 3);
  EXPECT_EQ(s.doc_freq.at("b"), 1);
}

TEST(CollectionStats, SingleDocument) {
  const auto s = collection_stats({TokenizedDocument{"d", "s", "", {{"a", 1}}, 1}});
  EXPECT_EQ(s.num_documents, 1);
  EXPECT_EQ(s.total_occurrences, 1);
}

namespace {

std::vector<RawRecord> speaker_with(const std::string& speaker, int initiatives) {
  std::vector<RawRecord> out;
  for (int i = 0; i < initiatives; ++i)
    out.push_back({speaker + "-" + std::to_string(i), speaker, "c", "i" + std::to_string(i),
                   "words here"});
  return out;
}

}  // namespace

TEST(FilterSpeakers, FewerThanTenRemoved) {
  auto records = speaker_with("nine", 9);
  const auto ten = speaker_with("ten", 10);
  records.insert(records.end(), ten.begin(), ten.end());
  const auto c = build_collection(records, GroupingMode::Initiative, {});
  const auto f = filter_speakers(c, 10);
  for (const auto& d : f.documents) EXPECT_EQ(d.speaker_id, "ten");
  EXPECT_EQ(f.documents.size(), 10u);
  EXPECT_EQ(f.stats, collection_stats(f.documents));
  EXPECT_EQ(filter_speakers(c, 0), c);

  const auto kept = filter_speaker_records(records, 10);
  EXPECT_EQ(kept.size(), 10u);
}

TEST(Jsonl, ReadsOptionalIds) {
  std::istringstream in(
      R"({"record_id":"1","speaker_id":"s","text":"hola mundo"})"
      "\n\n"
      R"({"record_id":"2","speaker_id":"s","committee_id":"c","initiative_id":null,"text":"x"})"
      "\n");
  const auto r = read_records_jsonl(in);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].committee_id, "");
  EXPECT_EQ(r[1].committee_id, "c");
  EXPECT_EQ(r[1].initiative_id, "");
}

TEST(Jsonl, MalformedLineIsNamed) {
  std::istringstream in(R"({"record_id":"1","speaker_id":"s","text":"a"})"
                        "\n{not json\n");
  try {
    read_records_jsonl(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedInput);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Jsonl, MissingKeyIsNamed) {
  std::istringstream in(R"({"record_id":"1","text":"a"})");
  try {
    read_records_jsonl(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("speaker_id"), std::string::npos);
  }
}

TEST(CollectionFile, RoundTrip) {
  const auto c = build_collection(three_records(), GroupingMode::Committee, {});
  std::stringstream buf;
  write_collection(buf, c);
  EXPECT_EQ(read_collection(buf), c);
}

TEST(CollectionFile, RejectsTamperedStats) {
  const auto c = build_collection(three_records(), GroupingMode::Committee, {});
  std::stringstream buf;
  write_collection(buf, c);
  auto text = buf.str();
  const auto pos = text.find("\"occurrences\": 6");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 16, "\"occurrences\": 7");
  std::istringstream in(text);
  EXPECT_EQ(code_of([&] { read_collection(in); }), ErrorCode::MalformedInput);
}

TEST(Modes, ParseAndPrint) {
  EXPECT_EQ(parse_mode("committee"), GroupingMode::Committee);
  EXPECT_STREQ(to_string(GroupingMode::Initiative), "initiative");
  EXPECT_EQ(code_of([] { parse_mode("speaker"); }), ErrorCode::UnknownMode);
}
