#include "termcut/text.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <fstream>

#include "termcut/error.hpp"

namespace termcut {
namespace {

void append_utf8(std::string& out, UChar32 cp) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, cp, error);
  if (!error) out.append(buf, static_cast<std::size_t>(len));
}

std::string lowercase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto n = static_cast<int32_t>(text.size());
  for (int32_t i = 0; i < n;) {
    UChar32 cp;
    U8_NEXT(s, i, n, cp);
    if (cp >= 0) append_utf8(out, u_tolower(cp));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const StopwordSet& stopwords) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t current_chars = 0;
  auto flush = [&] {
    if (current_chars >= 2 && !stopwords.contains(current)) tokens.push_back(current);
    current.clear();
    current_chars = 0;
  };

  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto n = static_cast<int32_t>(text.size());
  for (int32_t i = 0; i < n;) {
    UChar32 cp;
    U8_NEXT(s, i, n, cp);
    if (cp >= 0 && u_isalnum(cp)) {
      append_utf8(current, u_tolower(cp));
      ++current_chars;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

StopwordSet read_stopwords(std::istream& in) {
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    const auto word = trim(line);
    if (!word.empty()) words.insert(lowercase(word));
  }
  return words;
}

StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open stopword file " + path);
  return read_stopwords(in);
}

}  // namespace termcut
