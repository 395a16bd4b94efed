#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace termcut {

using StopwordSet = std::unordered_set<std::string>;

/// Lowercases `text`, splits it on every run of non-alphanumeric code points
/// and drops stopwords and tokens shorter than two code points. Token order
/// follows the input. Invalid UTF-8 sequences act as separators.
std::vector<std::string> tokenize(std::string_view text, const StopwordSet& stopwords);

/// One token per line; blank lines and surrounding whitespace are ignored.
/// Entries are lowercased so they match tokenizer output.
StopwordSet read_stopwords(std::istream& in);
StopwordSet load_stopwords(const std::string& path);

}  // namespace termcut
