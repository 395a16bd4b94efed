#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "termcut/corpus.hpp"

namespace termcut {

/// Parameters of a generated parliament-like corpus. Speaker s draws words
/// from its own vocabulary window; consecutive windows share `overlap` of
/// their terms (0 gives disjoint vocabularies). Every initiative has exactly
/// one participating speaker.
struct SyntheticCorpusSpec {
  std::size_t speakers = 20;
  std::size_t vocabulary = 50;
  double overlap = 0.0;
  std::size_t initiatives_per_speaker = 15;
  std::size_t records_per_initiative = 2;
  std::size_t tokens_per_record = 40;
  std::size_t committees = 3;
  double zipf_exponent = 1.1;
  std::uint64_t seed = 1;
};

std::vector<RawRecord> synthetic_corpus(const SyntheticCorpusSpec& spec);

}  // namespace termcut
