#include "termcut/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "termcut/error.hpp"
#include "termcut/seed.hpp"

namespace termcut {
namespace {

std::string term_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "term%05zu", index);
  return buf;
}

}  // namespace

std::vector<RawRecord> synthetic_corpus(const SyntheticCorpusSpec& spec) {
  if (spec.speakers == 0 || spec.vocabulary == 0 || spec.initiatives_per_speaker == 0 ||
      spec.records_per_initiative == 0 || spec.tokens_per_record == 0 || spec.committees == 0)
    throw Error(ErrorCode::InvalidArgument, "synthetic corpus sizes must be positive");
  if (!(spec.overlap >= 0.0 && spec.overlap < 1.0))
    throw Error(ErrorCode::InvalidArgument, "overlap must lie in [0,1)");

  const auto stride = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(double(spec.vocabulary) * (1.0 - spec.overlap))));
  std::vector<double> zipf(spec.vocabulary);
  for (std::size_t r = 0; r < spec.vocabulary; ++r)
    zipf[r] = 1.0 / std::pow(double(r + 1), spec.zipf_exponent);

  std::vector<RawRecord> records;
  std::size_t initiative = 0;
  for (std::size_t s = 0; s < spec.speakers; ++s) {
    std::mt19937_64 rng(derive_seed(spec.seed, s));
    // Each speaker favours its window's terms in its own random order.
    std::vector<std::size_t> window(spec.vocabulary);
    std::iota(window.begin(), window.end(), s * stride);
    std::shuffle(window.begin(), window.end(), rng);
    std::discrete_distribution<std::size_t> pick(zipf.begin(), zipf.end());

    char speaker[32];
    std::snprintf(speaker, sizeof speaker, "mp%03zu", s);
    for (std::size_t i = 0; i < spec.initiatives_per_speaker; ++i, ++initiative) {
      char init_id[32];
      std::snprintf(init_id, sizeof init_id, "init%04zu", initiative);
      char committee[32];
      std::snprintf(committee, sizeof committee, "com%02zu", (s + i) % spec.committees);
      for (std::size_t k = 0; k < spec.records_per_initiative; ++k) {
        std::string text;
        for (std::size_t t = 0; t < spec.tokens_per_record; ++t) {
          if (!text.empty()) text += ' ';
          text += term_name(window[pick(rng)]);
        }
        records.push_back({std::string(init_id) + "-" + speaker + "-" + std::to_string(k), speaker,
                           committee, init_id, std::move(text)});
      }
    }
  }
  return records;
}

}  // namespace termcut
