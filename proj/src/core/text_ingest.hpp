#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "core/hmm.hpp"

namespace hmmforge {

// Character vocabulary over Unicode code points, sorted by code point so that
// independently built vocabularies over the same alphabet agree.
struct CharVocab {
  std::vector<char32_t> glyphs;
  std::unordered_map<char32_t, std::int32_t> index;

  int size() const { return static_cast<int>(glyphs.size()); }
};

// Decodes UTF-8 into code points; throws Error{InvalidArgument} on malformed
// input.
std::vector<char32_t> decode_utf8(std::string_view text);
std::string encode_utf8(char32_t cp);

CharVocab build_vocab(std::string_view corpus);

std::vector<std::int32_t> encode(const CharVocab& vocab, std::string_view text);
std::string decode(const CharVocab& vocab, std::span<const std::int32_t> tokens);

// Fixed-length windows over the encoded corpus; the final partial chunk is
// dropped. stride == t gives non-overlapping chunks.
Dataset chunk(std::string_view corpus, const CharVocab& vocab, int t, int stride);

// Seeded shuffle of sequence indices; the last ceil(val_fraction*N) go to
// validation.
std::pair<Dataset, Dataset> split(const Dataset& dataset, double val_fraction,
                                  std::uint64_t seed);

}  // namespace hmmforge
