#include "core/text_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "core/rng.hpp"

namespace hmmforge {

std::vector<char32_t> decode_utf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    int extra = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      extra = 1;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      extra = 2;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      extra = 3;
    } else {
      throw Error(ErrorCode::InvalidArgument, "malformed UTF-8 input");
    }
    if (extra > 0 && i + static_cast<std::size_t>(extra) >= text.size()) {
      throw Error(ErrorCode::InvalidArgument, "truncated UTF-8 sequence");
    }
    for (int k = 1; k <= extra; ++k) {
      const auto b = static_cast<unsigned char>(text[i + static_cast<std::size_t>(k)]);
      if ((b & 0xC0) != 0x80) {
        throw Error(ErrorCode::InvalidArgument, "malformed UTF-8 continuation");
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(extra) + 1;
  }
  return out;
}

std::string encode_utf8(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

CharVocab build_vocab(std::string_view corpus) {
  if (corpus.empty()) throw Error(ErrorCode::InvalidArgument, "empty corpus");
  const auto points = decode_utf8(corpus);
  std::set<char32_t> unique(points.begin(), points.end());
  CharVocab vocab;
  vocab.glyphs.assign(unique.begin(), unique.end());
  for (std::size_t k = 0; k < vocab.glyphs.size(); ++k) {
    vocab.index[vocab.glyphs[k]] = static_cast<std::int32_t>(k);
  }
  return vocab;
}

std::vector<std::int32_t> encode(const CharVocab& vocab, std::string_view text) {
  const auto points = decode_utf8(text);
  std::vector<std::int32_t> out;
  out.reserve(points.size());
  for (char32_t cp : points) {
    auto it = vocab.index.find(cp);
    if (it == vocab.index.end()) {
      throw Error(ErrorCode::InvalidArgument, "character not in vocabulary");
    }
    out.push_back(it->second);
  }
  return out;
}

std::string decode(const CharVocab& vocab, std::span<const std::int32_t> tokens) {
  std::string out;
  for (std::int32_t id : tokens) {
    if (id < 0 || id >= vocab.size()) {
      throw Error(ErrorCode::InvalidArgument, "token id not in vocabulary");
    }
    out += encode_utf8(vocab.glyphs[static_cast<std::size_t>(id)]);
  }
  return out;
}

Dataset chunk(std::string_view corpus, const CharVocab& vocab, int t, int stride) {
  if (t < 2) throw Error(ErrorCode::InvalidArgument, "chunk length must be >= 2");
  if (stride < 1) throw Error(ErrorCode::InvalidArgument, "stride must be >= 1");
  const auto tokens = encode(vocab, corpus);
  if (tokens.size() < static_cast<std::size_t>(t)) {
    throw Error(ErrorCode::InvalidArgument, "corpus shorter than chunk length");
  }
  const std::size_t count =
      (tokens.size() - static_cast<std::size_t>(t)) / static_cast<std::size_t>(stride) + 1;
  Dataset out;
  out.m = vocab.size();
  out.sequences.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t begin = k * static_cast<std::size_t>(stride);
    out.sequences.emplace_back(tokens.begin() + static_cast<std::ptrdiff_t>(begin),
                               tokens.begin() + static_cast<std::ptrdiff_t>(begin) +
                                   static_cast<std::ptrdiff_t>(t));
  }
  for (std::size_t k = 0; k < vocab.glyphs.size(); ++k) {
    out.glyphs[static_cast<std::int32_t>(k)] = encode_utf8(vocab.glyphs[k]);
  }
  return out;
}

std::pair<Dataset, Dataset> split(const Dataset& dataset, double val_fraction,
                                  std::uint64_t seed) {
  if (val_fraction <= 0.0 || val_fraction >= 1.0) {
    throw Error(ErrorCode::InvalidArgument, "val_fraction must lie in (0,1)");
  }
  const std::size_t n = dataset.sequences.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 sequences to split");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  RngEngine rng = make_engine(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const auto n_val = static_cast<std::size_t>(
      std::ceil(val_fraction * static_cast<double>(n)));
  Dataset train;
  Dataset val;
  train.m = val.m = dataset.m;
  train.glyphs = val.glyphs = dataset.glyphs;
  for (std::size_t k = 0; k < n; ++k) {
    auto& dst = (k + n_val >= n) ? val : train;
    dst.sequences.push_back(dataset.sequences[order[k]]);
  }
  return {std::move(train), std::move(val)};
}

}  // namespace hmmforge
