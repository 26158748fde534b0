#include "core/text_ingest.hpp"
#include "doctest.h"

using namespace hmmforge;

TEST_CASE("build_vocab orders glyphs by code point") {
  auto vocab = build_vocab("abca");
  CHECK(vocab.size() == 3);
  CHECK(vocab.glyphs == std::vector<char32_t>{U'a', U'b', U'c'});

  auto reordered = build_vocab("ba");
  CHECK(reordered.glyphs == std::vector<char32_t>{U'a', U'b'});

  CHECK_THROWS_AS(build_vocab(""), Error);
}

TEST_CASE("encode/decode round-trips, including multibyte glyphs") {
  const std::string corpus = "héllo wörld\nßß";
  auto vocab = build_vocab(corpus);
  auto tokens = encode(vocab, corpus);
  CHECK(decode(vocab, tokens) == corpus);
  for (std::int32_t id : tokens) CHECK(id < vocab.size());

  CHECK_THROWS_AS(encode(vocab, "z"), Error);
}

TEST_CASE("chunk counts follow the floor rule") {
  const std::string corpus = "abcdefghij";  // 10 chars
  auto vocab = build_vocab(corpus);
  CHECK(chunk(corpus, vocab, 4, 4).sequences.size() == 2);
  CHECK(chunk(corpus, vocab, 4, 2).sequences.size() == 4);
  CHECK_THROWS_AS(chunk("ab", vocab, 4, 4), Error);

  auto ds = chunk(corpus, vocab, 4, 4);
  CHECK(ds.m == vocab.size());
  CHECK(decode(vocab, ds.sequences[0]) == "abcd");
  CHECK(decode(vocab, ds.sequences[1]) == "efgh");
}

TEST_CASE("chunking at stride=t over a large corpus hits the expected count") {
  std::string corpus;
  corpus.reserve(1'024'000);
  for (std::size_t i = 0; i < 1'024'000; ++i) {
    corpus.push_back(static_cast<char>('a' + i % 26));
  }
  auto vocab = build_vocab(corpus);
  CHECK(chunk(corpus, vocab, 256, 256).sequences.size() == 4000);
}

TEST_CASE("split is seeded, disjoint and exhaustive") {
  std::string corpus(40, 'x');
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    corpus[i] = static_cast<char>('a' + i % 4);
  }
  auto vocab = build_vocab(corpus);
  auto ds = chunk(corpus, vocab, 4, 4);  // 10 sequences
  auto [train, val] = split(ds, 0.1, 5);
  CHECK(train.sequences.size() == 9);
  CHECK(val.sequences.size() == 1);

  auto [train2, val2] = split(ds, 0.1, 5);
  CHECK(train.sequences == train2.sequences);
  CHECK(val.sequences == val2.sequences);

  std::size_t total = train.sequences.size() + val.sequences.size();
  CHECK(total == ds.sequences.size());

  Dataset tiny;
  tiny.m = 2;
  tiny.sequences = {{0, 1}};
  CHECK_THROWS_AS(split(tiny, 0.1, 0), Error);
}

TEST_CASE("malformed UTF-8 is rejected") {
  CHECK_THROWS_AS(decode_utf8("\xff"), Error);
  CHECK_THROWS_AS(decode_utf8("\xc3"), Error);  // truncated two-byte sequence
}
