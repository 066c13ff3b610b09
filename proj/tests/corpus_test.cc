#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "mtqe/corpus.h"
#include "mtqe/error.h"
#include "test_util.h"

namespace mtqe {
namespace {

std::string join(const TokenSeq& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

TEST_CASE("tokenize examples") {
  CHECK(tokenize("The boy ran.", Side::kSource) == TokenSeq{"the", "boy", "ran", "."});
  CHECK(tokenize("लड़का दौड़ा।", Side::kTarget) == TokenSeq{"लड़का", "दौड़ा", "।"});
  CHECK(tokenize("", Side::kSource).empty());
  CHECK(tokenize("", Side::kTarget).empty());
}

TEST_CASE("tokenize detaches punctuation at both ends only") {
  CHECK(tokenize("(Hello), world!!", Side::kSource) ==
        TokenSeq{"(", "hello", ")", ",", "world", "!", "!"});
  CHECK(tokenize("can't e.g. U.S.", Side::kSource) ==
        TokenSeq{"can't", "e.g", ".", "u.s", "."});
  CHECK(tokenize("...", Side::kTarget) == TokenSeq{".", ".", "."});
  CHECK(tokenize("  \t spaced　out  ", Side::kTarget) ==
        TokenSeq{"spaced", "out"});
}

TEST_CASE("target side keeps case") {
  CHECK(tokenize("The Boy", Side::kTarget) == TokenSeq{"The", "Boy"});
}

TEST_CASE("tokenize is idempotent on its own output") {
  const std::vector<std::string> pieces = {
      "Word", "x", ".", ",", "।", "॥", "(", ")", "\"", "क्या", "e.g", "--", "A", " ",
      " ", "\t", "लड़का", "?!", "'s", "Ünïcödé"};
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    const std::size_t n = rng() % 12;
    for (std::size_t i = 0; i < n; ++i) text += pieces[rng() % pieces.size()];
    for (Side side : {Side::kSource, Side::kTarget}) {
      const TokenSeq once = tokenize(text, side);
      CHECK(tokenize(join(once), side) == once);
      for (const auto& t : once) CHECK_FALSE(t.empty());
    }
  }
}

TEST_CASE("load_parallel") {
  testing::TempDir dir;
  SUBCASE("two lines become pairs 0 and 1") {
    testing::write_text(dir.file("s"), "The boy ran.\nA girl sat.\n");
    testing::write_text(dir.file("t"), "लड़का दौड़ा।\nलड़की बैठी।\n");
    const ParallelCorpus c = load_parallel(dir.file("s"), dir.file("t"));
    REQUIRE(c.size() == 2);
    CHECK(c.pairs[0].id == 0);
    CHECK(c.pairs[1].id == 1);
    CHECK(c.pairs[1].source == TokenSeq{"a", "girl", "sat", "."});
  }
  SUBCASE("line count mismatch reports both counts") {
    testing::write_text(dir.file("s"), "a\nb\nc\n");
    testing::write_text(dir.file("t"), "x\ny\n");
    try {
      load_parallel(dir.file("s"), dir.file("t"));
      FAIL("expected LineCountMismatch");
    } catch (const LineCountMismatch& e) {
      CHECK(e.n_src() == 3);
      CHECK(e.n_tgt() == 2);
    }
  }
  SUBCASE("empty files give an empty corpus") {
    testing::write_text(dir.file("s"), "");
    testing::write_text(dir.file("t"), "");
    CHECK(load_parallel(dir.file("s"), dir.file("t")).size() == 0);
  }
  SUBCASE("blank lines are degenerate but valid pairs") {
    testing::write_text(dir.file("s"), "\nhello\n");
    testing::write_text(dir.file("t"), "नमस्ते\n\n");
    const ParallelCorpus c = load_parallel(dir.file("s"), dir.file("t"));
    REQUIRE(c.size() == 2);
    CHECK(c.pairs[0].source.empty());
    CHECK(c.pairs[1].target.empty());
  }
  SUBCASE("invalid encoding names the line") {
    testing::write_text(dir.file("s"), "ok\nbad \xff byte\n");
    testing::write_text(dir.file("t"), "a\nb\n");
    try {
      load_parallel(dir.file("s"), dir.file("t"));
      FAIL("expected InvalidEncoding");
    } catch (const InvalidEncoding& e) {
      CHECK(e.line_no() == 2);
    }
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_parallel(dir.file("nope"), dir.file("nope")), IoFailure);
  }
}

TEST_CASE("writing pairs back out round-trips the token content") {
  testing::TempDir dir;
  testing::write_text(dir.file("s"), "  The  boy, ran.\nWhy?\n");
  testing::write_text(dir.file("t"), "लड़का   दौड़ा।\nक्यों?\n");
  const ParallelCorpus first = load_parallel(dir.file("s"), dir.file("t"));
  std::string src, tgt;
  for (const auto& p : first.pairs) {
    src += join(p.source) + "\n";
    tgt += join(p.target) + "\n";
  }
  testing::write_text(dir.file("s2"), src);
  testing::write_text(dir.file("t2"), tgt);
  const ParallelCorpus second = load_parallel(dir.file("s2"), dir.file("t2"));
  REQUIRE(second.size() == first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(second.pairs[i].source == first.pairs[i].source);
    CHECK(second.pairs[i].target == first.pairs[i].target);
  }
}

const std::string kHeader = "id\tp1\tp2\tp3\tp4\tp5\tp6\tp7\tp8\tp9\tp10\n";

TEST_CASE("load_judgments") {
  SUBCASE("all fours") {
    const auto js = parse_judgments(kHeader + "0\t4\t4\t4\t4\t4\t4\t4\t4\t4\t4\n");
    REQUIRE(js.size() == 1);
    CHECK(js[0].sentence_id == 0);
    for (int p : js[0].params) CHECK(p == 4);
  }
  SUBCASE("score 5 is out of range at row 1, p2") {
    try {
      parse_judgments(kHeader + "0\t4\t4\t4\t4\t4\t4\t4\t4\t4\t4\n" +
                      "1\t2\t5\t0\t0\t0\t0\t0\t0\t0\t0\n");
      FAIL("expected OutOfRangeScore");
    } catch (const OutOfRangeScore& e) {
      CHECK(e.row() == 1);
      CHECK(e.col() == 2);
      CHECK(e.value() == 5);
    }
  }
  SUBCASE("negative score") {
    CHECK_THROWS_AS(parse_judgments(kHeader + "0\t-1\t0\t0\t0\t0\t0\t0\t0\t0\t0\n"),
                    OutOfRangeScore);
  }
  SUBCASE("nine params is malformed") {
    CHECK_THROWS_AS(parse_judgments(kHeader + "0\t1\t1\t1\t1\t1\t1\t1\t1\t1\n"),
                    MalformedRow);
  }
  SUBCASE("non-integer cell is malformed") {
    CHECK_THROWS_AS(parse_judgments(kHeader + "0\t1\t1\t1.5\t1\t1\t1\t1\t1\t1\t1\n"),
                    MalformedRow);
  }
  SUBCASE("duplicate ids are malformed") {
    const std::string row = "3\t1\t1\t1\t1\t1\t1\t1\t1\t1\t1\n";
    CHECK_THROWS_AS(parse_judgments(kHeader + row + row), MalformedRow);
  }
  SUBCASE("header must match exactly") {
    CHECK_THROWS_AS(parse_judgments("id p1 p2\n"), MalformedHeader);
    CHECK_THROWS_AS(parse_judgments(""), MalformedHeader);
  }
  SUBCASE("header only") { CHECK(parse_judgments(kHeader).empty()); }
  SUBCASE("from file") {
    testing::TempDir dir;
    testing::write_text(dir.file("j.tsv"),
                        kHeader + "7\t0\t1\t2\t3\t4\t0\t1\t2\t3\t4\n");
    const auto js = load_judgments(dir.file("j.tsv"));
    REQUIRE(js.size() == 1);
    CHECK(js[0].sentence_id == 7);
    CHECK(js[0].params[4] == 4);
  }
}

TEST_CASE("corpus_stats examples") {
  ParallelCorpus c;
  c.pairs.push_back({0, {"a", "b"}, {}});
  c.pairs.push_back({1, {"a", "c"}, {}});
  CHECK(corpus_stats(c, Side::kSource) == CorpusStats{2, 4, 3});
  CHECK(corpus_stats(c, Side::kTarget) == CorpusStats{2, 0, 0});
  CHECK(corpus_stats(ParallelCorpus{}, Side::kSource) == CorpusStats{0, 0, 0});
}

TEST_CASE("unique words never exceed words; equality iff no repeats") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<TokenSeq> sentences;
    const std::size_t n = rng() % 6;
    std::multiset<std::string> all;
    for (std::size_t i = 0; i < n; ++i) {
      sentences.push_back(testing::random_sentence(rng, 5, testing::source_vocab()));
      all.insert(sentences.back().begin(), sentences.back().end());
    }
    const CorpusStats s = corpus_stats(sentences);
    CHECK(s.unique_words <= s.words);
    const bool repeats = std::set<std::string>(all.begin(), all.end()).size() != all.size();
    CHECK((s.unique_words == s.words) == !repeats);
  }
}

}  // namespace
}  // namespace mtqe
