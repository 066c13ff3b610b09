#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "feature_invariants.h"
#include "mtqe/error.h"
#include "mtqe/features.h"
#include "test_util.h"

namespace mtqe {
namespace {

struct Models {
  NgramModel src;
  NgramModel tgt;
  TranslationLexicon lexicon;
};

ParallelCorpus random_corpus(std::mt19937_64& rng, std::size_t n) {
  ParallelCorpus c;
  for (std::size_t i = 0; i < n; ++i) {
    c.pairs.push_back({i, testing::random_sentence(rng, 10, testing::source_vocab()),
                       testing::random_sentence(rng, 10, testing::target_vocab())});
  }
  return c;
}

Models models_for(const ParallelCorpus& c) {
  return {train_lm(c.side(Side::kSource), 3), train_lm(c.side(Side::kTarget), 3),
          build_lexicon(c, 0.2)};
}

const Models& fixture() {
  static const Models m = [] {
    ParallelCorpus c;
    c.pairs.push_back({0, {"ab", "cde", "hello", "world"}, {"क", "ख"}});
    c.pairs.push_back({1, {"hello", ",", "world", "."}, {"क", ",", "।"}});
    return models_for(c);
  }();
  return m;
}

FeatureVector extract(const TokenSeq& src, const TokenSeq& tgt) {
  const Models& m = fixture();
  return extract_features({0, src, tgt}, m.src, m.tgt, m.lexicon);
}

TEST_CASE("direct arithmetic features") {
  const FeatureVector a = extract({"ab", "cde"}, {"क", "क", "ख"});
  CHECK(a[Feature::kSrcTokenCount] == 2);
  CHECK(a[Feature::kAvgSrcTokenLen] == 2.5);
  CHECK(a[Feature::kTgtTokenCount] == 3);
  CHECK(a[Feature::kTgtTokensPerType] == 1.5);

  const FeatureVector b = extract({"hello", ",", "world", "."}, {});
  CHECK(b[Feature::kSrcPunctCount] == 2);
  CHECK(b[Feature::kTgtTokenCount] == 0);
  CHECK(b[Feature::kTgtTokensPerType] == 0);

  const FeatureVector danda = extract({}, {"क", "।", "॥"});
  CHECK(danda[Feature::kTgtPunctCount] == 2);
  CHECK(danda[Feature::kAvgSrcTokenLen] == 0);
}

TEST_CASE("token length counts Unicode scalars") {
  const FeatureVector fv = extract({"é", "ab"}, {});
  CHECK(fv[Feature::kAvgSrcTokenLen] == 1.5);
}

TEST_CASE("one-token source has no bigram or trigram percentages") {
  const FeatureVector fv = extract({"hello"}, {"क"});
  CHECK(fv[Feature::kPctLowFreqBigrams] == 0);
  CHECK(fv[Feature::kPctHighFreqBigrams] == 0);
  CHECK(fv[Feature::kPctHighFreqTrigrams] == 0);
  CHECK(fv[Feature::kPctLowFreqTrigrams] == 0);
  CHECK(fv[Feature::kPctUnigramsSeen] == 100.0);
}

TEST_CASE("seen-unigram percentage") {
  const FeatureVector fv = extract({"ab", "cde", "hello", "unknown"}, {});
  CHECK(fv[Feature::kPctUnigramsSeen] == 75.0);
}

TEST_CASE("n-gram percentages follow freq_class") {
  const Models& m = fixture();
  const TokenSeq src = {"hello", "world", "ab", "zz", "hello", "world"};
  const FeatureVector fv = extract(src, {});
  for (std::size_t n = 1; n <= 3; ++n) {
    std::size_t low = 0, high = 0;
    const auto grams = ngrams(src, n);
    for (const auto& g : grams) {
      low += m.src.freq_class(g) == FreqClass::kLow;
      high += m.src.freq_class(g) == FreqClass::kHigh;
    }
    const double pl = 100.0 * static_cast<double>(low) / static_cast<double>(grams.size());
    const double ph = 100.0 * static_cast<double>(high) / static_cast<double>(grams.size());
    if (n == 1) {
      CHECK(fv[Feature::kPctLowFreqUnigrams] == pl);
      CHECK(fv[Feature::kPctHighFreqUnigrams] == ph);
    } else if (n == 2) {
      CHECK(fv[Feature::kPctLowFreqBigrams] == pl);
      CHECK(fv[Feature::kPctHighFreqBigrams] == ph);
    } else {
      // Slot 12 is the high-frequency trigram share, slot 13 the low one.
      CHECK(fv.values[11] == ph);
      CHECK(fv.values[12] == pl);
    }
  }
}

TEST_CASE("LM and lexicon features delegate to their modules") {
  const Models& m = fixture();
  const TokenSeq src = {"hello", "world"};
  const TokenSeq tgt = {"क", "ख"};
  const FeatureVector fv = extract(src, tgt);
  CHECK(fv[Feature::kSrcLmLogProb] == m.src.sentence_log_prob(src));
  CHECK(fv[Feature::kTgtLmLogProb] == m.tgt.sentence_log_prob(tgt));
  CHECK(fv[Feature::kAvgTranslationsPerWord] == translations_per_word(m.lexicon, src));
}

TEST_CASE("models below order 3 are rejected") {
  const Models& m = fixture();
  const NgramModel bigram = train_lm({{"a"}}, 2);
  CHECK_THROWS_AS(extract_features({0, {"a"}, {"b"}}, bigram, m.tgt, m.lexicon),
                  InvalidArgument);
}

TEST_CASE("feature invariants over random pairs") {
  std::mt19937_64 rng(101);
  const ParallelCorpus train = random_corpus(rng, 40);
  const Models m = models_for(train);
  for (int trial = 0; trial < 1000; ++trial) {
    auto vocab = testing::source_vocab();
    vocab.push_back("novel");
    const SentencePair p{0, testing::random_sentence(rng, 7, vocab),
                         testing::random_sentence(rng, 7, testing::target_vocab())};
    const FeatureVector fv = extract_features(p, m.src, m.tgt, m.lexicon);
    const auto bad = testing::feature_violations(fv);
    CHECK_MESSAGE(bad.empty(), (bad.empty() ? "" : bad.front()));
  }
}

TEST_CASE("permuting the target changes only f5 among target features") {
  std::mt19937_64 rng(102);
  const ParallelCorpus train = random_corpus(rng, 30);
  const Models m = models_for(train);
  for (int trial = 0; trial < 200; ++trial) {
    SentencePair p{0, testing::random_sentence(rng, 6, testing::source_vocab()),
                   testing::random_sentence(rng, 8, testing::target_vocab())};
    const FeatureVector before = extract_features(p, m.src, m.tgt, m.lexicon);
    std::shuffle(p.target.begin(), p.target.end(), rng);
    const FeatureVector after = extract_features(p, m.src, m.tgt, m.lexicon);
    for (std::size_t i = 0; i < kNumFeatures; ++i) {
      if (i == static_cast<std::size_t>(Feature::kTgtLmLogProb)) continue;
      CHECK(before[i] == after[i]);
    }
  }
}

TEST_CASE("appending source punctuation bumps f1 and f15 by one") {
  std::mt19937_64 rng(103);
  const ParallelCorpus train = random_corpus(rng, 30);
  const Models m = models_for(train);
  for (int trial = 0; trial < 200; ++trial) {
    SentencePair p{0, testing::random_sentence(rng, 6, testing::source_vocab()),
                   testing::random_sentence(rng, 6, testing::target_vocab())};
    const FeatureVector before = extract_features(p, m.src, m.tgt, m.lexicon);
    p.source.push_back(rng() % 2 ? "." : "!");
    const FeatureVector after = extract_features(p, m.src, m.tgt, m.lexicon);
    CHECK(after[Feature::kSrcTokenCount] == before[Feature::kSrcTokenCount] + 1);
    CHECK(after[Feature::kSrcPunctCount] == before[Feature::kSrcPunctCount] + 1);
  }
}

TEST_CASE("extraction is pure and thread count does not change results") {
  std::mt19937_64 rng(104);
  const ParallelCorpus c = random_corpus(rng, 97);
  const Models m = models_for(c);
  const auto serial = extract_all(c, m.src, m.tgt, m.lexicon, 1);
  CHECK(extract_all(c, m.src, m.tgt, m.lexicon, 1) == serial);
  CHECK(extract_all(c, m.src, m.tgt, m.lexicon, 4) == serial);
  CHECK(extract_all(c, m.src, m.tgt, m.lexicon, 200) == serial);
  CHECK(extract_all(ParallelCorpus{}, m.src, m.tgt, m.lexicon, 4).empty());
}

TEST_CASE("feature CSV") {
  testing::TempDir dir;
  SUBCASE("zero rows give a header-only file") {
    write_features({}, dir.file("f.csv"));
    CHECK(testing::slurp(dir.file("f.csv")) ==
          "id,f1,f2,f3,f4,f5,f6,f7,f8,f9,f10,f11,f12,f13,f14,f15,f16\n");
    CHECK(read_features(dir.file("f.csv")).empty());
  }
  SUBCASE("round trip within 1e-6, sorted by id") {
    std::mt19937_64 rng(105);
    const ParallelCorpus c = random_corpus(rng, 20);
    const Models m = models_for(c);
    std::vector<FeatureRow> rows;
    for (const auto& p : c.pairs) {
      rows.push_back({19 - p.id, extract_features(p, m.src, m.tgt, m.lexicon),
                      kAllGrades[p.id % 4]});
    }
    write_features(rows, dir.file("f.csv"));
    const auto back = read_features(dir.file("f.csv"));
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      CHECK(back[i].id == i);
      const FeatureRow& orig = rows[19 - i];
      CHECK(back[i].grade == orig.grade);
      for (std::size_t f = 0; f < kNumFeatures; ++f) {
        CHECK(std::abs(back[i].features[f] - orig.features[f]) <= 1e-6);
      }
    }
    const std::string text = testing::slurp(dir.file("f.csv"));
    CHECK(text.starts_with("id,f1,f2,f3,f4,f5,f6,f7,f8,f9,f10,f11,f12,f13,f14,f15,f16,grade\n"));
  }
  SUBCASE("mixed labeling is rejected") {
    std::vector<FeatureRow> rows = {{0, {}, Grade::kGood}, {1, {}, std::nullopt}};
    CHECK_THROWS_AS(write_features(rows, dir.file("f.csv")), MixedLabeling);
    CHECK_FALSE(std::filesystem::exists(dir.file("f.csv")));
    std::string labeled = format_features({{0, {}, Grade::kGood}});
    labeled += "1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,\n";
    CHECK_THROWS_AS(parse_features(labeled), MixedLabeling);
  }
  SUBCASE("malformed input") {
    CHECK_THROWS_AS(parse_features(""), MalformedHeader);
    CHECK_THROWS_AS(parse_features("id,f1\n"), MalformedHeader);
    const std::string header = format_features({});
    CHECK_THROWS_AS(parse_features(header + "0,1,2\n"), MalformedRow);
    CHECK_THROWS_AS(parse_features(header + "0,x,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0\n"),
                    MalformedRow);
    const std::string row = "0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0\n";
    CHECK_THROWS_AS(parse_features(header + row + row), MalformedRow);
  }
}

}  // namespace
}  // namespace mtqe
