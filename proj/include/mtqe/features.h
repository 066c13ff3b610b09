#ifndef MTQE_FEATURES_H_
#define MTQE_FEATURES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtqe/corpus.h"
#include "mtqe/grading.h"
#include "mtqe/lexicon.h"
#include "mtqe/ngram_lm.h"

namespace mtqe {

inline constexpr std::size_t kNumFeatures = 16;

// Feature slots, numbered 1..16 in the canonical quality-estimation order.
// Note that the trigram pair is high-then-low, unlike the other n-grams.
enum class Feature : std::size_t {
  kSrcTokenCount = 0,         // f1
  kTgtTokenCount,             // f2
  kAvgSrcTokenLen,            // f3
  kSrcLmLogProb,              // f4
  kTgtLmLogProb,              // f5
  kTgtTokensPerType,          // f6
  kAvgTranslationsPerWord,    // f7
  kPctLowFreqUnigrams,        // f8
  kPctHighFreqUnigrams,       // f9
  kPctLowFreqBigrams,         // f10
  kPctHighFreqBigrams,        // f11
  kPctHighFreqTrigrams,       // f12
  kPctLowFreqTrigrams,        // f13
  kPctUnigramsSeen,           // f14
  kSrcPunctCount,             // f15
  kTgtPunctCount,             // f16
};

struct FeatureVector {
  std::array<double, kNumFeatures> values{};

  double& operator[](Feature f) { return values[static_cast<std::size_t>(f)]; }
  double operator[](Feature f) const {
    return values[static_cast<std::size_t>(f)];
  }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Requires both models to have order >= 3.
FeatureVector extract_features(const SentencePair& pair, const NgramModel& src_lm,
                               const NgramModel& tgt_lm,
                               const TranslationLexicon& lexicon);

// Extracts every pair, optionally across worker threads. Output order
// follows corpus order regardless of threads.
std::vector<FeatureVector> extract_all(const ParallelCorpus& corpus,
                                       const NgramModel& src_lm,
                                       const NgramModel& tgt_lm,
                                       const TranslationLexicon& lexicon,
                                       unsigned threads = 1);

// Contiguous n-grams of an unpadded sentence.
std::vector<TokenSeq> ngrams(const TokenSeq& tokens, std::size_t n);

struct FeatureRow {
  std::uint64_t id = 0;
  FeatureVector features;
  std::optional<Grade> grade;
};

// CSV `id,f1,...,f16[,grade]`, six decimals, rows sorted by id. Throws
// MixedLabeling if only some rows carry a grade.
std::string format_features(std::vector<FeatureRow> rows);
void write_features(const std::vector<FeatureRow>& rows, const std::string& path);

std::vector<FeatureRow> parse_features(std::string_view csv);
std::vector<FeatureRow> read_features(const std::string& path);

}  // namespace mtqe

#endif  // MTQE_FEATURES_H_
