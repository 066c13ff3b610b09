#ifndef MTQE_LEXICON_H_
#define MTQE_LEXICON_H_

#include <map>
#include <span>
#include <string>
#include <string_view>

#include "mtqe/corpus.h"

namespace mtqe {

inline constexpr double kDefaultLexiconThreshold = 0.2;

// Source word -> plausible target translations with association scores.
class TranslationLexicon {
 public:
  using Translations = std::map<Token, double>;

  TranslationLexicon() = default;
  explicit TranslationLexicon(double threshold);

  double threshold() const { return threshold_; }
  const std::map<Token, Translations>& entries() const { return entries_; }
  std::size_t size() const;  // total (source, target) pairs

  // Number of translations stored for source; 0 if absent.
  std::size_t translation_count(const Token& source) const;
  const Translations* find(const Token& source) const;

  // Requires threshold <= score <= 1.
  void add(const Token& source, const Token& target, double score);

  // `source\ttarget\tscore` rows, sorted, 17 significant digits.
  std::string serialize() const;
  // A loaded lexicon takes the smallest stored score as its threshold
  // (the default threshold when the file is empty).
  static TranslationLexicon deserialize(std::string_view tsv);
  void save(const std::string& path) const;
  static TranslationLexicon load(const std::string& path);

 private:
  double threshold_ = kDefaultLexiconThreshold;
  std::map<Token, Translations> entries_;
};

// Sentence-level Dice coefficient 2*cooc(s,t) / (sent(s) + sent(t)), where
// every count is over sentence pairs (presence, not token frequency).
double dice(std::size_t cooc, std::size_t sent_source, std::size_t sent_target);

// Keeps pairs whose Dice score is >= threshold. Requires 0 < threshold < 1.
TranslationLexicon build_lexicon(const ParallelCorpus& corpus,
                                 double threshold = kDefaultLexiconThreshold);

// Mean over source tokens of their translation counts; 0 for empty input.
double translations_per_word(const TranslationLexicon& lexicon,
                             std::span<const Token> source_tokens);

}  // namespace mtqe

#endif  // MTQE_LEXICON_H_
