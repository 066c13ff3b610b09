#ifndef MTQE_SYNTH_H_
#define MTQE_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mtqe/corpus.h"

namespace mtqe {

// A toy English-Hindi corpus with simulated MT errors and matching
// 10-parameter human judgments. Each pair draws a latent quality in [0,1];
// lower quality leaves more words untranslated, drops words, scrambles
// order and loses the final danda. Judgment parameters are the latent
// quality on the 0..4 scale plus rater noise.
struct SyntheticCorpus {
  std::vector<std::string> source_lines;
  std::vector<std::string> target_lines;
  std::vector<HumanJudgment> judgments;
};

// Deterministic for a given (pairs, seed) on every platform.
SyntheticCorpus make_synthetic_corpus(std::size_t pairs, std::uint64_t seed);

std::string format_judgments(const std::vector<HumanJudgment>& judgments);

// Writes source.txt, target.txt and judgments.tsv into dir.
void write_synthetic_corpus(const SyntheticCorpus& corpus, const std::string& dir);

}  // namespace mtqe

#endif  // MTQE_SYNTH_H_
