#ifndef MTQE_CORPUS_H_
#define MTQE_CORPUS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mtqe {

using Token = std::string;
using TokenSeq = std::vector<Token>;

enum class Side { kSource, kTarget };

Side parse_side(std::string_view name);  // "source" | "target"
std::string_view side_name(Side side);

// Splits on Unicode whitespace, then peels leading and trailing
// punctuation off each chunk one code point at a time. Source-side tokens
// are lowercased. Input must be valid UTF-8.
TokenSeq tokenize(std::string_view text, Side side);

struct SentencePair {
  std::uint64_t id = 0;
  TokenSeq source;
  TokenSeq target;
};

struct ParallelCorpus {
  std::vector<SentencePair> pairs;

  std::size_t size() const { return pairs.size(); }
  std::vector<TokenSeq> side(Side side) const;
};

// Line i of each file becomes pair i.
ParallelCorpus load_parallel(const std::string& source_path,
                             const std::string& target_path);

// One tokenized sentence per line.
std::vector<TokenSeq> load_sentences(const std::string& path, Side side);

inline constexpr int kNumJudgmentParams = 10;
inline constexpr int kMaxParamScore = 4;

struct HumanJudgment {
  std::uint64_t sentence_id = 0;
  std::array<int, kNumJudgmentParams> params{};
};

// TSV with header `id\tp1\t...\tp10`.
std::vector<HumanJudgment> load_judgments(const std::string& path);
std::vector<HumanJudgment> parse_judgments(std::string_view tsv);

struct CorpusStats {
  std::size_t sentences = 0;
  std::size_t words = 0;
  std::size_t unique_words = 0;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

CorpusStats corpus_stats(const ParallelCorpus& corpus, Side side);
CorpusStats corpus_stats(const std::vector<TokenSeq>& sentences);

}  // namespace mtqe

#endif  // MTQE_CORPUS_H_
