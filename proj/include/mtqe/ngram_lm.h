#ifndef MTQE_NGRAM_LM_H_
#define MTQE_NGRAM_LM_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mtqe/corpus.h"

namespace mtqe {

using TokenId = std::uint32_t;

inline constexpr int kMaxLmOrder = 5;
inline constexpr int kDefaultLmOrder = 3;

enum class FreqClass { kLow, kMid, kHigh };

struct Quartiles {
  std::uint64_t q1 = 0;
  std::uint64_t q3 = 0;

  friend bool operator==(const Quartiles&, const Quartiles&) = default;
};

// Nearest-rank percentile (p in (0,100]) of an unsorted sample. Empty
// input yields 0.
std::uint64_t nearest_rank(std::vector<std::uint64_t> values, double p);

// Add-one smoothed n-gram model. Each training sentence is padded with
// order-1 BOS markers and one END marker before counting n-grams of every
// length 1..order. UNK, BOS and END always belong to the vocabulary.
//
// Token strings passed to queries are looked up as corpus tokens; the
// markers are only reachable through the id API (kUnk, kBos, kEnd).
class NgramModel {
 public:
  static constexpr TokenId kUnk = 0;
  static constexpr TokenId kBos = 1;
  static constexpr TokenId kEnd = 2;

  NgramModel() = default;

  int order() const { return order_; }
  std::size_t vocab_size() const { return id_to_token_.size(); }

  // kUnk for unknown tokens.
  TokenId id_of(std::string_view token) const;
  // Marker ids render as "<unk>", "<s>", "</s>".
  std::string token_of(TokenId id) const;
  std::vector<TokenId> ids_of(std::span<const Token> tokens) const;

  // Raw corpus frequency of a gram of length 1..order; 0 if unseen.
  std::uint64_t count(std::span<const TokenId> gram) const;
  std::uint64_t count(std::span<const Token> gram) const;

  // Number of counted grams of length |context|+1 that start with context.
  std::uint64_t context_count(std::span<const TokenId> context) const;

  // (count(context.word) + 1) / (context_count(context) + |V|). context may
  // be any length 0..order-1; its length selects the n-gram order used.
  double cond_prob(TokenId word, std::span<const TokenId> context) const;
  double cond_prob(const Token& word, std::span<const Token> context) const;

  // Mean natural-log probability over the |tokens|+1 scored positions
  // (END included), using full-order contexts.
  double sentence_log_prob(std::span<const Token> tokens) const;

  const Quartiles& quartiles(int n) const;

  // Low iff freq <= Q1_n, High iff freq > Q3_n, Mid otherwise.
  FreqClass freq_class(std::span<const Token> gram) const;

  // Fraction of grams with frequency >= 1; 0 for an empty input.
  double seen_fraction(const std::vector<TokenSeq>& grams) const;

  // Distinct contexts of length n-1 that were followed by something.
  std::vector<std::vector<TokenId>> contexts(int n) const;
  std::vector<TokenId> vocabulary() const;

  std::string serialize() const;
  static NgramModel deserialize(std::string_view text);
  void save(const std::string& path) const;
  static NgramModel load(const std::string& path);

  friend NgramModel train_lm(const std::vector<TokenSeq>& sentences, int order);

 private:
  struct Key {
    std::array<TokenId, kMaxLmOrder> ids{};
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const;
  };
  using CountTable = std::unordered_map<Key, std::uint64_t, KeyHash>;

  static Key make_key(std::span<const TokenId> ids);
  TokenId intern(const Token& token);
  void finalize();
  std::uint64_t lookup(const CountTable& table,
                       std::span<const TokenId> ids) const;

  int order_ = 0;
  std::unordered_map<Token, TokenId> token_to_id_;
  std::vector<Token> id_to_token_;
  // counts_[n-1] holds n-grams; context_totals_[n-1] holds their
  // (n-1)-token prefixes with summed counts.
  std::vector<CountTable> counts_;
  std::vector<CountTable> context_totals_;
  std::vector<Quartiles> quartiles_;
};

// Throws EmptyCorpus if sentences is empty and InvalidArgument if order is
// outside 1..kMaxLmOrder.
NgramModel train_lm(const std::vector<TokenSeq>& sentences,
                    int order = kDefaultLmOrder);

}  // namespace mtqe

#endif  // MTQE_NGRAM_LM_H_
