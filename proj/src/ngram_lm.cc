#include "mtqe/ngram_lm.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "mtqe/error.h"
#include "mtqe/text.h"

namespace mtqe {

namespace {

constexpr std::string_view kMagic = "mtqe-ngram-lm";
constexpr int kFormatVersion = 1;
constexpr std::string_view kUnkText = "<unk>";
constexpr std::string_view kBosText = "<s>";
constexpr std::string_view kEndText = "</s>";

bool is_marker_spelling(std::string_view s) {
  return s == kUnkText || s == kBosText || s == kEndText;
}

bool has_ascii_space(std::string_view s) {
  return s.find_first_of(" \t\n\r\v\f") != std::string_view::npos;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

bool parse_u64(std::string_view s, std::uint64_t& value) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Line reader over an in-memory model file.
class LineCursor {
 public:
  explicit LineCursor(std::string_view text) : text_(text) {}

  std::string_view next() {
    if (pos_ >= text_.size()) throw CorruptModel("language model file is truncated");
    std::size_t nl = text_.find('\n', pos_);
    if (nl == std::string_view::npos) nl = text_.size();
    std::string_view line = text_.substr(pos_, nl - pos_);
    pos_ = nl + 1;
    return line;
  }

  std::uint64_t keyed_u64(std::string_view key) {
    const auto cells = split(next(), '\t');
    std::uint64_t value = 0;
    if (cells.size() != 2 || cells[0] != key || !parse_u64(cells[1], value)) {
      throw CorruptModel("expected '" + std::string(key) + "' header line");
    }
    return value;
  }

  bool at_end() const { return pos_ >= text_.size(); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t nearest_rank(std::vector<std::uint64_t> values, double p) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

std::size_t NgramModel::KeyHash::operator()(const Key& key) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (TokenId id : key.ids) {
    h ^= id;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

NgramModel::Key NgramModel::make_key(std::span<const TokenId> ids) {
  Key key;
  std::copy(ids.begin(), ids.end(), key.ids.begin());
  return key;
}

TokenId NgramModel::intern(const Token& token) {
  auto [it, inserted] = token_to_id_.try_emplace(
      token, static_cast<TokenId>(id_to_token_.size()));
  if (inserted) id_to_token_.push_back(token);
  return it->second;
}

TokenId NgramModel::id_of(std::string_view token) const {
  const auto it = token_to_id_.find(std::string(token));
  return it == token_to_id_.end() ? kUnk : it->second;
}

std::string NgramModel::token_of(TokenId id) const {
  switch (id) {
    case kUnk: return std::string(kUnkText);
    case kBos: return std::string(kBosText);
    case kEnd: return std::string(kEndText);
    default: return id_to_token_.at(id);
  }
}

std::vector<TokenId> NgramModel::ids_of(std::span<const Token> tokens) const {
  std::vector<TokenId> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(id_of(t));
  return ids;
}

std::uint64_t NgramModel::lookup(const CountTable& table,
                                 std::span<const TokenId> ids) const {
  const auto it = table.find(make_key(ids));
  return it == table.end() ? 0 : it->second;
}

std::uint64_t NgramModel::count(std::span<const TokenId> gram) const {
  if (gram.empty() || static_cast<int>(gram.size()) > order_) return 0;
  if (std::find(gram.begin(), gram.end(), kUnk) != gram.end()) return 0;
  return lookup(counts_[gram.size() - 1], gram);
}

std::uint64_t NgramModel::count(std::span<const Token> gram) const {
  return count(ids_of(gram));
}

std::uint64_t NgramModel::context_count(std::span<const TokenId> context) const {
  if (static_cast<int>(context.size()) >= order_) return 0;
  return lookup(context_totals_[context.size()], context);
}

double NgramModel::cond_prob(TokenId word,
                             std::span<const TokenId> context) const {
  if (static_cast<int>(context.size()) >= order_) {
    throw InvalidArgument("context longer than order-1");
  }
  std::vector<TokenId> gram(context.begin(), context.end());
  gram.push_back(word);
  const double numerator = static_cast<double>(count(gram)) + 1.0;
  const double denominator = static_cast<double>(context_count(context)) +
                             static_cast<double>(vocab_size());
  return numerator / denominator;
}

double NgramModel::cond_prob(const Token& word,
                             std::span<const Token> context) const {
  return cond_prob(id_of(word), ids_of(context));
}

double NgramModel::sentence_log_prob(std::span<const Token> tokens) const {
  const std::size_t history = static_cast<std::size_t>(order_ - 1);
  std::vector<TokenId> padded(history, kBos);
  for (const auto& t : tokens) padded.push_back(id_of(t));
  padded.push_back(kEnd);

  double sum = 0.0;
  for (std::size_t i = history; i < padded.size(); ++i) {
    const std::span<const TokenId> context(padded.data() + i - history, history);
    sum += std::log(cond_prob(padded[i], context));
  }
  return sum / static_cast<double>(tokens.size() + 1);
}

const Quartiles& NgramModel::quartiles(int n) const {
  if (n < 1 || n > order_) throw InvalidArgument("n-gram order out of range");
  return quartiles_[n - 1];
}

FreqClass NgramModel::freq_class(std::span<const Token> gram) const {
  const int n = static_cast<int>(gram.size());
  if (n < 1 || n > order_) {
    throw InvalidArgument("gram length must be in 1..order");
  }
  const std::uint64_t freq = count(gram);
  const Quartiles& q = quartiles_[n - 1];
  if (freq <= q.q1) return FreqClass::kLow;
  if (freq > q.q3) return FreqClass::kHigh;
  return FreqClass::kMid;
}

double NgramModel::seen_fraction(const std::vector<TokenSeq>& grams) const {
  if (grams.empty()) return 0.0;
  std::size_t seen = 0;
  for (const auto& gram : grams) {
    if (count(std::span<const Token>(gram)) >= 1) ++seen;
  }
  return static_cast<double>(seen) / static_cast<double>(grams.size());
}

std::vector<std::vector<TokenId>> NgramModel::contexts(int n) const {
  if (n < 1 || n > order_) throw InvalidArgument("n-gram order out of range");
  std::vector<std::vector<TokenId>> out;
  out.reserve(context_totals_[n - 1].size());
  for (const auto& [key, total] : context_totals_[n - 1]) {
    out.emplace_back(key.ids.begin(), key.ids.begin() + (n - 1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TokenId> NgramModel::vocabulary() const {
  std::vector<TokenId> ids(vocab_size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<TokenId>(i);
  return ids;
}

void NgramModel::finalize() {
  context_totals_.assign(order_, CountTable{});
  quartiles_.assign(order_, Quartiles{});
  for (int n = 1; n <= order_; ++n) {
    std::vector<std::uint64_t> frequencies;
    for (const auto& [key, c] : counts_[n - 1]) {
      const std::span<const TokenId> gram(key.ids.data(), n);
      context_totals_[n - 1][make_key(gram.first(n - 1))] += c;
      const bool has_marker = std::any_of(gram.begin(), gram.end(), [](TokenId id) {
        return id == kBos || id == kEnd;
      });
      if (!has_marker) frequencies.push_back(c);
    }
    quartiles_[n - 1] = Quartiles{nearest_rank(frequencies, 25.0),
                                  nearest_rank(frequencies, 75.0)};
  }
}

NgramModel train_lm(const std::vector<TokenSeq>& sentences, int order) {
  if (order < 1 || order > kMaxLmOrder) {
    throw InvalidArgument("order must be in 1.." + std::to_string(kMaxLmOrder) +
                          ", got " + std::to_string(order));
  }
  if (sentences.empty()) throw EmptyCorpus();

  NgramModel model;
  model.order_ = order;
  model.id_to_token_ = {std::string(kUnkText), std::string(kBosText),
                        std::string(kEndText)};
  model.counts_.assign(order, NgramModel::CountTable{});

  std::vector<TokenId> padded;
  for (const auto& sentence : sentences) {
    padded.assign(order - 1, NgramModel::kBos);
    for (const auto& token : sentence) {
      if (token.empty() || has_ascii_space(token)) {
        throw InvalidArgument("tokens must be non-empty and whitespace-free");
      }
      padded.push_back(model.intern(token));
    }
    padded.push_back(NgramModel::kEnd);

    for (std::size_t end = 1; end <= padded.size(); ++end) {
      for (int n = 1; n <= order && static_cast<std::size_t>(n) <= end; ++n) {
        const std::span<const TokenId> gram(padded.data() + end - n, n);
        // Pure-BOS grams only arise from padding and are still counted so
        // that every context total matches its continuations.
        ++model.counts_[n - 1][NgramModel::make_key(gram)];
      }
    }
  }
  model.finalize();
  return model;
}

std::string NgramModel::serialize() const {
  auto encode = [this](TokenId id) {
    if (id < 3) return token_of(id);
    const std::string& t = id_to_token_[id];
    if (t.starts_with('\\') || is_marker_spelling(t)) return "\\" + t;
    return t;
  };

  std::ostringstream out;
  out << kMagic << '\t' << kFormatVersion << '\n';
  out << "order\t" << order_ << '\n';
  out << "vocab_size\t" << vocab_size() << '\n';
  for (int n = 1; n <= order_; ++n) {
    out << "q1_" << n << '\t' << quartiles_[n - 1].q1 << '\n';
    out << "q3_" << n << '\t' << quartiles_[n - 1].q3 << '\n';
  }
  for (int n = 1; n <= order_; ++n) {
    std::vector<std::pair<std::string, std::uint64_t>> rows;
    rows.reserve(counts_[n - 1].size());
    for (const auto& [key, c] : counts_[n - 1]) {
      std::string gram;
      for (int i = 0; i < n; ++i) {
        if (i) gram += ' ';
        gram += encode(key.ids[i]);
      }
      rows.emplace_back(std::move(gram), c);
    }
    std::sort(rows.begin(), rows.end());
    out << '\\' << n << "-grams\t" << rows.size() << '\n';
    for (const auto& [gram, c] : rows) out << gram << '\t' << c << '\n';
  }
  out << "\\end\n";
  return std::move(out).str();
}

NgramModel NgramModel::deserialize(std::string_view text) {
  LineCursor cursor(text);
  {
    const auto magic = split(cursor.next(), '\t');
    std::uint64_t version = 0;
    if (magic.size() != 2 || magic[0] != kMagic || !parse_u64(magic[1], version)) {
      throw CorruptModel("not a language model file");
    }
    if (version != kFormatVersion) {
      throw VersionMismatch("unsupported language model version " +
                            std::string(magic[1]));
    }
  }

  NgramModel model;
  const std::uint64_t order = cursor.keyed_u64("order");
  if (order < 1 || order > kMaxLmOrder) throw CorruptModel("bad order");
  model.order_ = static_cast<int>(order);
  const std::uint64_t vocab_size = cursor.keyed_u64("vocab_size");
  std::vector<Quartiles> stored(order);
  for (int n = 1; n <= model.order_; ++n) {
    stored[n - 1].q1 = cursor.keyed_u64("q1_" + std::to_string(n));
    stored[n - 1].q3 = cursor.keyed_u64("q3_" + std::to_string(n));
  }

  model.id_to_token_ = {std::string(kUnkText), std::string(kBosText),
                        std::string(kEndText)};
  model.counts_.assign(order, CountTable{});
  auto decode = [&model](std::string_view s) -> TokenId {
    if (s.empty()) throw CorruptModel("empty token");
    if (s.starts_with('\\')) return model.intern(std::string(s.substr(1)));
    if (s == kUnkText) return kUnk;
    if (s == kBosText) return kBos;
    if (s == kEndText) return kEnd;
    return model.intern(std::string(s));
  };

  for (int n = 1; n <= model.order_; ++n) {
    const auto header = split(cursor.next(), '\t');
    std::uint64_t rows = 0;
    if (header.size() != 2 || header[0] != "\\" + std::to_string(n) + "-grams" ||
        !parse_u64(header[1], rows)) {
      throw CorruptModel("expected section header for order " + std::to_string(n));
    }
    for (std::uint64_t r = 0; r < rows; ++r) {
      const auto cells = split(cursor.next(), '\t');
      std::uint64_t c = 0;
      if (cells.size() != 2 || !parse_u64(cells[1], c) || c == 0) {
        throw CorruptModel("bad n-gram row");
      }
      const auto tokens = split(cells[0], ' ');
      if (static_cast<int>(tokens.size()) != n) throw CorruptModel("bad n-gram length");
      std::vector<TokenId> ids;
      for (auto t : tokens) ids.push_back(decode(t));
      if (!model.counts_[n - 1].emplace(make_key(ids), c).second) {
        throw CorruptModel("duplicate n-gram");
      }
    }
  }
  if (cursor.next() != "\\end") throw CorruptModel("missing end marker");
  if (!cursor.at_end()) throw CorruptModel("trailing data after end marker");

  model.finalize();
  if (model.vocab_size() != vocab_size) throw CorruptModel("vocab_size mismatch");
  if (model.quartiles_ != stored) throw CorruptModel("quartile mismatch");
  return model;
}

void NgramModel::save(const std::string& path) const {
  atomic_write(path, serialize());
}

NgramModel NgramModel::load(const std::string& path) {
  return deserialize(read_file(path));
}

}  // namespace mtqe
