#include "mtqe/lexicon.h"

#include <algorithm>
#include <charconv>
#include <limits>
#include <set>
#include <unordered_map>
#include <vector>

#include "mtqe/error.h"
#include "mtqe/text.h"

namespace mtqe {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

TranslationLexicon::TranslationLexicon(double threshold) : threshold_(threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw InvalidArgument("lexicon threshold must lie in (0,1), got " +
                          format_double(threshold));
  }
}

std::size_t TranslationLexicon::size() const {
  std::size_t n = 0;
  for (const auto& [source, translations] : entries_) n += translations.size();
  return n;
}

std::size_t TranslationLexicon::translation_count(const Token& source) const {
  const auto it = entries_.find(source);
  return it == entries_.end() ? 0 : it->second.size();
}

const TranslationLexicon::Translations* TranslationLexicon::find(
    const Token& source) const {
  const auto it = entries_.find(source);
  return it == entries_.end() ? nullptr : &it->second;
}

void TranslationLexicon::add(const Token& source, const Token& target,
                             double score) {
  if (!(score >= threshold_ && score <= 1.0)) {
    throw InvalidArgument("association score " + format_double(score) +
                          " outside [threshold, 1]");
  }
  entries_[source][target] = score;
}

std::string TranslationLexicon::serialize() const {
  std::string out;
  for (const auto& [source, translations] : entries_) {
    for (const auto& [target, score] : translations) {
      out += source;
      out += '\t';
      out += target;
      out += '\t';
      out += format_double(score);
      out += '\n';
    }
  }
  return out;
}

TranslationLexicon TranslationLexicon::deserialize(std::string_view tsv) {
  struct Row {
    std::string source, target;
    double score;
  };
  std::vector<Row> rows;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < tsv.size()) {
    ++line_no;
    std::size_t nl = tsv.find('\n', start);
    if (nl == std::string_view::npos) nl = tsv.size();
    std::string_view line = tsv.substr(start, nl - start);
    start = nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    const std::size_t t1 = line.find('\t');
    const std::size_t t2 =
        t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos ||
        line.find('\t', t2 + 1) != std::string_view::npos) {
      throw MalformedRow(line_no - 1, "expected source\\ttarget\\tscore");
    }
    Row row{std::string(line.substr(0, t1)),
            std::string(line.substr(t1 + 1, t2 - t1 - 1)), 0.0};
    const std::string_view score = line.substr(t2 + 1);
    auto [ptr, ec] =
        std::from_chars(score.data(), score.data() + score.size(), row.score);
    if (ec != std::errc() || ptr != score.data() + score.size() ||
        row.source.empty() || row.target.empty() ||
        !(row.score > 0.0 && row.score <= 1.0)) {
      throw MalformedRow(line_no - 1, "bad lexicon entry");
    }
    rows.push_back(std::move(row));
  }

  TranslationLexicon lexicon;
  if (!rows.empty()) {
    lexicon.threshold_ =
        std::min_element(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
          return a.score < b.score;
        })->score;
  }
  for (const auto& row : rows) lexicon.add(row.source, row.target, row.score);
  return lexicon;
}

void TranslationLexicon::save(const std::string& path) const {
  atomic_write(path, serialize());
}

TranslationLexicon TranslationLexicon::load(const std::string& path) {
  const std::string contents = read_file(path);
  if (!is_valid_utf8(contents)) throw InvalidEncoding(0);
  return deserialize(contents);
}

double dice(std::size_t cooc, std::size_t sent_source, std::size_t sent_target) {
  const std::size_t denominator = sent_source + sent_target;
  if (denominator == 0) return 0.0;
  return 2.0 * static_cast<double>(cooc) / static_cast<double>(denominator);
}

TranslationLexicon build_lexicon(const ParallelCorpus& corpus, double threshold) {
  TranslationLexicon lexicon(threshold);
  if (corpus.pairs.empty()) throw EmptyCorpus();

  std::unordered_map<Token, std::size_t> source_sents;
  std::unordered_map<Token, std::size_t> target_sents;
  std::unordered_map<Token, std::unordered_map<Token, std::size_t>> cooc;

  for (const auto& pair : corpus.pairs) {
    const std::set<Token> sources(pair.source.begin(), pair.source.end());
    const std::set<Token> targets(pair.target.begin(), pair.target.end());
    for (const auto& s : sources) ++source_sents[s];
    for (const auto& t : targets) ++target_sents[t];
    for (const auto& s : sources) {
      auto& row = cooc[s];
      for (const auto& t : targets) ++row[t];
    }
  }

  for (const auto& [s, row] : cooc) {
    for (const auto& [t, c] : row) {
      const double score = dice(c, source_sents[s], target_sents[t]);
      if (score >= threshold) lexicon.add(s, t, score);
    }
  }
  return lexicon;
}

double translations_per_word(const TranslationLexicon& lexicon,
                             std::span<const Token> source_tokens) {
  if (source_tokens.empty()) return 0.0;
  std::size_t total = 0;
  for (const auto& token : source_tokens) total += lexicon.translation_count(token);
  return static_cast<double>(total) / static_cast<double>(source_tokens.size());
}

}  // namespace mtqe
