#include "mtqe/corpus.h"

#include <charconv>
#include <unordered_set>

#include "mtqe/error.h"
#include "mtqe/text.h"

namespace mtqe {

namespace {

std::string encode(const std::vector<char32_t>& cps, std::size_t begin,
                   std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) append_utf8(out, cps[i]);
  return out;
}

void emit_chunk(const std::vector<char32_t>& cps, std::size_t begin,
                std::size_t end, TokenSeq& out) {
  while (begin < end && is_punctuation(cps[begin])) {
    out.push_back(encode(cps, begin, begin + 1));
    ++begin;
  }
  std::size_t core_end = end;
  while (core_end > begin && is_punctuation(cps[core_end - 1])) --core_end;
  if (core_end > begin) out.push_back(encode(cps, begin, core_end));
  for (std::size_t i = core_end; i < end; ++i) {
    out.push_back(encode(cps, i, i + 1));
  }
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool parse_long(std::string_view cell, long& value) {
  if (cell.empty()) return false;
  const char* first = cell.data();
  const char* last = first + cell.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

std::string expected_judgment_header() {
  std::string header = "id";
  for (int i = 1; i <= kNumJudgmentParams; ++i) {
    header += "\tp" + std::to_string(i);
  }
  return header;
}

}  // namespace

Side parse_side(std::string_view name) {
  if (name == "source") return Side::kSource;
  if (name == "target") return Side::kTarget;
  throw InvalidArgument("side must be 'source' or 'target', got '" +
                        std::string(name) + "'");
}

std::string_view side_name(Side side) {
  return side == Side::kSource ? "source" : "target";
}

TokenSeq tokenize(std::string_view text, Side side) {
  const std::vector<char32_t> cps = decode_utf8(text);
  TokenSeq tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_whitespace(cps[i])) ++i;
    const std::size_t start = i;
    while (i < cps.size() && !is_whitespace(cps[i])) ++i;
    if (i > start) emit_chunk(cps, start, i, tokens);
  }
  if (side == Side::kSource) {
    for (auto& token : tokens) token = to_lower(token);
  }
  return tokens;
}

std::vector<TokenSeq> ParallelCorpus::side(Side which) const {
  std::vector<TokenSeq> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) {
    out.push_back(which == Side::kSource ? pair.source : pair.target);
  }
  return out;
}

std::vector<TokenSeq> load_sentences(const std::string& path, Side side) {
  const std::vector<std::string> lines = read_lines(path);
  std::vector<TokenSeq> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!is_valid_utf8(lines[i])) throw InvalidEncoding(i + 1);
    out.push_back(tokenize(lines[i], side));
  }
  return out;
}

ParallelCorpus load_parallel(const std::string& source_path,
                             const std::string& target_path) {
  const std::vector<std::string> src = read_lines(source_path);
  const std::vector<std::string> tgt = read_lines(target_path);
  if (src.size() != tgt.size()) throw LineCountMismatch(src.size(), tgt.size());

  ParallelCorpus corpus;
  corpus.pairs.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!is_valid_utf8(src[i]) || !is_valid_utf8(tgt[i])) {
      throw InvalidEncoding(i + 1);
    }
    corpus.pairs.push_back(SentencePair{i, tokenize(src[i], Side::kSource),
                                        tokenize(tgt[i], Side::kTarget)});
  }
  return corpus;
}

std::vector<HumanJudgment> parse_judgments(std::string_view tsv) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < tsv.size()) {
    std::size_t nl = tsv.find('\n', start);
    if (nl == std::string_view::npos) nl = tsv.size();
    std::string_view line = tsv.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  if (lines.empty() || lines.front() != expected_judgment_header()) {
    throw MalformedHeader("judgment header must be 'id\\tp1\\t...\\tp10'");
  }

  std::vector<HumanJudgment> out;
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::size_t row = r - 1;
    const auto cells = split_tabs(lines[r]);
    if (cells.size() != 1 + kNumJudgmentParams) {
      throw MalformedRow(row, "expected 11 cells, got " +
                                  std::to_string(cells.size()));
    }
    HumanJudgment j;
    long id = 0;
    if (!parse_long(cells[0], id) || id < 0) {
      throw MalformedRow(row, "id is not a non-negative integer");
    }
    j.sentence_id = static_cast<std::uint64_t>(id);
    if (!seen.insert(j.sentence_id).second) {
      throw MalformedRow(row, "duplicate id " + std::to_string(id));
    }
    for (int c = 1; c <= kNumJudgmentParams; ++c) {
      long value = 0;
      if (!parse_long(cells[c], value)) {
        throw MalformedRow(row, "p" + std::to_string(c) + " is not an integer");
      }
      if (value < 0 || value > kMaxParamScore) {
        throw OutOfRangeScore(row, c, value);
      }
      j.params[c - 1] = static_cast<int>(value);
    }
    out.push_back(j);
  }
  return out;
}

std::vector<HumanJudgment> load_judgments(const std::string& path) {
  const std::string contents = read_file(path);
  if (!is_valid_utf8(contents)) throw InvalidEncoding(0);
  return parse_judgments(contents);
}

CorpusStats corpus_stats(const std::vector<TokenSeq>& sentences) {
  CorpusStats stats;
  stats.sentences = sentences.size();
  std::unordered_set<std::string_view> distinct;
  for (const auto& sentence : sentences) {
    stats.words += sentence.size();
    for (const auto& token : sentence) distinct.insert(token);
  }
  stats.unique_words = distinct.size();
  return stats;
}

CorpusStats corpus_stats(const ParallelCorpus& corpus, Side side) {
  CorpusStats stats;
  stats.sentences = corpus.size();
  std::unordered_set<std::string_view> distinct;
  for (const auto& pair : corpus.pairs) {
    const TokenSeq& tokens = side == Side::kSource ? pair.source : pair.target;
    stats.words += tokens.size();
    for (const auto& token : tokens) distinct.insert(token);
  }
  stats.unique_words = distinct.size();
  return stats;
}

}  // namespace mtqe
