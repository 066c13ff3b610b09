#include "mtqe/features.h"

#include <algorithm>
#include <charconv>
#include <thread>
#include <unordered_set>

#include "mtqe/error.h"
#include "mtqe/text.h"

namespace mtqe {

namespace {

struct LowHigh {
  double pct_low = 0.0;
  double pct_high = 0.0;
};

LowHigh low_high_percentages(const NgramModel& lm, const TokenSeq& tokens,
                             std::size_t n) {
  const std::vector<TokenSeq> grams = ngrams(tokens, n);
  if (grams.empty()) return {};
  std::size_t low = 0;
  std::size_t high = 0;
  for (const auto& gram : grams) {
    switch (lm.freq_class(gram)) {
      case FreqClass::kLow: ++low; break;
      case FreqClass::kHigh: ++high; break;
      case FreqClass::kMid: break;
    }
  }
  const double total = static_cast<double>(grams.size());
  return {100.0 * static_cast<double>(low) / total,
          100.0 * static_cast<double>(high) / total};
}

std::size_t count_punctuation(const TokenSeq& tokens) {
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(),
                    [](const Token& t) { return is_punctuation_token(t); }));
}

std::string feature_header(bool labeled) {
  std::string header = "id";
  for (std::size_t i = 1; i <= kNumFeatures; ++i) header += ",f" + std::to_string(i);
  if (labeled) header += ",grade";
  return header;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::vector<TokenSeq> ngrams(const TokenSeq& tokens, std::size_t n) {
  std::vector<TokenSeq> out;
  if (n == 0 || tokens.size() < n) return out;
  out.reserve(tokens.size() - n + 1);
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    out.emplace_back(tokens.begin() + i, tokens.begin() + i + n);
  }
  return out;
}

FeatureVector extract_features(const SentencePair& pair, const NgramModel& src_lm,
                               const NgramModel& tgt_lm,
                               const TranslationLexicon& lexicon) {
  if (src_lm.order() < 3 || tgt_lm.order() < 3) {
    throw InvalidArgument("feature extraction needs language models of order >= 3");
  }
  const TokenSeq& src = pair.source;
  const TokenSeq& tgt = pair.target;
  FeatureVector fv;

  fv[Feature::kSrcTokenCount] = static_cast<double>(src.size());
  fv[Feature::kTgtTokenCount] = static_cast<double>(tgt.size());

  if (!src.empty()) {
    std::size_t chars = 0;
    for (const auto& t : src) chars += utf8_length(t);
    fv[Feature::kAvgSrcTokenLen] =
        static_cast<double>(chars) / static_cast<double>(src.size());
  }

  fv[Feature::kSrcLmLogProb] = src_lm.sentence_log_prob(src);
  fv[Feature::kTgtLmLogProb] = tgt_lm.sentence_log_prob(tgt);

  if (!tgt.empty()) {
    const std::unordered_set<std::string_view> types(tgt.begin(), tgt.end());
    fv[Feature::kTgtTokensPerType] =
        static_cast<double>(tgt.size()) / static_cast<double>(types.size());
  }

  fv[Feature::kAvgTranslationsPerWord] = translations_per_word(lexicon, src);

  const LowHigh uni = low_high_percentages(src_lm, src, 1);
  const LowHigh bi = low_high_percentages(src_lm, src, 2);
  const LowHigh tri = low_high_percentages(src_lm, src, 3);
  fv[Feature::kPctLowFreqUnigrams] = uni.pct_low;
  fv[Feature::kPctHighFreqUnigrams] = uni.pct_high;
  fv[Feature::kPctLowFreqBigrams] = bi.pct_low;
  fv[Feature::kPctHighFreqBigrams] = bi.pct_high;
  fv[Feature::kPctHighFreqTrigrams] = tri.pct_high;
  fv[Feature::kPctLowFreqTrigrams] = tri.pct_low;

  fv[Feature::kPctUnigramsSeen] = 100.0 * src_lm.seen_fraction(ngrams(src, 1));

  fv[Feature::kSrcPunctCount] = static_cast<double>(count_punctuation(src));
  fv[Feature::kTgtPunctCount] = static_cast<double>(count_punctuation(tgt));
  return fv;
}

std::vector<FeatureVector> extract_all(const ParallelCorpus& corpus,
                                       const NgramModel& src_lm,
                                       const NgramModel& tgt_lm,
                                       const TranslationLexicon& lexicon,
                                       unsigned threads) {
  std::vector<FeatureVector> out(corpus.size());
  const std::size_t n = corpus.size();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = extract_features(corpus.pairs[i], src_lm, tgt_lm, lexicon);
    }
  };
  if (threads <= 1) {
    work(0, n);
    return out;
  }
  // extract_features only validates model orders, which is checked once here
  // so that worker threads never throw.
  if (src_lm.order() < 3 || tgt_lm.order() < 3) {
    throw InvalidArgument("feature extraction needs language models of order >= 3");
  }
  {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
      workers.emplace_back(work, begin, std::min(n, begin + chunk));
    }
  }
  return out;
}

std::string format_features(std::vector<FeatureRow> rows) {
  const bool labeled = !rows.empty() && rows.front().grade.has_value();
  for (const auto& row : rows) {
    if (row.grade.has_value() != labeled) throw MixedLabeling();
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const FeatureRow& a, const FeatureRow& b) { return a.id < b.id; });

  std::string out = feature_header(labeled);
  out += '\n';
  char buf[64];
  for (const auto& row : rows) {
    out += std::to_string(row.id);
    for (double v : row.features.values) {
      auto [ptr, ec] =
          std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 6);
      out += ',';
      out.append(buf, ptr);
    }
    if (labeled) {
      out += ',';
      out += grade_name(*row.grade);
    }
    out += '\n';
  }
  return out;
}

void write_features(const std::vector<FeatureRow>& rows, const std::string& path) {
  atomic_write(path, format_features(rows));
}

std::vector<FeatureRow> parse_features(std::string_view csv) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < csv.size()) {
    std::size_t nl = csv.find('\n', start);
    if (nl == std::string_view::npos) nl = csv.size();
    std::string_view line = csv.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw MalformedHeader("feature file is empty");

  bool labeled = false;
  if (lines.front() == feature_header(true)) {
    labeled = true;
  } else if (lines.front() != feature_header(false)) {
    throw MalformedHeader("feature header must be 'id,f1,...,f16[,grade]'");
  }
  const std::size_t width = 1 + kNumFeatures + (labeled ? 1 : 0);

  std::vector<FeatureRow> rows;
  std::unordered_set<std::uint64_t> ids;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::size_t row_index = r - 1;
    const auto cells = split_commas(lines[r]);
    if (cells.size() != width) {
      throw MalformedRow(row_index, "expected " + std::to_string(width) + " cells");
    }
    FeatureRow row;
    {
      auto [ptr, ec] = std::from_chars(cells[0].data(),
                                       cells[0].data() + cells[0].size(), row.id);
      if (ec != std::errc() || ptr != cells[0].data() + cells[0].size()) {
        throw MalformedRow(row_index, "bad id");
      }
      if (!ids.insert(row.id).second) throw MalformedRow(row_index, "duplicate id");
    }
    for (std::size_t i = 0; i < kNumFeatures; ++i) {
      const std::string_view cell = cells[1 + i];
      auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), row.features[i]);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw MalformedRow(row_index, "bad value for f" + std::to_string(i + 1));
      }
    }
    if (labeled) {
      if (cells.back().empty()) throw MixedLabeling();
      row.grade = parse_grade(cells.back());
      if (!row.grade) throw MalformedRow(row_index, "unknown grade");
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<FeatureRow> read_features(const std::string& path) {
  return parse_features(read_file(path));
}

}  // namespace mtqe
