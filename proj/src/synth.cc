#include "mtqe/synth.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <string_view>

#include "mtqe/error.h"
#include "mtqe/text.h"

namespace mtqe {

namespace {

struct Entry {
  std::string_view en;
  std::string_view hi;
};

constexpr std::array<Entry, 20> kNouns = {{
    {"boy", "लड़का"},      {"girl", "लड़की"},     {"man", "आदमी"},
    {"woman", "औरत"},      {"child", "बच्चा"},    {"teacher", "शिक्षक"},
    {"farmer", "किसान"},   {"doctor", "डॉक्टर"},  {"dog", "कुत्ता"},
    {"cat", "बिल्ली"},      {"house", "घर"},      {"letter", "पत्र"},
    {"river", "नदी"},      {"song", "गाना"},      {"fruit", "फल"},
    {"book", "किताब"},     {"water", "पानी"},     {"food", "खाना"},
    {"tree", "पेड़"},       {"road", "सड़क"},
}};

constexpr std::array<Entry, 8> kVerbs = {{
    {"eats", "खाता"},  {"reads", "पढ़ता"},  {"sees", "देखता"},
    {"finds", "पाता"}, {"writes", "लिखता"}, {"drinks", "पीता"},
    {"builds", "बनाता"}, {"likes", "चाहता"},
}};

constexpr std::array<Entry, 6> kAdjectives = {{
    {"big", "बड़ा"}, {"small", "छोटा"}, {"old", "पुराना"},
    {"new", "नया"},  {"good", "अच्छा"}, {"red", "लाल"},
}};

constexpr std::array<Entry, 5> kPlaces = {{
    {"village", "गाँव"}, {"city", "शहर"}, {"school", "विद्यालय"},
    {"garden", "बगीचा"}, {"market", "बाज़ार"},
}};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return uniform() < p; }
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

// A target token paired with whether it is a content word open to errors.
struct TargetToken {
  std::string text;
  std::string untranslated;  // empty for function words and punctuation
};

struct Clause {
  std::vector<std::string> source;
  std::vector<TargetToken> target;
};

void add_noun_phrase(Rng& rng, Clause& clause, std::vector<TargetToken>& target) {
  clause.source.emplace_back(rng.chance(0.5) ? "the" : "a");
  if (rng.chance(0.5)) {
    const Entry& adj = kAdjectives[rng.below(kAdjectives.size())];
    clause.source.emplace_back(adj.en);
    target.push_back({std::string(adj.hi), std::string(adj.en)});
  }
  const Entry& noun = kNouns[rng.below(kNouns.size())];
  clause.source.emplace_back(noun.en);
  target.push_back({std::string(noun.hi), std::string(noun.en)});
}

Clause make_clause(Rng& rng) {
  Clause clause;
  std::vector<TargetToken> subject, object, place;
  add_noun_phrase(rng, clause, subject);
  const Entry& verb = kVerbs[rng.below(kVerbs.size())];
  clause.source.emplace_back(verb.en);
  add_noun_phrase(rng, clause, object);
  if (rng.chance(0.4)) {
    const Entry& p = kPlaces[rng.below(kPlaces.size())];
    clause.source.emplace_back("in");
    clause.source.emplace_back("the");
    clause.source.emplace_back(p.en);
    place.push_back({std::string(p.hi), std::string(p.en)});
    place.push_back({"में", ""});
  }
  // Hindi is verb-final: subject, place, object, verb.
  for (auto* part : {&subject, &place, &object}) {
    clause.target.insert(clause.target.end(), part->begin(), part->end());
  }
  clause.target.push_back({std::string(verb.hi), std::string(verb.en)});
  clause.target.push_back({"है", ""});
  return clause;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string line;
  for (const auto& t : tokens) {
    if (!line.empty() && !is_punctuation_token(t)) line += ' ';
    line += t;
  }
  return line;
}

}  // namespace

SyntheticCorpus make_synthetic_corpus(std::size_t pairs, std::uint64_t seed) {
  Rng rng(seed);
  SyntheticCorpus corpus;
  for (std::size_t id = 0; id < pairs; ++id) {
    std::vector<std::string> source;
    std::vector<TargetToken> target;
    const int clauses = rng.chance(0.3) ? 2 : 1;
    for (int c = 0; c < clauses; ++c) {
      Clause clause = make_clause(rng);
      if (c > 0) {
        source.emplace_back(",");
        source.emplace_back("and");
        target.push_back({",", ""});
        target.push_back({"और", ""});
      }
      source.insert(source.end(), clause.source.begin(), clause.source.end());
      target.insert(target.end(), clause.target.begin(), clause.target.end());
    }
    source.emplace_back(".");
    source.front()[0] = static_cast<char>(std::toupper(source.front()[0]));

    const double quality = rng.uniform();
    const double badness = 1.0 - quality;
    std::vector<std::string> output;
    for (const auto& t : target) {
      if (!t.untranslated.empty()) {
        if (rng.chance(0.4 * badness)) continue;
        if (rng.chance(0.85 * badness)) {
          output.push_back(t.untranslated);
          continue;
        }
      }
      output.push_back(t.text);
    }
    if (quality < 0.35) {
      for (std::size_t i = output.size(); i > 1; --i) {
        std::swap(output[i - 1], output[rng.below(i)]);
      }
    }
    if (!(quality < 0.3 && rng.chance(0.7))) output.emplace_back("।");

    HumanJudgment judgment;
    judgment.sentence_id = id;
    for (int& p : judgment.params) {
      const double raw = 4.0 * quality + 0.5 * rng.normal();
      p = static_cast<int>(std::clamp(std::lround(raw), 0L, 4L));
    }

    corpus.source_lines.push_back(join_tokens(source));
    corpus.target_lines.push_back(join_tokens(output));
    corpus.judgments.push_back(judgment);
  }
  return corpus;
}

std::string format_judgments(const std::vector<HumanJudgment>& judgments) {
  std::string out = "id";
  for (int i = 1; i <= kNumJudgmentParams; ++i) out += "\tp" + std::to_string(i);
  out += '\n';
  for (const auto& j : judgments) {
    out += std::to_string(j.sentence_id);
    for (int p : j.params) out += '\t' + std::to_string(p);
    out += '\n';
  }
  return out;
}

void write_synthetic_corpus(const SyntheticCorpus& corpus, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoFailure(dir, "cannot create directory");
  auto lines = [](const std::vector<std::string>& rows) {
    std::string out;
    for (const auto& r : rows) out += r + '\n';
    return out;
  };
  const std::filesystem::path base(dir);
  atomic_write((base / "source.txt").string(), lines(corpus.source_lines));
  atomic_write((base / "target.txt").string(), lines(corpus.target_lines));
  atomic_write((base / "judgments.tsv").string(), format_judgments(corpus.judgments));
}

}  // namespace mtqe
