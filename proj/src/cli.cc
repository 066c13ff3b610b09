#include "mtqe/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "mtqe/corpus.h"
#include "mtqe/error.h"
#include "mtqe/evaluation.h"
#include "mtqe/features.h"
#include "mtqe/grading.h"
#include "mtqe/lexicon.h"
#include "mtqe/naive_bayes.h"
#include "mtqe/ngram_lm.h"
#include "mtqe/synth.h"
#include "mtqe/text.h"

namespace mtqe {

namespace {

struct PipelineConfig {
  int lm_order = kDefaultLmOrder;
  double lexicon_threshold = kDefaultLexiconThreshold;
  double variance_floor = kDefaultVarianceFloor;
  std::uint64_t seed = 0;
  std::size_t pairs = 200;
  unsigned threads = 1;
  std::string side = "source";
  std::string corpus, pairs_src, pairs_tgt, src_lm, tgt_lm, lexicon, judgments;
  std::string features, model, human, predicted, out, out_dir;
};

void print_stats(std::ostream& out, const CorpusStats& stats) {
  out << "sentences\t" << stats.sentences << "\nwords\t" << stats.words
      << "\nunique_words\t" << stats.unique_words << '\n';
}

void cmd_stats(const PipelineConfig& cfg, std::ostream& out) {
  print_stats(out, corpus_stats(load_sentences(cfg.corpus, parse_side(cfg.side))));
}

void cmd_build_lm(const PipelineConfig& cfg, std::ostream& out) {
  const auto sentences = load_sentences(cfg.corpus, parse_side(cfg.side));
  const NgramModel model = train_lm(sentences, cfg.lm_order);
  model.save(cfg.out);
  print_stats(out, corpus_stats(sentences));
  out << "vocab_size\t" << model.vocab_size() << '\n';
}

void cmd_build_lexicon(const PipelineConfig& cfg, std::ostream& out) {
  const ParallelCorpus corpus = load_parallel(cfg.pairs_src, cfg.pairs_tgt);
  const TranslationLexicon lexicon = build_lexicon(corpus, cfg.lexicon_threshold);
  lexicon.save(cfg.out);
  out << "sources\t" << lexicon.entries().size() << "\nentries\t" << lexicon.size()
      << '\n';
}

void cmd_extract(const PipelineConfig& cfg, std::ostream& out) {
  const ParallelCorpus corpus = load_parallel(cfg.pairs_src, cfg.pairs_tgt);
  const NgramModel src_lm = NgramModel::load(cfg.src_lm);
  const NgramModel tgt_lm = NgramModel::load(cfg.tgt_lm);
  const TranslationLexicon lexicon = TranslationLexicon::load(cfg.lexicon);

  std::map<std::uint64_t, Grade> grades;
  if (!cfg.judgments.empty()) {
    for (const auto& j : load_judgments(cfg.judgments)) {
      grades.emplace(j.sentence_id, judgment_grade(j));
    }
    if (grades.size() != corpus.size()) {
      throw LengthMismatch("judgments cover " + std::to_string(grades.size()) +
                           " sentences, corpus has " + std::to_string(corpus.size()));
    }
    for (const auto& pair : corpus.pairs) {
      if (!grades.contains(pair.id)) {
        throw LengthMismatch("no judgment for sentence " + std::to_string(pair.id));
      }
    }
  }

  const auto vectors = extract_all(corpus, src_lm, tgt_lm, lexicon, cfg.threads);
  std::vector<FeatureRow> rows;
  rows.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    FeatureRow row{corpus.pairs[i].id, vectors[i], std::nullopt};
    if (!grades.empty()) row.grade = grades.at(row.id);
    rows.push_back(row);
  }
  write_features(rows, cfg.out);
  out << "rows\t" << rows.size() << '\n';
}

void cmd_train(const PipelineConfig& cfg, std::ostream& out) {
  const auto rows = read_features(cfg.features);
  std::vector<LabeledExample> examples;
  examples.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row.grade) throw InvalidArgument("training features must carry a grade column");
    examples.push_back({row.features, *row.grade});
  }
  const NaiveBayesModel model = train_nb(examples, cfg.variance_floor);
  model.save(cfg.out);
  out << "rows\t" << examples.size() << '\n';
  for (const auto& c : model.classes()) {
    out << "prior\t" << grade_name(c.grade) << '\t' << c.prior << '\n';
  }
}

void cmd_predict(const PipelineConfig& cfg, std::ostream& out) {
  const NaiveBayesModel model = NaiveBayesModel::load(cfg.model);
  std::map<std::uint64_t, Grade> predictions;
  for (const auto& row : read_features(cfg.features)) {
    predictions.emplace(row.id, model.predict(row.features).predicted);
  }
  atomic_write(cfg.out, format_grades(predictions));
  std::vector<Grade> grades;
  for (const auto& [id, g] : predictions) grades.push_back(g);
  const GradeHistogram h = histogram(grades);
  for (Grade g : kAllGrades) out << grade_name(g) << '\t' << h[g] << '\n';
}

void cmd_evaluate(const PipelineConfig& cfg, std::ostream& out) {
  const AlignedGrades aligned =
      align_grades(read_grades(cfg.human), read_grades(cfg.predicted));
  const EvaluationResult result = evaluate(aligned.human, aligned.predicted);
  atomic_write(cfg.out, format_evaluation_csv(result));
  out << format_evaluation_text(result);
}

void cmd_synth(const PipelineConfig& cfg, std::ostream& out) {
  write_synthetic_corpus(make_synthetic_corpus(cfg.pairs, cfg.seed), cfg.out_dir);
  out << "pairs\t" << cfg.pairs << "\nseed\t" << cfg.seed << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  PipelineConfig cfg;
  CLI::App app{"Reference-free MT quality estimation toolkit"};
  app.name(args.empty() ? "mtqe" : args.front());
  app.require_subcommand(1);

  std::map<const CLI::App*, std::function<void(const PipelineConfig&, std::ostream&)>>
      handlers;
  auto side_check = CLI::IsMember({"source", "target"});

  auto* stats = app.add_subcommand("stats", "Report sentence, word and unique-word counts");
  stats->add_option("--corpus", cfg.corpus, "One sentence per line")->required();
  stats->add_option("--side", cfg.side, "Tokenization side")->check(side_check);
  handlers[stats] = cmd_stats;

  auto* build_lm = app.add_subcommand("build-lm", "Train an add-one n-gram language model");
  build_lm->add_option("--corpus", cfg.corpus, "One sentence per line")->required();
  build_lm->add_option("--side", cfg.side, "Tokenization side")->check(side_check);
  build_lm->add_option("--order", cfg.lm_order, "n-gram order")
      ->check(CLI::Range(1, kMaxLmOrder))
      ->capture_default_str();
  build_lm->add_option("--out", cfg.out, "Model file")->required();
  handlers[build_lm] = cmd_build_lm;

  auto* build_lex =
      app.add_subcommand("build-lexicon", "Induce a Dice translation lexicon");
  build_lex->add_option("--pairs-src", cfg.pairs_src, "Source sentences")->required();
  build_lex->add_option("--pairs-tgt", cfg.pairs_tgt, "Target sentences")->required();
  build_lex->add_option("--threshold", cfg.lexicon_threshold, "Minimum Dice score")
      ->capture_default_str();
  build_lex->add_option("--out", cfg.out, "Lexicon TSV")->required();
  handlers[build_lex] = cmd_build_lexicon;

  auto* extract = app.add_subcommand("extract", "Compute the 16 features per pair");
  extract->add_option("--pairs-src", cfg.pairs_src, "Source sentences")->required();
  extract->add_option("--pairs-tgt", cfg.pairs_tgt, "MT output sentences")->required();
  extract->add_option("--src-lm", cfg.src_lm, "Source language model")->required();
  extract->add_option("--tgt-lm", cfg.tgt_lm, "Target language model")->required();
  extract->add_option("--lexicon", cfg.lexicon, "Lexicon TSV")->required();
  extract->add_option("--judgments", cfg.judgments, "Human judgments TSV (adds grades)");
  extract->add_option("--threads", cfg.threads, "Worker threads")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  extract->add_option("--out", cfg.out, "Feature CSV")->required();
  handlers[extract] = cmd_extract;

  auto* train = app.add_subcommand("train", "Train the naive Bayes classifier");
  train->add_option("--features", cfg.features, "Labeled feature CSV")->required();
  train->add_option("--variance-floor", cfg.variance_floor, "Absolute variance floor")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train->add_option("--out", cfg.out, "Model file")->required();
  handlers[train] = cmd_train;

  auto* predict = app.add_subcommand("predict", "Predict grades for feature rows");
  predict->add_option("--model", cfg.model, "Model file")->required();
  predict->add_option("--features", cfg.features, "Feature CSV")->required();
  predict->add_option("--out", cfg.out, "id,grade CSV")->required();
  handlers[predict] = cmd_predict;

  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "Compare predicted grades with human grades");
  evaluate_cmd->add_option("--human", cfg.human, "CSV with id and grade columns")
      ->required();
  evaluate_cmd->add_option("--predicted", cfg.predicted, "CSV with id and grade columns")
      ->required();
  evaluate_cmd->add_option("--out", cfg.out, "Evaluation CSV")->required();
  handlers[evaluate_cmd] = cmd_evaluate;

  auto* synth = app.add_subcommand("synth", "Generate a toy corpus with judgments");
  synth->add_option("--pairs", cfg.pairs, "Number of sentence pairs")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}))
      ->capture_default_str();
  synth->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  synth->add_option("--out-dir", cfg.out_dir, "Output directory")->required();
  handlers[synth] = cmd_synth;

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("mtqe");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (const auto& [sub, handler] : handlers) {
      if (sub->parsed()) {
        handler(cfg, out);
        return kExitOk;
      }
    }
    err << "error: no subcommand selected\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace mtqe
