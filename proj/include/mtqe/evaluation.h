#ifndef MTQE_EVALUATION_H_
#define MTQE_EVALUATION_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtqe/grading.h"

namespace mtqe {

struct GradeHistogram {
  std::array<std::size_t, kNumGrades> counts{};

  std::size_t& operator[](Grade g) { return counts[grade_index(g)]; }
  std::size_t operator[](Grade g) const { return counts[grade_index(g)]; }
  std::size_t total() const;

  GradeHistogram& operator+=(const GradeHistogram& other);
  friend bool operator==(const GradeHistogram&, const GradeHistogram&) = default;
};

struct AgreementReport {
  std::size_t same = 0;
  std::size_t total = 0;

  double percentage() const;
  // Two decimals, rounded half-to-even on the exact ratio.
  std::string percentage_text() const;
};

struct ConfusionMatrix {
  // cells[human][predicted], indexed by grade_index.
  std::array<std::array<std::size_t, kNumGrades>, kNumGrades> cells{};

  std::size_t at(Grade human, Grade predicted) const {
    return cells[grade_index(human)][grade_index(predicted)];
  }
  std::size_t trace() const;
  std::size_t total() const;
  GradeHistogram human_marginal() const;
  GradeHistogram predicted_marginal() const;
};

GradeHistogram histogram(std::span<const Grade> grades);

// Throws LengthMismatch on unequal lengths, InvalidArgument when empty.
AgreementReport agreement(std::span<const Grade> human,
                          std::span<const Grade> predicted);
ConfusionMatrix confusion(std::span<const Grade> human,
                          std::span<const Grade> predicted);

// 100 * numerator / denominator rendered with two decimals, exact
// half-to-even rounding.
std::string format_percentage(std::uint64_t numerator, std::uint64_t denominator);

// Grade files are CSV with at least `id` and `grade` columns (a labeled
// feature file qualifies).
std::map<std::uint64_t, Grade> parse_grades(std::string_view csv);
std::map<std::uint64_t, Grade> read_grades(const std::string& path);
std::string format_grades(const std::map<std::uint64_t, Grade>& grades);

struct AlignedGrades {
  std::vector<Grade> human;
  std::vector<Grade> predicted;
};

// Pairs grades by id; both files must cover the same ids.
AlignedGrades align_grades(const std::map<std::uint64_t, Grade>& human,
                           const std::map<std::uint64_t, Grade>& predicted);

struct EvaluationResult {
  GradeHistogram human;
  GradeHistogram predicted;
  AgreementReport agreement;
  ConfusionMatrix confusion;
};

EvaluationResult evaluate(std::span<const Grade> human,
                          std::span<const Grade> predicted);

// `grade,human_count,predicted_count` rows then a `same,total,percentage`
// footer.
std::string format_evaluation_csv(const EvaluationResult& result);
std::string format_evaluation_text(const EvaluationResult& result);

}  // namespace mtqe

#endif  // MTQE_EVALUATION_H_
