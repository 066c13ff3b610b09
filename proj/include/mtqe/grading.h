#ifndef MTQE_GRADING_H_
#define MTQE_GRADING_H_

#include <array>
#include <optional>
#include <string_view>

#include "mtqe/corpus.h"

namespace mtqe {

// Four-level quality label. Underlying values are the numeric ranks.
enum class Grade { kPoor = 1, kAverage = 2, kGood = 3, kExcellent = 4 };

inline constexpr int kNumGrades = 4;
inline constexpr std::array<Grade, kNumGrades> kAllGrades = {
    Grade::kPoor, Grade::kAverage, Grade::kGood, Grade::kExcellent};

// "Poor", "Average", "Good", "Excellent".
std::string_view grade_name(Grade g);
std::optional<Grade> parse_grade(std::string_view name);

inline int grade_to_rank(Grade g) { return static_cast<int>(g); }
// 0-based position in kAllGrades.
inline int grade_index(Grade g) { return static_cast<int>(g) - 1; }

// A normalized human quality score in [0,1].
class QualityScore {
 public:
  explicit QualityScore(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// Sum of the ten 0..4 parameters divided by 40.
QualityScore aggregate_judgment(const HumanJudgment& judgment);

// Poor <= 0.25 < Average <= 0.50 < Good <= 0.75 < Excellent.
Grade score_to_grade(QualityScore score);

inline Grade judgment_grade(const HumanJudgment& judgment) {
  return score_to_grade(aggregate_judgment(judgment));
}

}  // namespace mtqe

#endif  // MTQE_GRADING_H_
