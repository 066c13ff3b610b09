#include "mtqe/grading.h"

#include <numeric>
#include <string>

#include "mtqe/error.h"

namespace mtqe {

std::string_view grade_name(Grade g) {
  switch (g) {
    case Grade::kPoor: return "Poor";
    case Grade::kAverage: return "Average";
    case Grade::kGood: return "Good";
    case Grade::kExcellent: return "Excellent";
  }
  return "?";
}

std::optional<Grade> parse_grade(std::string_view name) {
  for (Grade g : kAllGrades) {
    if (grade_name(g) == name) return g;
  }
  return std::nullopt;
}

QualityScore::QualityScore(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidArgument("quality score must lie in [0,1], got " +
                          std::to_string(value));
  }
}

QualityScore aggregate_judgment(const HumanJudgment& judgment) {
  const int sum = std::accumulate(judgment.params.begin(), judgment.params.end(), 0);
  return QualityScore(static_cast<double>(sum) /
                      (kNumJudgmentParams * kMaxParamScore));
}

Grade score_to_grade(QualityScore score) {
  const double s = score.value();
  if (s <= 0.25) return Grade::kPoor;
  if (s <= 0.50) return Grade::kAverage;
  if (s <= 0.75) return Grade::kGood;
  return Grade::kExcellent;
}

}  // namespace mtqe
