#ifndef MTQE_NAIVE_BAYES_H_
#define MTQE_NAIVE_BAYES_H_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mtqe/features.h"
#include "mtqe/grading.h"

namespace mtqe {

inline constexpr double kDefaultVarianceFloor = 1e-12;
// Per-feature floor is max(kRelativeVarianceFloor * overall variance,
// absolute floor).
inline constexpr double kRelativeVarianceFloor = 1e-9;

struct LabeledExample {
  FeatureVector x;
  Grade y = Grade::kPoor;
};

struct Posterior {
  // One entry per model class, in grade order.
  std::vector<std::pair<Grade, double>> log_joint;
  Grade predicted = Grade::kPoor;
};

// Gaussian naive Bayes over the 16 features:
//   ln P(x, y) = ln P(y) + sum_i ln N(x_i; mean_{y,i}, var_{y,i})
class NaiveBayesModel {
 public:
  struct ClassParams {
    Grade grade = Grade::kPoor;
    double prior = 0.0;
    std::array<double, kNumFeatures> mean{};
    std::array<double, kNumFeatures> variance{};

    friend bool operator==(const ClassParams&, const ClassParams&) = default;
  };

  NaiveBayesModel() = default;

  const std::vector<ClassParams>& classes() const { return classes_; }
  double variance_floor() const { return variance_floor_; }

  Posterior log_joint(const FeatureVector& x) const;
  // Ties resolve to the lowest grade.
  Posterior predict(const FeatureVector& x) const { return log_joint(x); }

  // Versioned text; doubles are written as hexadecimal floats.
  std::string serialize() const;
  static NaiveBayesModel deserialize(std::string_view text);
  void save(const std::string& path) const;
  static NaiveBayesModel load(const std::string& path);

  friend bool operator==(const NaiveBayesModel&, const NaiveBayesModel&) = default;

  friend NaiveBayesModel train_nb(std::span<const LabeledExample> rows,
                                  double variance_floor);

 private:
  std::vector<ClassParams> classes_;
  double variance_floor_ = kDefaultVarianceFloor;
};

// Priors are relative class frequencies; means and population variances
// are per class and feature. Sums run over sorted values so the model
// does not depend on row order. Classes without examples are omitted.
NaiveBayesModel train_nb(std::span<const LabeledExample> rows,
                         double variance_floor = kDefaultVarianceFloor);

double gaussian_log_density(double x, double mean, double variance);

}  // namespace mtqe

#endif  // MTQE_NAIVE_BAYES_H_
