#include "mtqe/naive_bayes.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "mtqe/error.h"
#include "mtqe/text.h"

namespace mtqe {

namespace {

constexpr std::string_view kMagic = "mtqe-naive-bayes";
constexpr int kFormatVersion = 1;

// Mean and population variance of values, summed in sorted order.
std::pair<double, double> sorted_moments(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  std::vector<double> squares;
  squares.reserve(values.size());
  for (double v : values) squares.push_back((v - mean) * (v - mean));
  std::sort(squares.begin(), squares.end());
  double ss = 0.0;
  for (double s : squares) ss += s;
  return {mean, ss / n};
}

std::string hex(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::hex);
  return std::string(buf, ptr);
}

double parse_hex(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] =
      std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::hex);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw CorruptModel("bad floating-point field '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

class Lines {
 public:
  explicit Lines(std::string_view text) : text_(text) {}
  std::vector<std::string_view> next() {
    if (pos_ >= text_.size()) throw CorruptModel("model file is truncated");
    std::size_t nl = text_.find('\n', pos_);
    if (nl == std::string_view::npos) nl = text_.size();
    const std::string_view line = text_.substr(pos_, nl - pos_);
    pos_ = nl + 1;
    return split_tabs(line);
  }
  bool at_end() const { return pos_ >= text_.size(); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::vector<std::string_view> expect(Lines& lines, std::string_view key,
                                     std::size_t fields) {
  auto cells = lines.next();
  if (cells.size() != fields + 1 || cells[0] != key) {
    throw CorruptModel("expected '" + std::string(key) + "' line");
  }
  return cells;
}

}  // namespace

double gaussian_log_density(double x, double mean, double variance) {
  const double d = x - mean;
  return -0.5 * std::log(2.0 * std::numbers::pi * variance) -
         d * d / (2.0 * variance);
}

NaiveBayesModel train_nb(std::span<const LabeledExample> rows,
                         double variance_floor) {
  if (rows.empty()) throw EmptyTrainingSet();
  if (!(variance_floor > 0.0) || !std::isfinite(variance_floor)) {
    throw InvalidArgument("variance floor must be positive");
  }

  std::array<double, kNumFeatures> floors{};
  for (std::size_t f = 0; f < kNumFeatures; ++f) {
    std::vector<double> column;
    column.reserve(rows.size());
    for (const auto& r : rows) column.push_back(r.x[f]);
    const double overall = sorted_moments(column).second;
    floors[f] = std::max(kRelativeVarianceFloor * overall, variance_floor);
  }

  NaiveBayesModel model;
  model.variance_floor_ = variance_floor;
  const double total = static_cast<double>(rows.size());
  for (Grade g : kAllGrades) {
    std::vector<const LabeledExample*> members;
    for (const auto& r : rows) {
      if (r.y == g) members.push_back(&r);
    }
    if (members.empty()) continue;

    NaiveBayesModel::ClassParams params;
    params.grade = g;
    params.prior = static_cast<double>(members.size()) / total;
    std::vector<double> column(members.size());
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
      for (std::size_t i = 0; i < members.size(); ++i) column[i] = members[i]->x[f];
      const auto [mean, var] = sorted_moments(column);
      params.mean[f] = mean;
      params.variance[f] = std::max(var, floors[f]);
    }
    model.classes_.push_back(params);
  }
  return model;
}

Posterior NaiveBayesModel::log_joint(const FeatureVector& x) const {
  Posterior post;
  double best = 0.0;
  for (const auto& c : classes_) {
    double lj = std::log(c.prior);
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
      lj += gaussian_log_density(x[f], c.mean[f], c.variance[f]);
    }
    if (post.log_joint.empty() || lj > best) {
      best = lj;
      post.predicted = c.grade;
    }
    post.log_joint.emplace_back(c.grade, lj);
  }
  return post;
}

std::string NaiveBayesModel::serialize() const {
  std::string out;
  out += std::string(kMagic) + '\t' + std::to_string(kFormatVersion) + '\n';
  out += "features\t" + std::to_string(kNumFeatures) + '\n';
  out += "variance_floor\t" + hex(variance_floor_) + '\n';
  out += "classes\t" + std::to_string(classes_.size()) + '\n';
  for (const auto& c : classes_) {
    out += "class\t" + std::string(grade_name(c.grade)) + '\t' + hex(c.prior) + '\n';
    out += "mean";
    for (double m : c.mean) out += '\t' + hex(m);
    out += "\nvariance";
    for (double v : c.variance) out += '\t' + hex(v);
    out += '\n';
  }
  out += "end\n";
  return out;
}

NaiveBayesModel NaiveBayesModel::deserialize(std::string_view text) {
  Lines lines(text);
  {
    const auto magic = lines.next();
    if (magic.size() != 2 || magic[0] != kMagic) {
      throw CorruptModel("not a naive Bayes model file");
    }
    if (magic[1] != std::to_string(kFormatVersion)) {
      throw VersionMismatch("unsupported naive Bayes model version " +
                            std::string(magic[1]));
    }
  }
  if (expect(lines, "features", 1)[1] != std::to_string(kNumFeatures)) {
    throw CorruptModel("feature count mismatch");
  }

  NaiveBayesModel model;
  model.variance_floor_ = parse_hex(expect(lines, "variance_floor", 1)[1]);
  if (!(model.variance_floor_ > 0.0)) throw CorruptModel("non-positive variance floor");

  const std::string_view count_cell = expect(lines, "classes", 1)[1];
  std::size_t count = 0;
  auto [ptr, ec] =
      std::from_chars(count_cell.data(), count_cell.data() + count_cell.size(), count);
  if (ec != std::errc() || ptr != count_cell.data() + count_cell.size() ||
      count < 1 || count > kNumGrades) {
    throw CorruptModel("bad class count");
  }

  double prior_sum = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const auto header = expect(lines, "class", 2);
    ClassParams c;
    const auto grade = parse_grade(header[1]);
    if (!grade) throw CorruptModel("unknown grade '" + std::string(header[1]) + "'");
    if (!model.classes_.empty() && *grade <= model.classes_.back().grade) {
      throw CorruptModel("classes out of order");
    }
    c.grade = *grade;
    c.prior = parse_hex(header[2]);
    if (!(c.prior > 0.0 && c.prior <= 1.0)) throw CorruptModel("prior outside (0,1]");
    prior_sum += c.prior;

    const auto means = expect(lines, "mean", kNumFeatures);
    const auto vars = expect(lines, "variance", kNumFeatures);
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
      c.mean[f] = parse_hex(means[f + 1]);
      c.variance[f] = parse_hex(vars[f + 1]);
      if (!(c.variance[f] >= model.variance_floor_)) {
        throw CorruptModel("variance below floor");
      }
    }
    model.classes_.push_back(c);
  }
  if (std::abs(prior_sum - 1.0) > 1e-12) throw CorruptModel("priors do not sum to 1");
  if (lines.next() != std::vector<std::string_view>{"end"}) {
    throw CorruptModel("missing end marker");
  }
  if (!lines.at_end()) throw CorruptModel("trailing data after end marker");
  return model;
}

void NaiveBayesModel::save(const std::string& path) const {
  atomic_write(path, serialize());
}

NaiveBayesModel NaiveBayesModel::load(const std::string& path) {
  return deserialize(read_file(path));
}

}  // namespace mtqe
