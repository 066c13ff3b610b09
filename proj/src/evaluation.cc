#include "mtqe/evaluation.h"

#include <charconv>
#include <cstdio>

#include "mtqe/error.h"
#include "mtqe/text.h"

namespace mtqe {

namespace {

void require_equal_nonempty(std::size_t a, std::size_t b) {
  if (a != b) throw LengthMismatch(a, b);
  if (a == 0) throw InvalidArgument("grade sequences must be non-empty");
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::size_t GradeHistogram::total() const {
  std::size_t n = 0;
  for (std::size_t c : counts) n += c;
  return n;
}

GradeHistogram& GradeHistogram::operator+=(const GradeHistogram& other) {
  for (int i = 0; i < kNumGrades; ++i) counts[i] += other.counts[i];
  return *this;
}

double AgreementReport::percentage() const {
  if (total == 0) return 0.0;
  return 100.0 * static_cast<double>(same) / static_cast<double>(total);
}

std::string AgreementReport::percentage_text() const {
  return format_percentage(same, total);
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t t = 0;
  for (int i = 0; i < kNumGrades; ++i) t += cells[i][i];
  return t;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (const auto& row : cells) {
    for (std::size_t c : row) t += c;
  }
  return t;
}

GradeHistogram ConfusionMatrix::human_marginal() const {
  GradeHistogram h;
  for (int i = 0; i < kNumGrades; ++i) {
    for (int j = 0; j < kNumGrades; ++j) h.counts[i] += cells[i][j];
  }
  return h;
}

GradeHistogram ConfusionMatrix::predicted_marginal() const {
  GradeHistogram h;
  for (int i = 0; i < kNumGrades; ++i) {
    for (int j = 0; j < kNumGrades; ++j) h.counts[j] += cells[i][j];
  }
  return h;
}

GradeHistogram histogram(std::span<const Grade> grades) {
  GradeHistogram h;
  for (Grade g : grades) ++h[g];
  return h;
}

AgreementReport agreement(std::span<const Grade> human,
                          std::span<const Grade> predicted) {
  require_equal_nonempty(human.size(), predicted.size());
  AgreementReport report;
  report.total = human.size();
  for (std::size_t i = 0; i < human.size(); ++i) {
    if (human[i] == predicted[i]) ++report.same;
  }
  return report;
}

ConfusionMatrix confusion(std::span<const Grade> human,
                          std::span<const Grade> predicted) {
  if (human.size() != predicted.size()) {
    throw LengthMismatch(human.size(), predicted.size());
  }
  ConfusionMatrix m;
  for (std::size_t i = 0; i < human.size(); ++i) {
    ++m.cells[grade_index(human[i])][grade_index(predicted[i])];
  }
  return m;
}

std::string format_percentage(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) return "0.00";
  const unsigned __int128 scaled = static_cast<unsigned __int128>(numerator) * 10000;
  auto q = static_cast<std::uint64_t>(scaled / denominator);
  const auto r = static_cast<std::uint64_t>(scaled % denominator);
  const unsigned __int128 twice = static_cast<unsigned __int128>(r) * 2;
  if (twice > denominator || (twice == denominator && (q & 1))) ++q;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%llu.%02llu",
                static_cast<unsigned long long>(q / 100),
                static_cast<unsigned long long>(q % 100));
  return buf;
}

std::map<std::uint64_t, Grade> parse_grades(std::string_view csv) {
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
  if (lines.empty()) throw MalformedHeader("grade file is empty");

  const auto header = split(lines.front(), ',');
  std::size_t id_col = header.size();
  std::size_t grade_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "id") id_col = i;
    if (header[i] == "grade") grade_col = i;
  }
  if (id_col == header.size() || grade_col == header.size()) {
    throw MalformedHeader("grade file needs 'id' and 'grade' columns");
  }

  std::map<std::uint64_t, Grade> grades;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split(lines[r], ',');
    if (cells.size() != header.size()) throw MalformedRow(r - 1, "wrong cell count");
    std::uint64_t id = 0;
    const std::string_view id_cell = cells[id_col];
    auto [ptr, ec] = std::from_chars(id_cell.data(), id_cell.data() + id_cell.size(), id);
    if (ec != std::errc() || ptr != id_cell.data() + id_cell.size()) {
      throw MalformedRow(r - 1, "bad id");
    }
    const auto grade = parse_grade(cells[grade_col]);
    if (!grade) throw MalformedRow(r - 1, "unknown grade");
    if (!grades.emplace(id, *grade).second) throw MalformedRow(r - 1, "duplicate id");
  }
  return grades;
}

std::map<std::uint64_t, Grade> read_grades(const std::string& path) {
  return parse_grades(read_file(path));
}

std::string format_grades(const std::map<std::uint64_t, Grade>& grades) {
  std::string out = "id,grade\n";
  for (const auto& [id, g] : grades) {
    out += std::to_string(id);
    out += ',';
    out += grade_name(g);
    out += '\n';
  }
  return out;
}

AlignedGrades align_grades(const std::map<std::uint64_t, Grade>& human,
                           const std::map<std::uint64_t, Grade>& predicted) {
  if (human.size() != predicted.size()) {
    throw LengthMismatch(human.size(), predicted.size());
  }
  AlignedGrades aligned;
  for (const auto& [id, g] : human) {
    const auto it = predicted.find(id);
    if (it == predicted.end()) {
      throw LengthMismatch("id " + std::to_string(id) + " has no predicted grade");
    }
    aligned.human.push_back(g);
    aligned.predicted.push_back(it->second);
  }
  return aligned;
}

EvaluationResult evaluate(std::span<const Grade> human,
                          std::span<const Grade> predicted) {
  EvaluationResult result;
  result.agreement = agreement(human, predicted);
  result.confusion = confusion(human, predicted);
  result.human = histogram(human);
  result.predicted = histogram(predicted);
  return result;
}

std::string format_evaluation_csv(const EvaluationResult& result) {
  std::string out = "grade,human_count,predicted_count\n";
  for (Grade g : kAllGrades) {
    out += std::string(grade_name(g)) + ',' + std::to_string(result.human[g]) + ',' +
           std::to_string(result.predicted[g]) + '\n';
  }
  out += "same,total,percentage\n";
  out += std::to_string(result.agreement.same) + ',' +
         std::to_string(result.agreement.total) + ',' +
         result.agreement.percentage_text() + '\n';
  return out;
}

std::string format_evaluation_text(const EvaluationResult& result) {
  std::string out;
  char line[160];
  out += "Grade histograms\n";
  std::snprintf(line, sizeof(line), "  %-10s %10s %10s\n", "grade", "human",
                "predicted");
  out += line;
  for (Grade g : kAllGrades) {
    std::snprintf(line, sizeof(line), "  %-10s %10zu %10zu\n",
                  std::string(grade_name(g)).c_str(), result.human[g],
                  result.predicted[g]);
    out += line;
  }
  out += "\nConfusion matrix (rows: human, columns: predicted)\n";
  std::snprintf(line, sizeof(line), "  %-10s", "");
  out += line;
  for (Grade g : kAllGrades) {
    std::snprintf(line, sizeof(line), " %10s", std::string(grade_name(g)).c_str());
    out += line;
  }
  out += '\n';
  for (Grade h : kAllGrades) {
    std::snprintf(line, sizeof(line), "  %-10s", std::string(grade_name(h)).c_str());
    out += line;
    for (Grade p : kAllGrades) {
      std::snprintf(line, sizeof(line), " %10zu", result.confusion.at(h, p));
      out += line;
    }
    out += '\n';
  }
  out += "\nSame-grade agreement: " + std::to_string(result.agreement.same) + " / " +
         std::to_string(result.agreement.total) + " = " +
         result.agreement.percentage_text() + "%\n";
  return out;
}

}  // namespace mtqe
