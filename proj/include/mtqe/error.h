#ifndef MTQE_ERROR_H_
#define MTQE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtqe {

// Base for every contract violation raised by the library. The CLI maps
// these to exit code 2; anything else escaping is an internal fault.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IoFailure : public Error {
 public:
  IoFailure(std::string path, const std::string& what)
      : Error(what + ": " + path), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class LineCountMismatch : public Error {
 public:
  LineCountMismatch(std::size_t n_src, std::size_t n_tgt)
      : Error("line count mismatch: source has " + std::to_string(n_src) +
              " lines, target has " + std::to_string(n_tgt)),
        n_src_(n_src),
        n_tgt_(n_tgt) {}
  std::size_t n_src() const { return n_src_; }
  std::size_t n_tgt() const { return n_tgt_; }

 private:
  std::size_t n_src_;
  std::size_t n_tgt_;
};

// line_no is 1-based.
class InvalidEncoding : public Error {
 public:
  explicit InvalidEncoding(std::size_t line_no)
      : Error("invalid UTF-8 on line " + std::to_string(line_no)),
        line_no_(line_no) {}
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

// row is the 0-based data row (header excluded); col is the parameter
// number 1..10.
class OutOfRangeScore : public Error {
 public:
  OutOfRangeScore(std::size_t row, int col, long value)
      : Error("score out of range [0,4] at row " + std::to_string(row) +
              ", p" + std::to_string(col) + ": " + std::to_string(value)),
        row_(row),
        col_(col),
        value_(value) {}
  std::size_t row() const { return row_; }
  int col() const { return col_; }
  long value() const { return value_; }

 private:
  std::size_t row_;
  int col_;
  long value_;
};

class MalformedRow : public Error {
 public:
  MalformedRow(std::size_t row, const std::string& detail)
      : Error("malformed row " + std::to_string(row) + ": " + detail),
        row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

class MalformedHeader : public Error {
 public:
  using Error::Error;
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("corpus contains no sentences") {}
};

class EmptyTrainingSet : public Error {
 public:
  EmptyTrainingSet() : Error("training set contains no rows") {}
};

class VersionMismatch : public Error {
 public:
  using Error::Error;
};

class CorruptModel : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t a, std::size_t b)
      : Error("length mismatch: " + std::to_string(a) + " vs " +
              std::to_string(b)) {}
  explicit LengthMismatch(const std::string& what) : Error(what) {}
};

class MixedLabeling : public Error {
 public:
  MixedLabeling()
      : Error("labeled and unlabeled rows cannot share one feature file") {}
};

}  // namespace mtqe

#endif  // MTQE_ERROR_H_
