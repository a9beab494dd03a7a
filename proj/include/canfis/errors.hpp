#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace canfis {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A membership-function parameter or an input value is outside its domain
/// (non-finite input, a <= 0, b <= 0).
class ParameterDomainError : public Error {
public:
  using Error::Error;
};

/// Vector or table sizes disagree.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Invalid network/training/experiment configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Dataset content is unusable (empty, non-finite entries, ...).
class DataError : public Error {
public:
  using Error::Error;
};

/// File could not be opened, read or written.
class FileError : public Error {
public:
  FileError(const std::string& what, std::string path)
      : Error(what + ": " + path), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

/// CSV parsing problems. `row` is the 1-based line number in the file
/// (the header is row 1), `column` is 1-based; 0 means "not applicable".
class CsvError : public Error {
public:
  enum class Kind { MissingFile, MalformedHeader, ParseError, EmptyBody, WrongFieldCount };

  CsvError(Kind kind, std::size_t row, std::size_t column, const std::string& what)
      : Error(what), kind_(kind), row_(row), column_(column) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

private:
  Kind kind_;
  std::size_t row_;
  std::size_t column_;
};

/// Loss became non-finite during training.
class TrainingDivergedError : public Error {
public:
  explicit TrainingDivergedError(int epoch)
      : Error("training diverged at epoch " + std::to_string(epoch)), epoch_(epoch) {}
  int epoch() const noexcept { return epoch_; }

private:
  int epoch_;
};

/// Pearson r (and NMSE) are undefined for a constant series.
class CorrelationUndefinedError : public Error {
public:
  CorrelationUndefinedError(const std::string& what, int output)
      : Error(what), output_(output) {}
  /// Output index (0 = S, 1 = C), or -1 when not tied to a network output.
  int output() const noexcept { return output_; }

private:
  int output_;
};

}  // namespace canfis
