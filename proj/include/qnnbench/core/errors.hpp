#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qnnbench {

// Malformed experiment configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input data problems (CLI exit code 3).
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public DataError {
public:
  using DataError::DataError;
};

class RowError : public DataError {
public:
  RowError(std::size_t line, const std::string &what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// A benchmark sub-stage failed (CLI exit code 4). Carries the location so the
// caller can report which job aborted the run.
class StageError : public std::runtime_error {
public:
  StageError(std::string stage, std::string model, std::size_t size, int fold,
             const std::string &cause)
      : std::runtime_error("stage=" + stage + " model=" + model +
                           " size=" + std::to_string(size) +
                           " fold=" + (fold < 0 ? std::string("-") : std::to_string(fold)) +
                           ": " + cause),
        stage_(std::move(stage)), model_(std::move(model)), size_(size), fold_(fold) {}

  const std::string &stage() const noexcept { return stage_; }
  const std::string &model() const noexcept { return model_; }
  std::size_t size() const noexcept { return size_; }
  int fold() const noexcept { return fold_; }

private:
  std::string stage_;
  std::string model_;
  std::size_t size_;
  int fold_;
};

} // namespace qnnbench
