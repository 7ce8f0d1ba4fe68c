#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kgapp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Raised by every text parser in the library. `position` is a 1-based line
// number or a 0-based byte offset, depending on `unit`.
class ParseError : public Error {
 public:
  enum class Unit { kLine, kRow, kByte };

  ParseError(const std::string& what, Unit unit, std::size_t position)
      : Error(Describe(what, unit, position)), unit_(unit), position_(position) {}

  Unit unit() const noexcept { return unit_; }
  std::size_t position() const noexcept { return position_; }

 private:
  static std::string Describe(const std::string& what, Unit unit, std::size_t position) {
    switch (unit) {
      case Unit::kLine:
        return "line " + std::to_string(position) + ": " + what;
      case Unit::kRow:
        return "row " + std::to_string(position) + ": " + what;
      case Unit::kByte:
        return "byte offset " + std::to_string(position) + ": " + what;
    }
    return what;
  }

  Unit unit_;
  std::size_t position_;
};

class FetchError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

class StageError : public Error {
 public:
  using Error::Error;
};

}  // namespace kgapp
