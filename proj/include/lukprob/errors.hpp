// Exception hierarchy shared by every lukprob module.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lukprob {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula or term text. `position` is 1-based; one past the last
/// character denotes end of input.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected, const std::string& found);

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class UnknownMacro : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class UnknownProp : public Error {
 public:
  using Error::Error;
};

class UnknownWorld : public Error {
 public:
  using Error::Error;
};

class UnknownState : public Error {
 public:
  using Error::Error;
};

class UndefinedMeasure : public Error {
 public:
  using Error::Error;
};

class BasisTooLarge : public Error {
 public:
  BasisTooLarge(std::size_t props, std::size_t cap);
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class FragmentError : public Error {
 public:
  using Error::Error;
};

/// A prover result failed its own exact re-check. Always a bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace lukprob
