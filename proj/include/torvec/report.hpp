#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torvec {

// Outcome of a validation pass. `ok == false` carries the first violation.
struct Report {
  bool ok = true;
  std::string message;

  static auto pass(std::string note = {}) -> Report { return {true, std::move(note)}; }
  static auto fail(std::string why) -> Report { return {false, std::move(why)}; }
  explicit operator bool() const { return ok; }
};

// A mathematical failure: the input is well-formed but is not what it claims
// to be (not a toric vector bundle, incompatible data, ...).
class MathError : public std::runtime_error {
public:
  explicit MathError(const std::string &what, std::vector<std::int64_t> witness = {})
      : std::runtime_error(what), witness_(std::move(witness)) {}
  [[nodiscard]] auto witness() const -> const std::vector<std::int64_t> & { return witness_; }

private:
  std::vector<std::int64_t> witness_;
};

// A malformed input (bad file, wrong shape, out-of-range index).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(const std::string &what, double search_space)
      : std::runtime_error(what), search_space_(search_space) {}
  [[nodiscard]] auto search_space() const -> double { return search_space_; }

private:
  double search_space_;
};

} // namespace torvec
