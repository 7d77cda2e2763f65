#pragma once
// Sparse multivariate polynomials with int64 coefficients (overflow-checked).

#include "torvec/exactalg.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace torvec {

using Exponent = std::vector<std::uint32_t>;

// Graded lexicographic, largest monomial first.
struct GrlexGreater {
  auto operator()(const Exponent &a, const Exponent &b) const -> bool;
};

class Poly {
public:
  using Terms = std::map<Exponent, std::int64_t, GrlexGreater>;

  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}
  static auto constant(std::size_t nvars, std::int64_t c) -> Poly;
  // Σ u_j x_j
  static auto linear(const IntVec &u) -> Poly;

  [[nodiscard]] auto nvars() const -> std::size_t { return nvars_; }
  [[nodiscard]] auto terms() const -> const Terms & { return terms_; }
  [[nodiscard]] auto is_zero() const -> bool { return terms_.empty(); }
  [[nodiscard]] auto degree() const -> int;
  void add_term(const Exponent &e, std::int64_t c);

  // x_j -> Σ_l images[l][j] t_l: substitutes the point Σ_l t_l w_l where
  // w_l are the rows of `basis`. The result has basis.rows() variables.
  [[nodiscard]] auto substitute(const IntMat &basis) const -> Poly;
  [[nodiscard]] auto to_string() const -> std::string;

  friend auto operator+(const Poly &a, const Poly &b) -> Poly;
  friend auto operator-(const Poly &a, const Poly &b) -> Poly;
  friend auto operator*(const Poly &a, const Poly &b) -> Poly;
  friend auto operator==(const Poly &, const Poly &) -> bool = default;

private:
  std::size_t nvars_;
  Terms terms_;
};

} // namespace torvec
