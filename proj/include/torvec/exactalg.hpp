#pragma once
// Exact linear algebra over Q and F_p, and integer lattice normal forms.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace torvec {

using IntVec = std::vector<std::int64_t>;

// A field element. Over Q: num/den in lowest terms with den > 0. Over F_p:
// den == 1 and num is the residue in [0, p). Only meaningful together with
// the Field that produced it.
struct Scalar {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend auto operator==(const Scalar &, const Scalar &) -> bool = default;
  friend auto operator<=>(const Scalar &, const Scalar &) = default;
};

class Field {
public:
  enum class Kind { rationals, prime };

  static auto rationals() -> Field { return Field{Kind::rationals, 0}; }
  // Throws InputError unless 2 <= p < 2^31 and p is prime.
  static auto prime(std::int64_t p) -> Field;

  [[nodiscard]] auto kind() const -> Kind { return kind_; }
  [[nodiscard]] auto is_prime() const -> bool { return kind_ == Kind::prime; }
  [[nodiscard]] auto modulus() const -> std::int64_t { return p_; }
  [[nodiscard]] auto name() const -> std::string;

  [[nodiscard]] auto zero() const -> Scalar { return {0, 1}; }
  [[nodiscard]] auto one() const -> Scalar { return {1, 1}; }
  [[nodiscard]] auto from_int(std::int64_t v) const -> Scalar;
  [[nodiscard]] auto from_ratio(std::int64_t num, std::int64_t den) const -> Scalar;

  [[nodiscard]] auto add(Scalar a, Scalar b) const -> Scalar;
  [[nodiscard]] auto sub(Scalar a, Scalar b) const -> Scalar;
  [[nodiscard]] auto mul(Scalar a, Scalar b) const -> Scalar;
  [[nodiscard]] auto neg(Scalar a) const -> Scalar;
  [[nodiscard]] auto inv(Scalar a) const -> Scalar;
  [[nodiscard]] auto div(Scalar a, Scalar b) const -> Scalar { return mul(a, inv(b)); }
  [[nodiscard]] static auto is_zero(Scalar a) -> bool { return a.num == 0; }

  // "3/4", "-2", "5" over Q; a decimal integer (reduced mod p) over F_p.
  [[nodiscard]] auto parse(std::string_view text) const -> Scalar;
  [[nodiscard]] auto format(Scalar a) const -> std::string;

  friend auto operator==(const Field &, const Field &) -> bool = default;

private:
  Field(Kind kind, std::int64_t p) : kind_(kind), p_(p) {}
  Kind kind_;
  std::int64_t p_;
};

// Dense row-major matrix over a Field.
class Mat {
public:
  Mat(Field field, std::size_t rows, std::size_t cols);
  static auto identity(Field field, std::size_t n) -> Mat;
  static auto from_ints(Field field, std::size_t cols,
                        const std::vector<IntVec> &rows) -> Mat;

  [[nodiscard]] auto field() const -> const Field & { return field_; }
  [[nodiscard]] auto rows() const -> std::size_t { return rows_; }
  [[nodiscard]] auto cols() const -> std::size_t { return cols_; }
  auto operator()(std::size_t i, std::size_t j) -> Scalar & { return data_[i * cols_ + j]; }
  auto operator()(std::size_t i, std::size_t j) const -> const Scalar & {
    return data_[i * cols_ + j];
  }
  [[nodiscard]] auto row(std::size_t i) const -> std::span<const Scalar> {
    return {data_.data() + i * cols_, cols_};
  }
  void append_row(std::span<const Scalar> values);

  [[nodiscard]] auto transpose() const -> Mat;
  [[nodiscard]] auto is_invertible() const -> bool;
  friend auto operator*(const Mat &a, const Mat &b) -> Mat;
  friend auto operator==(const Mat &, const Mat &) -> bool = default;

private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

struct Rref {
  Mat form; // zero rows removed
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

auto rref(const Mat &m) -> Rref;

// A linear subspace of k^r, stored by its canonical RREF basis so that
// equality of subspaces is equality of representations.
class Subspace {
public:
  static auto span(const Mat &generators) -> Subspace;
  static auto zero(Field field, std::size_t ambient) -> Subspace;
  static auto full(Field field, std::size_t ambient) -> Subspace;

  [[nodiscard]] auto field() const -> const Field & { return basis_.field(); }
  [[nodiscard]] auto ambient_dim() const -> std::size_t { return basis_.cols(); }
  [[nodiscard]] auto dim() const -> std::size_t { return basis_.rows(); }
  [[nodiscard]] auto basis() const -> const Mat & { return basis_; }
  [[nodiscard]] auto pivots() const -> const std::vector<std::size_t> & { return pivots_; }

  [[nodiscard]] auto contains(std::span<const Scalar> v) const -> bool;
  [[nodiscard]] auto contains(const Subspace &other) const -> bool;
  // phi(V) for phi : k^ambient -> k^m given as an m x ambient matrix.
  [[nodiscard]] auto image(const Mat &phi) const -> Subspace;

  friend auto operator==(const Subspace &a, const Subspace &b) -> bool {
    return a.basis_ == b.basis_;
  }
  // Total order on canonical bases; used only for deterministic sorting.
  friend auto operator<(const Subspace &a, const Subspace &b) -> bool;

private:
  explicit Subspace(Rref r) : basis_(std::move(r.form)), pivots_(std::move(r.pivots)) {}
  Mat basis_;
  std::vector<std::size_t> pivots_;
};

// All of these throw InputError on ambient-dimension or field mismatch.
auto intersect(const Subspace &a, const Subspace &b) -> Subspace;
auto sum(const Subspace &a, const Subspace &b) -> Subspace;
// A complement c of w inside u (w + c = u, w ∩ c = 0): scans the RREF basis
// of u in order and keeps each vector not yet in the running span.
// Throws MathError if w is not contained in u.
auto complement_within(const Subspace &w, const Subspace &u) -> Subspace;

// Dense integer matrix. Arithmetic is overflow-checked (std::overflow_error).
class IntMat {
public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static auto from_rows(std::size_t cols, const std::vector<IntVec> &rows) -> IntMat;
  static auto identity(std::size_t n) -> IntMat;

  [[nodiscard]] auto rows() const -> std::size_t { return rows_; }
  [[nodiscard]] auto cols() const -> std::size_t { return cols_; }
  auto operator()(std::size_t i, std::size_t j) -> std::int64_t & { return data_[i * cols_ + j]; }
  auto operator()(std::size_t i, std::size_t j) const -> std::int64_t {
    return data_[i * cols_ + j];
  }
  [[nodiscard]] auto row(std::size_t i) const -> IntVec;
  [[nodiscard]] auto row_vectors() const -> std::vector<IntVec>;
  [[nodiscard]] auto transpose() const -> IntMat;
  friend auto operator==(const IntMat &, const IntMat &) -> bool = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

// transform * input == hnf, transform unimodular; hnf is the row-style
// Hermite normal form (positive pivots, entries above a pivot reduced into
// [0, pivot)) with its zero rows kept at the bottom.
struct HermiteDecomposition {
  IntMat hnf;
  IntMat transform;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

auto hermite_decompose(const IntMat &a) -> HermiteDecomposition;
// Row HNF with zero rows removed.
auto hermite_normal_form(const IntMat &a) -> IntMat;
// HNF basis of {u in Z^n : a u = 0}; zero rows when the kernel is trivial.
auto integer_kernel(const IntMat &a) -> IntMat;
// Some u in Z^n with a u = b, or nullopt when none exists.
auto solve_integer(const IntMat &a, const IntVec &b) -> std::optional<IntVec>;
// v / gcd(v). Throws InputError on the zero vector.
auto primitive(const IntVec &v) -> IntVec;
auto dot(const IntVec &a, const IntVec &b) -> std::int64_t;

} // namespace torvec
