#include "torvec/exactalg.hpp"

#include "torvec/checked.hpp"
#include "torvec/report.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace torvec {

using checked::i128;

namespace {

auto normalize(i128 num, i128 den) -> Scalar {
  if (den == 0) throw std::domain_error("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return {checked::narrow(num), checked::narrow(den)};
}

auto parse_int(std::string_view s) -> std::int64_t {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw InputError("not an integer: '" + std::string(s) + "'");
  return v;
}

// (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0.
auto egcd(std::int64_t a, std::int64_t b) -> std::tuple<std::int64_t, std::int64_t, std::int64_t> {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
    std::tie(old_s, s) = std::make_tuple(s, checked::sub(old_s, checked::mul(q, s)));
    std::tie(old_t, t) = std::make_tuple(t, checked::sub(old_t, checked::mul(q, t)));
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

void check_compatible(const Subspace &a, const Subspace &b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw InputError("subspaces live in different ambient spaces");
  if (a.field() != b.field()) throw InputError("subspaces are over different fields");
}

} // namespace

// ---------------------------------------------------------------- Field

auto Field::prime(std::int64_t p) -> Field {
  if (p < 2 || p >= (std::int64_t{1} << 31))
    throw InputError("prime modulus out of range: " + std::to_string(p));
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw InputError("modulus is not prime: " + std::to_string(p));
  return Field{Kind::prime, p};
}

auto Field::name() const -> std::string {
  return is_prime() ? "F_" + std::to_string(p_) : std::string("Q");
}

auto Field::from_int(std::int64_t v) const -> Scalar {
  if (!is_prime()) return {v, 1};
  std::int64_t r = v % p_;
  return {r < 0 ? r + p_ : r, 1};
}

auto Field::from_ratio(std::int64_t num, std::int64_t den) const -> Scalar {
  if (!is_prime()) return normalize(num, den);
  Scalar d = from_int(den);
  if (is_zero(d)) throw InputError("denominator vanishes in " + name());
  return mul(from_int(num), inv(d));
}

auto Field::add(Scalar a, Scalar b) const -> Scalar {
  if (is_prime()) {
    std::int64_t r = a.num + b.num;
    return {r >= p_ ? r - p_ : r, 1};
  }
  if (a.den == 1 && b.den == 1) return {checked::add(a.num, b.num), 1};
  return normalize(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
}

auto Field::sub(Scalar a, Scalar b) const -> Scalar { return add(a, neg(b)); }

auto Field::mul(Scalar a, Scalar b) const -> Scalar {
  if (is_prime()) return {(a.num * b.num) % p_, 1};
  if (a.den == 1 && b.den == 1) return {checked::mul(a.num, b.num), 1};
  return normalize(i128(a.num) * b.num, i128(a.den) * b.den);
}

auto Field::neg(Scalar a) const -> Scalar {
  if (is_prime()) return {a.num == 0 ? 0 : p_ - a.num, 1};
  return {checked::sub(0, a.num), a.den};
}

auto Field::inv(Scalar a) const -> Scalar {
  if (is_zero(a)) throw std::domain_error("inverse of zero");
  if (is_prime()) {
    auto [g, x, y] = egcd(a.num, p_);
    (void)g;
    (void)y;
    return from_int(x);
  }
  return normalize(a.den, a.num);
}

auto Field::parse(std::string_view text) const -> Scalar {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return from_int(parse_int(text));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return from_ratio(parse_int(text.substr(0, slash)), den);
}

auto Field::format(Scalar a) const -> std::string {
  if (a.den == 1) return std::to_string(a.num);
  return std::to_string(a.num) + "/" + std::to_string(a.den);
}

// ---------------------------------------------------------------- Mat

Mat::Mat(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols) {}

auto Mat::identity(Field field, std::size_t n) -> Mat {
  Mat m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

auto Mat::from_ints(Field field, std::size_t cols, const std::vector<IntVec> &rows) -> Mat {
  Mat m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.from_int(rows[i][j]);
  }
  return m;
}

void Mat::append_row(std::span<const Scalar> values) {
  if (values.size() != cols_) throw InputError("row length does not match matrix width");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

auto Mat::transpose() const -> Mat {
  Mat t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

auto Mat::is_invertible() const -> bool { return rows_ == cols_ && rref(*this).rank == rows_; }

auto operator*(const Mat &a, const Mat &b) -> Mat {
  if (a.field_ != b.field_) throw InputError("matrix product over different fields");
  if (a.cols_ != b.rows_) throw InputError("matrix product shape mismatch");
  const Field &f = a.field_;
  Mat c(f, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      Scalar aik = a(i, k);
      if (Field::is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
    }
  return c;
}

auto rref(const Mat &m) -> Rref {
  const Field &f = m.field();
  Mat a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && Field::is_zero(a(sel, col))) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(row, j));
    Scalar scale = f.inv(a(row, col));
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) = f.mul(a(row, j), scale);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || Field::is_zero(a(i, col))) continue;
      Scalar factor = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        a(i, j) = f.sub(a(i, j), f.mul(factor, a(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  Mat form(f, 0, a.cols());
  for (std::size_t i = 0; i < row; ++i) form.append_row(a.row(i));
  return {std::move(form), row, std::move(pivots)};
}

// ---------------------------------------------------------------- Subspace

auto Subspace::span(const Mat &generators) -> Subspace { return Subspace(rref(generators)); }

auto Subspace::zero(Field field, std::size_t ambient) -> Subspace {
  return Subspace(Rref{Mat(field, 0, ambient), 0, {}});
}

auto Subspace::full(Field field, std::size_t ambient) -> Subspace {
  std::vector<std::size_t> piv(ambient);
  std::iota(piv.begin(), piv.end(), std::size_t{0});
  return Subspace(Rref{Mat::identity(field, ambient), ambient, std::move(piv)});
}

auto Subspace::contains(std::span<const Scalar> v) const -> bool {
  if (v.size() != ambient_dim()) throw InputError("vector length does not match ambient dimension");
  const Field &f = field();
  std::vector<Scalar> w(v.begin(), v.end());
  for (std::size_t t = 0; t < pivots_.size(); ++t) {
    Scalar c = w[pivots_[t]];
    if (Field::is_zero(c)) continue;
    auto b = basis_.row(t);
    for (std::size_t j = pivots_[t]; j < w.size(); ++j) w[j] = f.sub(w[j], f.mul(c, b[j]));
  }
  return std::all_of(w.begin(), w.end(), [](Scalar s) { return Field::is_zero(s); });
}

auto Subspace::contains(const Subspace &other) const -> bool {
  check_compatible(*this, other);
  if (other.dim() > dim()) return false;
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

auto Subspace::image(const Mat &phi) const -> Subspace {
  if (phi.cols() != ambient_dim()) throw InputError("map source dimension mismatch");
  if (phi.field() != field()) throw InputError("map defined over a different field");
  return span(basis_ * phi.transpose());
}

auto operator<(const Subspace &a, const Subspace &b) -> bool {
  if (a.ambient_dim() != b.ambient_dim()) return a.ambient_dim() < b.ambient_dim();
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    auto ra = a.basis_.row(i);
    auto rb = b.basis_.row(i);
    for (std::size_t j = 0; j < ra.size(); ++j)
      if (ra[j] != rb[j]) return ra[j] < rb[j];
  }
  return false;
}

auto intersect(const Subspace &a, const Subspace &b) -> Subspace {
  check_compatible(a, b);
  const std::size_t n = a.ambient_dim();
  if (a.dim() == n) return b;
  if (b.dim() == n) return a;
  if (a.dim() == 0) return a;
  if (b.dim() == 0) return b;
  // Zassenhaus: reduce [a | a ; b | 0]; rows with vanishing left half span a ∩ b.
  Mat z(a.field(), a.dim() + b.dim(), 2 * n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) = z(i, n + j) = a.basis()(i, j);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) z(a.dim() + i, j) = b.basis()(i, j);
  Rref r = rref(z);
  Mat gens(a.field(), 0, n);
  for (std::size_t i = 0; i < r.rank; ++i)
    if (r.pivots[i] >= n) gens.append_row(r.form.row(i).subspan(n));
  return Subspace::span(gens);
}

auto sum(const Subspace &a, const Subspace &b) -> Subspace {
  check_compatible(a, b);
  if (a.dim() == 0 || b.dim() == a.ambient_dim()) return b;
  if (b.dim() == 0 || a.dim() == a.ambient_dim()) return a;
  Mat gens = a.basis();
  for (std::size_t i = 0; i < b.dim(); ++i) gens.append_row(b.basis().row(i));
  return Subspace::span(gens);
}

auto complement_within(const Subspace &w, const Subspace &u) -> Subspace {
  check_compatible(w, u);
  if (!u.contains(w)) throw MathError("complement_within: first subspace is not contained in the second");
  Mat chosen(u.field(), 0, u.ambient_dim());
  Subspace running = w;
  for (std::size_t i = 0; i < u.dim() && running.dim() < u.dim(); ++i) {
    auto v = u.basis().row(i);
    if (running.contains(v)) continue;
    chosen.append_row(v);
    Mat single(u.field(), 0, u.ambient_dim());
    single.append_row(v);
    running = sum(running, Subspace::span(single));
  }
  return Subspace::span(chosen);
}

// ---------------------------------------------------------------- IntMat

auto IntMat::from_rows(std::size_t cols, const std::vector<IntVec> &rows) -> IntMat {
  IntMat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("ragged integer matrix rows");
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
  }
  return m;
}

auto IntMat::identity(std::size_t n) -> IntMat {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

auto IntMat::row(std::size_t i) const -> IntVec {
  auto first = data_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
  return {first, first + static_cast<std::ptrdiff_t>(cols_)};
}

auto IntMat::row_vectors() const -> std::vector<IntVec> {
  std::vector<IntVec> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

auto IntMat::transpose() const -> IntMat {
  IntMat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

namespace {

void swap_rows(IntMat &m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

// row_dst -= q * row_src
void axpy_row(IntMat &m, std::size_t dst, std::size_t src, std::int64_t q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j)
    m(dst, j) = checked::sub(m(dst, j), checked::mul(q, m(src, j)));
}

void negate_row(IntMat &m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = checked::sub(0, m(r, j));
}

// (row_a, row_b) <- (x row_a + y row_b, u row_a + v row_b)
void combine_rows(IntMat &m, std::size_t a, std::size_t b, std::int64_t x, std::int64_t y,
                  std::int64_t u, std::int64_t v) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::int64_t ra = m(a, j), rb = m(b, j);
    m(a, j) = checked::add(checked::mul(x, ra), checked::mul(y, rb));
    m(b, j) = checked::add(checked::mul(u, ra), checked::mul(v, rb));
  }
}

} // namespace

auto hermite_decompose(const IntMat &a) -> HermiteDecomposition {
  IntMat h = a;
  IntMat u = IntMat::identity(a.rows());
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
    for (std::size_t i = row + 1; i < h.rows(); ++i) {
      if (h(i, col) == 0) continue;
      if (h(row, col) == 0) {
        swap_rows(h, row, i);
        swap_rows(u, row, i);
        continue;
      }
      std::int64_t p = h(row, col), q = h(i, col);
      auto [g, x, y] = egcd(p, q);
      combine_rows(h, row, i, x, y, -q / g, p / g);
      combine_rows(u, row, i, x, y, -q / g, p / g);
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      negate_row(h, row);
      negate_row(u, row);
    }
    for (std::size_t k = 0; k < row; ++k) {
      std::int64_t q = checked::floor_div(h(k, col), h(row, col));
      axpy_row(h, k, row, q);
      axpy_row(u, k, row, q);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(h), std::move(u), row, std::move(pivots)};
}

auto hermite_normal_form(const IntMat &a) -> IntMat {
  auto dec = hermite_decompose(a);
  IntMat out(dec.rank, a.cols());
  for (std::size_t i = 0; i < dec.rank; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = dec.hnf(i, j);
  return out;
}

auto integer_kernel(const IntMat &a) -> IntMat {
  const std::size_t n = a.cols();
  auto dec = hermite_decompose(a.transpose());
  std::vector<IntVec> rows;
  for (std::size_t t = dec.rank; t < n; ++t) rows.push_back(dec.transform.row(t));
  return hermite_normal_form(IntMat::from_rows(n, rows));
}

auto solve_integer(const IntMat &a, const IntVec &b) -> std::optional<IntVec> {
  if (b.size() != a.rows()) throw InputError("right-hand side length mismatch");
  const std::size_t n = a.cols();
  // u = U^T y where U a^T = H; then a u = b  <=>  y^T H = b^T.
  auto dec = hermite_decompose(a.transpose());
  IntVec y(dec.rank, 0);
  for (std::size_t t = 0; t < dec.rank; ++t) {
    std::size_t c = dec.pivots[t];
    std::int64_t rest = b[c];
    for (std::size_t s = 0; s < t; ++s) rest = checked::sub(rest, checked::mul(y[s], dec.hnf(s, c)));
    if (rest % dec.hnf(t, c) != 0) return std::nullopt;
    y[t] = rest / dec.hnf(t, c);
  }
  for (std::size_t c = 0; c < a.rows(); ++c) {
    std::int64_t acc = 0;
    for (std::size_t t = 0; t < dec.rank; ++t) acc = checked::add(acc, checked::mul(y[t], dec.hnf(t, c)));
    if (acc != b[c]) return std::nullopt;
  }
  IntVec u(n, 0);
  for (std::size_t t = 0; t < dec.rank; ++t)
    for (std::size_t j = 0; j < n; ++j)
      u[j] = checked::add(u[j], checked::mul(y[t], dec.transform(t, j)));
  return u;
}

auto primitive(const IntVec &v) -> IntVec {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  if (g == 0) throw InputError("primitive: zero vector");
  IntVec out(v);
  for (auto &x : out) x /= g;
  return out;
}

auto dot(const IntVec &a, const IntVec &b) -> std::int64_t {
  if (a.size() != b.size()) throw InputError("dot: length mismatch");
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = checked::add(acc, checked::mul(a[i], b[i]));
  return acc;
}

} // namespace torvec
