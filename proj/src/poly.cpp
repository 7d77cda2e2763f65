#include "torvec/poly.hpp"

#include "torvec/checked.hpp"
#include "torvec/report.hpp"

#include <numeric>
#include <sstream>

namespace torvec {

namespace {

auto total(const Exponent &e) -> std::uint64_t { return std::accumulate(e.begin(), e.end(), std::uint64_t{0}); }

void require_same_vars(const Poly &a, const Poly &b) {
  if (a.nvars() != b.nvars()) throw InputError("polynomials in different numbers of variables");
}

} // namespace

auto GrlexGreater::operator()(const Exponent &a, const Exponent &b) const -> bool {
  auto da = total(a), db = total(b);
  if (da != db) return da > db;
  return a > b;
}

auto Poly::constant(std::size_t nvars, std::int64_t c) -> Poly {
  Poly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

auto Poly::linear(const IntVec &u) -> Poly {
  Poly p(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    Exponent e(u.size(), 0);
    e[j] = 1;
    p.add_term(e, u[j]);
  }
  return p;
}

auto Poly::degree() const -> int {
  if (terms_.empty()) return -1;
  return static_cast<int>(total(terms_.begin()->first));
}

void Poly::add_term(const Exponent &e, std::int64_t c) {
  if (e.size() != nvars_) throw InputError("exponent vector has wrong length");
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (fresh) return;
  it->second = checked::add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

auto operator+(const Poly &a, const Poly &b) -> Poly {
  require_same_vars(a, b);
  Poly out = a;
  for (const auto &[e, c] : b.terms_) out.add_term(e, c);
  return out;
}

auto operator-(const Poly &a, const Poly &b) -> Poly {
  require_same_vars(a, b);
  Poly out = a;
  for (const auto &[e, c] : b.terms_) out.add_term(e, checked::sub(0, c));
  return out;
}

auto operator*(const Poly &a, const Poly &b) -> Poly {
  require_same_vars(a, b);
  Poly out(a.nvars_);
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_) {
      Exponent e(ea);
      for (std::size_t j = 0; j < e.size(); ++j) e[j] += eb[j];
      out.add_term(e, checked::mul(ca, cb));
    }
  return out;
}

auto Poly::substitute(const IntMat &basis) const -> Poly {
  if (basis.cols() != nvars_) throw InputError("substitution basis has wrong width");
  const std::size_t m = basis.rows();
  std::vector<Poly> images;
  for (std::size_t j = 0; j < nvars_; ++j) {
    IntVec coeffs(m);
    for (std::size_t l = 0; l < m; ++l) coeffs[l] = basis(l, j);
    images.push_back(m == 0 ? Poly(0) : Poly::linear(coeffs));
  }
  Poly out(m);
  for (const auto &[e, c] : terms_) {
    Poly term = Poly::constant(m, c);
    for (std::size_t j = 0; j < nvars_; ++j)
      for (std::uint32_t k = 0; k < e[j] && !term.is_zero(); ++k) term = term * images[j];
    out = out + term;
  }
  return out;
}

auto Poly::to_string() const -> std::string {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[e, c] : terms_) {
    bool unit = total(e) > 0 && (c == 1 || c == -1);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (!unit) os << (c < 0 ? -c : c);
    bool need_star = !unit;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (need_star) os << '*';
      os << 'x' << (j + 1);
      if (e[j] > 1) os << '^' << e[j];
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

} // namespace torvec
