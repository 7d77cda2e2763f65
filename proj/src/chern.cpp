#include "torvec/chern.hpp"

namespace torvec {

auto elem_sym_piece(const ClassMultiset &ms, std::size_t i, std::size_t lattice_rank) -> Poly {
  if (i > ms.size())
    throw InputError("elementary symmetric index " + std::to_string(i) + " exceeds multiset size " +
                     std::to_string(ms.size()));
  // e[k] after processing a prefix of the multiset; e_k <- e_k + L * e_{k-1}.
  std::vector<Poly> e(i + 1, Poly(lattice_rank));
  e[0] = Poly::constant(lattice_rank, 1);
  for (const auto &x : ms) {
    Poly form = Poly::linear(x.lift);
    for (std::size_t k = i; k >= 1; --k) e[k] = e[k] + form * e[k - 1];
  }
  return e[i];
}

auto chern_of_psi(const MultisetPsi &psi) -> std::vector<PiecewisePoly> {
  if (auto rep = validate_psi(psi); !rep) throw MathError("invalid multiset data: " + rep.message);
  std::vector<PiecewisePoly> classes;
  for (std::size_t i = 0; i <= psi.rank; ++i) {
    PiecewisePoly c{psi.fan, {}};
    for (const auto &ms : psi.cones) c.pieces.push_back(elem_sym_piece(ms, i, psi.fan.lattice_rank));
    classes.push_back(std::move(c));
  }
  return classes;
}

auto vanishes_on_span(const Fan &fan, const Poly &p, const ConeRef &cone) -> bool {
  if (p.nvars() != fan.lattice_rank) throw InputError("polynomial has wrong number of variables");
  if (p.is_zero()) return true;
  return p.substitute(span_lattice(fan, cone)).is_zero();
}

auto pp_equal(const PiecewisePoly &f, const PiecewisePoly &g) -> bool {
  if (!(f.fan == g.fan)) throw InputError("piecewise polynomials live on different fans");
  if (f.pieces.size() != g.pieces.size() || f.pieces.size() != f.fan.max_cones.size())
    throw InputError("piecewise polynomial needs one piece per maximal cone");
  for (std::size_t k = 0; k < f.pieces.size(); ++k)
    if (!vanishes_on_span(f.fan, f.pieces[k] - g.pieces[k], max_cone(f.fan, k))) return false;
  return true;
}

auto validate_continuity(const PiecewisePoly &f) -> Report {
  if (f.pieces.size() != f.fan.max_cones.size())
    return Report::fail("expected one piece per maximal cone");
  for (std::size_t a = 0; a < f.pieces.size(); ++a)
    for (std::size_t b = a + 1; b < f.pieces.size(); ++b) {
      ConeRef tau = common_face(max_cone(f.fan, a), max_cone(f.fan, b));
      if (tau.rays.empty()) continue;
      if (!vanishes_on_span(f.fan, f.pieces[a] - f.pieces[b], tau)) {
        std::string face;
        for (auto r : tau.rays) face += (face.empty() ? "" : ",") + std::to_string(r);
        return Report::fail("pieces on cones " + std::to_string(a) + " and " + std::to_string(b) +
                            " disagree on their common face {" + face + "}");
      }
    }
  return Report::pass();
}

} // namespace torvec
