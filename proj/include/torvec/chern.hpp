#pragma once
// Equivariant Chern classes of multiset data as piecewise polynomials.

#include "torvec/fan.hpp"
#include "torvec/klyachko.hpp"
#include "torvec/poly.hpp"
#include "torvec/report.hpp"

#include <vector>

namespace torvec {

// One polynomial per maximal cone; each piece is defined modulo polynomials
// vanishing on the span of its cone.
struct PiecewisePoly {
  Fan fan;
  std::vector<Poly> pieces;
};

// i-th elementary symmetric function of the lifts, as linear forms on N.
auto elem_sym_piece(const ClassMultiset &ms, std::size_t i, std::size_t lattice_rank) -> Poly;
// c_0, ..., c_r.
auto chern_of_psi(const MultisetPsi &psi) -> std::vector<PiecewisePoly>;

auto vanishes_on_span(const Fan &fan, const Poly &p, const ConeRef &cone) -> bool;
auto pp_equal(const PiecewisePoly &f, const PiecewisePoly &g) -> bool;
auto validate_continuity(const PiecewisePoly &f) -> Report;

} // namespace torvec
