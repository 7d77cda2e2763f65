#pragma once
// Simplicial rational fans and integral linear functions on their cones.

#include "torvec/exactalg.hpp"
#include "torvec/report.hpp"

#include <cstddef>
#include <vector>

namespace torvec {

struct Fan {
  std::size_t lattice_rank = 0;
  std::vector<IntVec> rays;                         // primitive generators in Z^n
  std::vector<std::vector<std::size_t>> max_cones; // ray indices, input order kept

  friend auto operator==(const Fan &, const Fan &) -> bool = default;
};

// A cone of a fan named by its ray indices (kept sorted). The empty set is
// the zero cone.
struct ConeRef {
  std::vector<std::size_t> rays;

  ConeRef() = default;
  explicit ConeRef(std::vector<std::size_t> ray_indices);
  [[nodiscard]] auto has_ray(std::size_t ray) const -> bool;
  [[nodiscard]] auto is_face_of(const ConeRef &other) const -> bool;
  friend auto operator==(const ConeRef &, const ConeRef &) -> bool = default;
  friend auto operator<=>(const ConeRef &, const ConeRef &) = default;
};

auto max_cone(const Fan &fan, std::size_t index) -> ConeRef;
auto common_face(const ConeRef &a, const ConeRef &b) -> ConeRef;
// Index of the first maximal cone containing the ray; throws InputError if none.
auto cone_containing_ray(const Fan &fan, std::size_t ray) -> std::size_t;

// Rows are the ray generators of the cone.
auto ray_matrix(const Fan &fan, const ConeRef &cone) -> IntMat;

// Structural checks: ray primitivity and distinctness, index ranges,
// simpliciality, no maximal cone inside another, every ray used, and the
// necessary face condition (a ray of one maximal cone lying in another
// maximal cone must be one of its rays). This is a set of necessary
// conditions; cones are not tested for full convex separation.
auto validate_fan(const Fan &fan) -> Report;

// HNF basis of sigma^perp ∩ M.
auto perp_lattice(const Fan &fan, const ConeRef &cone) -> IntMat;
// HNF basis of span(sigma) ∩ N.
auto span_lattice(const Fan &fan, const ConeRef &cone) -> IntMat;

// A class [u] in M_sigma = M / (sigma^perp ∩ M). `canonical` is the
// representative reduced against the HNF basis of sigma^perp ∩ M; it alone
// decides equality.
struct LinearClass {
  ConeRef cone;
  IntVec lift;
  IntVec canonical;

  friend auto operator==(const LinearClass &a, const LinearClass &b) -> bool {
    return a.cone == b.cone && a.canonical == b.canonical;
  }
  friend auto operator<(const LinearClass &a, const LinearClass &b) -> bool {
    return a.canonical < b.canonical;
  }
};

auto class_reduce(const Fan &fan, const IntVec &u, const ConeRef &cone) -> LinearClass;
// Same lift, re-reduced on a face. Throws InputError if `face` is not a face.
auto class_restrict(const Fan &fan, const LinearClass &x, const ConeRef &face) -> LinearClass;
// <lift, v_ray>. Throws InputError if the ray is not a ray of the class's cone.
auto class_eval(const Fan &fan, const LinearClass &x, std::size_t ray) -> std::int64_t;

} // namespace torvec
