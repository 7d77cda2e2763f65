#pragma once
// Toric vector bundles as Klyachko filtration data.

#include "torvec/exactalg.hpp"
#include "torvec/fan.hpp"
#include "torvec/report.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace torvec {

struct FiltrationStep {
  std::int64_t jump; // largest i with E(i) == space
  Subspace space;
  friend auto operator==(const FiltrationStep &, const FiltrationStep &) -> bool = default;
};

// A decreasing Z-filtration of k^r recorded by its jumps. Steps are listed
// with strictly decreasing dimension (the first is all of k^r) and strictly
// increasing jumps. E(i) is the space of the first step whose jump is >= i,
// and 0 when i exceeds every jump.
struct Filtration {
  std::vector<FiltrationStep> steps;
  friend auto operator==(const Filtration &, const Filtration &) -> bool = default;
};

struct KlyachkoData {
  Field field = Field::rationals();
  std::size_t rank = 0;
  Fan fan;
  std::vector<Filtration> filtrations; // one per ray, indexed by ray
  friend auto operator==(const KlyachkoData &, const KlyachkoData &) -> bool = default;
};

// Multiset of classes on one cone, sorted by canonical representative.
using ClassMultiset = std::vector<LinearClass>;

// One multiset u(sigma) per maximal cone, in the fan's cone order.
struct MultisetPsi {
  Fan fan;
  std::size_t rank = 0;
  std::vector<ClassMultiset> cones;
  friend auto operator==(const MultisetPsi &, const MultisetPsi &) -> bool = default;
};

struct SplittingPiece {
  LinearClass cls;
  std::size_t multiplicity;
  Subspace space;
};

// E = ⊕ E_[u] over the distinct classes of u(sigma), listed in the order
// they were constructed.
struct Splitting {
  ConeRef cone;
  std::vector<SplittingPiece> pieces;
};

struct CompatibilityReport {
  bool ok = true;
  std::size_t cone = 0;          // maximal cone of the first disagreement
  IntVec tuple;                  // i_rho, aligned with the cone's sorted rays
  std::size_t intersection_dim = 0;
  std::size_t count = 0;
  std::string message;
  explicit operator bool() const { return ok; }
};

auto make_multiset(const Fan &fan, const ConeRef &cone, const std::vector<IntVec> &lifts) -> ClassMultiset;
auto make_psi(const Fan &fan, const std::vector<std::vector<IntVec>> &lifts_per_cone) -> MultisetPsi;

auto validate_filtrations(const KlyachkoData &d) -> Report;
auto eval_filtration(const Filtration &f, std::int64_t i) -> Subspace;
// Distinct jump values of a filtration, ascending.
auto jump_values(const Filtration &f) -> IntVec;

// dim of the intersection of E^rho(i_rho) over the rays of `cone`; `iv` is
// aligned with cone.rays.
auto intersection_dimension(const KlyachkoData &d, const ConeRef &cone, const IntVec &iv) -> std::size_t;
// #{[u] in ms : [u](v_rho) >= i_rho for every ray of the cone}.
auto counting_function(const Fan &fan, const ClassMultiset &ms, const ConeRef &cone,
                       const IntVec &iv) -> std::size_t;

// Per ray of the cone: sorted union of the filtration's jumps and the
// multiset's values on that ray.
auto critical_grid(const KlyachkoData &d, const ConeRef &cone, const ClassMultiset &ms)
    -> std::vector<IntVec>;
auto check_cone_compatibility(const KlyachkoData &d, const ConeRef &cone, const ClassMultiset &ms)
    -> CompatibilityReport;
auto check_compatibility(const KlyachkoData &d, const MultisetPsi &psi) -> CompatibilityReport;

auto validate_psi(const MultisetPsi &psi) -> Report;

// Throws MathError("not a toric vector bundle on U_sigma", witness) when the
// filtrations on the cone admit no compatible multiset.
auto infer_multiset(const KlyachkoData &d, std::size_t cone_index) -> ClassMultiset;
auto psi_of(const KlyachkoData &d) -> MultisetPsi;

auto split_cone(const KlyachkoData &d, const ConeRef &cone, const ClassMultiset &ms) -> Splitting;
// Rebuilds E^rho(i) = Σ_{[u](v_rho) >= i} E_[u].
auto filtration_from_splitting(const Fan &fan, const Splitting &s, std::size_t ray, std::int64_t i)
    -> Subspace;

// phi: dst.rank x src.rank. True iff phi(E^rho(i)) ⊆ F^rho(i) for all rho, i.
auto is_morphism(const Mat &phi, const KlyachkoData &src, const KlyachkoData &dst) -> bool;

} // namespace torvec
