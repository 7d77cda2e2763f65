#pragma once
// The framed moduli scheme of toric vector bundles with fixed multiset data,
// realized inside a product of partial flag varieties by rank conditions.

#include "torvec/exactalg.hpp"
#include "torvec/fan.hpp"
#include "torvec/klyachko.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace torvec {

// One (dim j, Λ(j)) pair per member of the flag type; dims strictly
// decreasing starting at r, Λ strictly increasing.
struct RayShape {
  std::vector<std::pair<std::size_t, std::int64_t>> levels;
  [[nodiscard]] auto lambda(std::size_t dim) const -> std::int64_t;
  [[nodiscard]] auto has_dim(std::size_t dim) const -> bool;
  friend auto operator==(const RayShape &, const RayShape &) -> bool = default;
};

struct FlagShape {
  std::size_t rank = 0;
  std::vector<RayShape> rays;
  friend auto operator==(const FlagShape &, const FlagShape &) -> bool = default;
};

// Per ray, the proper nonzero members of the flag in decreasing dimension;
// the dim-r member is implicit.
struct FlagCollection {
  Field field = Field::rationals();
  std::size_t rank = 0;
  std::vector<std::vector<Subspace>> flags;
  friend auto operator==(const FlagCollection &, const FlagCollection &) -> bool = default;
};

struct RankCondition {
  std::size_t source_cone = 0; // first maximal cone that produced it
  std::vector<std::pair<std::size_t, std::size_t>> terms; // (ray, dim), rays ascending
  std::size_t required_dim = 0;
  bool trivial = false; // single-ray: holds for every flag of the right shape
  friend auto operator==(const RankCondition &, const RankCondition &) -> bool = default;
};

struct Membership {
  bool member = true;
  std::vector<RankCondition> violations;
};

struct PointSet {
  MultisetPsi psi;
  Field field = Field::rationals();
  std::vector<FlagCollection> points;
  [[nodiscard]] auto count() const -> std::size_t { return points.size(); }
};

struct OrbitSummary {
  std::size_t orbit_count = 0;
  bool free = true;
  std::vector<std::size_t> orbit_sizes; // in order of first member
  std::size_t group_order = 0;
};

auto flag_shape(const MultisetPsi &psi) -> FlagShape;
auto generate_conditions(const MultisetPsi &psi) -> std::vector<RankCondition>;

// Throws InputError when the flags do not have the expected shape.
void check_flag_shape(const FlagCollection &flags, const FlagShape &shape);
// The subspace of dimension `dim` in the flag at `ray` (all of k^r for dim r).
auto flag_member(const FlagCollection &flags, std::size_t ray, std::size_t dim) -> Subspace;

// Holds the conditions for one psi so that many flag collections can be
// tested against them.
class MembershipChecker {
public:
  explicit MembershipChecker(const MultisetPsi &psi);
  [[nodiscard]] auto shape() const -> const FlagShape & { return shape_; }
  [[nodiscard]] auto conditions() const -> const std::vector<RankCondition> & { return conditions_; }
  [[nodiscard]] auto check(const FlagCollection &flags, bool collect = true) const -> Membership;
  [[nodiscard]] auto holds(const FlagCollection &flags) const -> bool { return check(flags, false).member; }

private:
  FlagShape shape_;
  std::vector<RankCondition> conditions_;
};

auto check_membership(const FlagCollection &flags, const MultisetPsi &psi) -> Membership;

auto flags_to_klyachko(const FlagCollection &flags, const FlagShape &shape, const Fan &fan, const Field &field)
    -> KlyachkoData;
// Reads the flag of each ray off E^rho(Λ(j)); throws MathError if the
// filtrations do not have the given shape.
auto flags_of_klyachko(const KlyachkoData &d, const FlagShape &shape) -> FlagCollection;

// Every subspace of F_p^n of dimension k, ordered by pivot pattern then by
// free entries.
auto all_subspaces(const Field &field, std::size_t n, std::size_t k) -> std::vector<Subspace>;
// Every flag in F_p^r with proper member dimensions `dims` (decreasing).
auto all_flags(const Field &field, std::size_t r, const std::vector<std::size_t> &dims)
    -> std::vector<std::vector<Subspace>>;

// Budget on membership checks / group elements; TORVEC_ENUM_BUDGET overrides
// the default of 1e8.
auto enumeration_budget() -> double;

auto enumerate_points(const MultisetPsi &psi, std::int64_t p) -> PointSet;
// Representatives of PGL_r(F_p): invertible matrices whose first nonzero
// entry (row-major) is 1.
auto projective_linear_group(const Field &field, std::size_t r) -> std::vector<Mat>;
auto act(const Mat &g, const FlagCollection &flags) -> FlagCollection;
auto orbit_analysis(const PointSet &pts) -> OrbitSummary;

} // namespace torvec
