#include "torvec/fan.hpp"

#include "torvec/checked.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace torvec {

namespace {

auto vec_str(const IntVec &v) -> std::string {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

auto cone_str(const std::vector<std::size_t> &rays) -> std::string {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < rays.size(); ++i) os << (i ? "," : "") << rays[i];
  os << '}';
  return os.str();
}

// Is v a nonnegative rational combination of the (independent) rows of gens?
auto in_simplicial_cone(const IntMat &gens, const IntVec &v) -> bool {
  Field q = Field::rationals();
  Mat aug(q, gens.cols(), gens.rows() + 1);
  for (std::size_t i = 0; i < gens.rows(); ++i)
    for (std::size_t j = 0; j < gens.cols(); ++j) aug(j, i) = q.from_int(gens(i, j));
  for (std::size_t j = 0; j < gens.cols(); ++j) aug(j, gens.rows()) = q.from_int(v[j]);
  Rref r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == gens.rows()) return false; // inconsistent
  for (std::size_t t = 0; t < r.rank; ++t)
    if (r.form(t, gens.rows()).num < 0) return false;
  return true;
}

} // namespace

ConeRef::ConeRef(std::vector<std::size_t> ray_indices) : rays(std::move(ray_indices)) {
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
}

auto ConeRef::has_ray(std::size_t ray) const -> bool {
  return std::binary_search(rays.begin(), rays.end(), ray);
}

auto ConeRef::is_face_of(const ConeRef &other) const -> bool {
  return std::includes(other.rays.begin(), other.rays.end(), rays.begin(), rays.end());
}

auto max_cone(const Fan &fan, std::size_t index) -> ConeRef {
  if (index >= fan.max_cones.size()) throw InputError("cone index out of range: " + std::to_string(index));
  return ConeRef(fan.max_cones[index]);
}

auto common_face(const ConeRef &a, const ConeRef &b) -> ConeRef {
  std::vector<std::size_t> out;
  std::set_intersection(a.rays.begin(), a.rays.end(), b.rays.begin(), b.rays.end(),
                        std::back_inserter(out));
  return ConeRef(std::move(out));
}

auto cone_containing_ray(const Fan &fan, std::size_t ray) -> std::size_t {
  for (std::size_t k = 0; k < fan.max_cones.size(); ++k)
    if (std::find(fan.max_cones[k].begin(), fan.max_cones[k].end(), ray) != fan.max_cones[k].end())
      return k;
  throw InputError("ray " + std::to_string(ray) + " lies in no maximal cone");
}

auto ray_matrix(const Fan &fan, const ConeRef &cone) -> IntMat {
  std::vector<IntVec> rows;
  for (auto r : cone.rays) {
    if (r >= fan.rays.size()) throw InputError("ray index out of range: " + std::to_string(r));
    rows.push_back(fan.rays[r]);
  }
  return IntMat::from_rows(fan.lattice_rank, rows);
}

auto validate_fan(const Fan &fan) -> Report {
  const std::size_t n = fan.lattice_rank;
  if (n == 0) return Report::fail("lattice rank must be positive");
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    const auto &v = fan.rays[i];
    const std::string tag = "ray " + std::to_string(i) + " " + vec_str(v);
    if (v.size() != n) return Report::fail(tag + ": length differs from lattice rank " + std::to_string(n));
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x);
    if (g == 0) return Report::fail(tag + ": zero vector");
    if (g != 1) return Report::fail(tag + ": not primitive (gcd " + std::to_string(g) + ")");
    for (std::size_t j = 0; j < i; ++j)
      if (fan.rays[j] == v) return Report::fail(tag + ": duplicates ray " + std::to_string(j));
  }
  if (fan.max_cones.empty()) return Report::fail("fan has no maximal cones");
  std::vector<bool> used(fan.rays.size(), false);
  for (std::size_t k = 0; k < fan.max_cones.size(); ++k) {
    const auto &c = fan.max_cones[k];
    const std::string tag = "cone " + std::to_string(k) + " " + cone_str(c);
    if (c.empty()) return Report::fail(tag + ": empty maximal cone");
    std::set<std::size_t> seen;
    for (auto r : c) {
      if (r >= fan.rays.size()) return Report::fail(tag + ": ray index " + std::to_string(r) + " out of range");
      if (!seen.insert(r).second) return Report::fail(tag + ": repeated ray " + std::to_string(r));
      used[r] = true;
    }
    if (hermite_decompose(ray_matrix(fan, ConeRef(c))).rank != c.size())
      return Report::fail(tag + ": not simplicial (ray generators are linearly dependent)");
  }
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) return Report::fail("ray " + std::to_string(i) + " " + vec_str(fan.rays[i]) + ": lies in no maximal cone");
  for (std::size_t a = 0; a < fan.max_cones.size(); ++a) {
    ConeRef ca(fan.max_cones[a]);
    IntMat gens = ray_matrix(fan, ca);
    for (std::size_t b = 0; b < fan.max_cones.size(); ++b) {
      if (a == b) continue;
      ConeRef cb(fan.max_cones[b]);
      if (cb.is_face_of(ca))
        return Report::fail("cone " + std::to_string(b) + " " + cone_str(fan.max_cones[b]) +
                            " is contained in cone " + std::to_string(a) + " " + cone_str(fan.max_cones[a]));
      for (auto r : cb.rays) {
        if (ca.has_ray(r)) continue;
        if (in_simplicial_cone(gens, fan.rays[r]))
          return Report::fail("ray " + std::to_string(r) + " " + vec_str(fan.rays[r]) + " of cone " +
                              std::to_string(b) + " lies inside cone " + std::to_string(a) + " " +
                              cone_str(fan.max_cones[a]) + " without being one of its rays");
      }
    }
  }
  return Report::pass("necessary conditions hold (full convex separation of cones is not tested)");
}

auto perp_lattice(const Fan &fan, const ConeRef &cone) -> IntMat {
  return integer_kernel(ray_matrix(fan, cone));
}

auto span_lattice(const Fan &fan, const ConeRef &cone) -> IntMat {
  IntMat perp = perp_lattice(fan, cone);
  if (perp.rows() == 0) return IntMat::identity(fan.lattice_rank);
  return integer_kernel(perp);
}

auto class_reduce(const Fan &fan, const IntVec &u, const ConeRef &cone) -> LinearClass {
  if (u.size() != fan.lattice_rank)
    throw InputError("linear function " + vec_str(u) + " has wrong length for lattice rank " +
                     std::to_string(fan.lattice_rank));
  IntMat basis = perp_lattice(fan, cone);
  IntVec w = u;
  for (std::size_t t = 0; t < basis.rows(); ++t) {
    std::size_t c = 0;
    while (basis(t, c) == 0) ++c;
    std::int64_t q = checked::floor_div(w[c], basis(t, c));
    if (q == 0) continue;
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = checked::sub(w[j], checked::mul(q, basis(t, j)));
  }
  return {cone, u, std::move(w)};
}

auto class_restrict(const Fan &fan, const LinearClass &x, const ConeRef &face) -> LinearClass {
  if (!face.is_face_of(x.cone))
    throw InputError("cone " + cone_str(face.rays) + " is not a face of " + cone_str(x.cone.rays));
  return class_reduce(fan, x.lift, face);
}

auto class_eval(const Fan &fan, const LinearClass &x, std::size_t ray) -> std::int64_t {
  if (!x.cone.has_ray(ray))
    throw InputError("ray " + std::to_string(ray) + " is not a ray of cone " + cone_str(x.cone.rays));
  return dot(x.canonical, fan.rays[ray]);
}

} // namespace torvec
