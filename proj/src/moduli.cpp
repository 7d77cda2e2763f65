#include "torvec/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace torvec {

auto RayShape::lambda(std::size_t dim) const -> std::int64_t {
  for (const auto &[j, l] : levels)
    if (j == dim) return l;
  throw InputError("dimension " + std::to_string(dim) + " is not part of the flag type");
}

auto RayShape::has_dim(std::size_t dim) const -> bool {
  return std::any_of(levels.begin(), levels.end(), [&](const auto &lv) { return lv.first == dim; });
}

auto flag_shape(const MultisetPsi &psi) -> FlagShape {
  if (auto rep = validate_psi(psi); !rep) throw MathError("invalid multiset data: " + rep.message);
  FlagShape shape{psi.rank, {}};
  for (std::size_t rho = 0; rho < psi.fan.rays.size(); ++rho) {
    const auto &ms = psi.cones[cone_containing_ray(psi.fan, rho)];
    IntVec w;
    for (const auto &x : ms) w.push_back(class_eval(psi.fan, x, rho));
    std::sort(w.begin(), w.end());
    // dim E(i) = #{w >= i}; on (v_next, v] it is the count at the value v.
    RayShape rs;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k > 0 && w[k] == w[k - 1]) continue;
      rs.levels.emplace_back(w.size() - k, w[k]);
    }
    shape.rays.push_back(std::move(rs));
  }
  return shape;
}

auto generate_conditions(const MultisetPsi &psi) -> std::vector<RankCondition> {
  const FlagShape shape = flag_shape(psi);
  std::map<std::vector<std::pair<std::size_t, std::size_t>>, RankCondition> found;
  for (std::size_t k = 0; k < psi.cones.size(); ++k) {
    const ConeRef cone = max_cone(psi.fan, k);
    const std::size_t s = cone.rays.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << s); ++mask) {
      std::vector<std::size_t> sub;
      for (std::size_t b = 0; b < s; ++b)
        if (mask & (std::size_t{1} << b)) sub.push_back(cone.rays[b]);
      // odometer over level choices per ray of the subset
      std::vector<std::size_t> idx(sub.size(), 0);
      while (true) {
        RankCondition rc;
        rc.source_cone = k;
        rc.trivial = sub.size() == 1;
        for (std::size_t t = 0; t < sub.size(); ++t) rc.terms.emplace_back(sub[t], shape.rays[sub[t]].levels[idx[t]].first);
        std::size_t count = 0;
        for (const auto &x : psi.cones[k]) {
          bool all = true;
          for (std::size_t t = 0; t < sub.size() && all; ++t)
            all = class_eval(psi.fan, x, sub[t]) >= shape.rays[sub[t]].levels[idx[t]].second;
          count += all ? 1 : 0;
        }
        rc.required_dim = count;
        auto [it, fresh] = found.try_emplace(rc.terms, rc);
        if (!fresh && it->second.required_dim != rc.required_dim)
          throw MathError("cones " + std::to_string(it->second.source_cone) + " and " + std::to_string(k) +
                          " demand different dimensions for the same intersection");
        std::size_t t = sub.size();
        while (t > 0 && ++idx[t - 1] == shape.rays[sub[t - 1]].levels.size()) idx[--t] = 0;
        if (t == 0) break;
      }
    }
  }
  std::vector<RankCondition> out;
  for (auto &[key, rc] : found) out.push_back(std::move(rc));
  std::stable_sort(out.begin(), out.end(),
                   [](const RankCondition &a, const RankCondition &b) { return a.terms.size() < b.terms.size(); });
  return out;
}

void check_flag_shape(const FlagCollection &flags, const FlagShape &shape) {
  if (flags.rank != shape.rank)
    throw InputError("flags have rank " + std::to_string(flags.rank) + ", expected " + std::to_string(shape.rank));
  if (flags.flags.size() != shape.rays.size())
    throw InputError("expected a flag for each of " + std::to_string(shape.rays.size()) + " rays, got " +
                     std::to_string(flags.flags.size()));
  for (std::size_t rho = 0; rho < shape.rays.size(); ++rho) {
    const auto &levels = shape.rays[rho].levels;
    const auto &members = flags.flags[rho];
    const std::string tag = "ray " + std::to_string(rho) + ": ";
    if (members.size() + 1 != levels.size())
      throw InputError(tag + "flag has " + std::to_string(members.size()) + " proper members, expected " +
                       std::to_string(levels.size() - 1));
    for (std::size_t k = 0; k < members.size(); ++k) {
      const auto &m = members[k];
      if (m.field() != flags.field || m.ambient_dim() != flags.rank)
        throw InputError(tag + "member lives in the wrong ambient space");
      if (m.dim() != levels[k + 1].first)
        throw InputError(tag + "member " + std::to_string(k) + " has dimension " + std::to_string(m.dim()) +
                         ", expected " + std::to_string(levels[k + 1].first));
      if (k > 0 && !members[k - 1].contains(m)) throw InputError(tag + "members are not nested");
    }
  }
}

auto flag_member(const FlagCollection &flags, std::size_t ray, std::size_t dim) -> Subspace {
  if (dim == flags.rank) return Subspace::full(flags.field, flags.rank);
  for (const auto &m : flags.flags.at(ray))
    if (m.dim() == dim) return m;
  throw InputError("ray " + std::to_string(ray) + " has no flag member of dimension " + std::to_string(dim));
}

MembershipChecker::MembershipChecker(const MultisetPsi &psi)
    : shape_(flag_shape(psi)), conditions_(generate_conditions(psi)) {}

auto MembershipChecker::check(const FlagCollection &flags, bool collect) const -> Membership {
  if (collect) check_flag_shape(flags, shape_);
  Membership out;
  for (const auto &rc : conditions_) {
    if (rc.trivial && !collect) continue;
    Subspace acc = Subspace::full(flags.field, flags.rank);
    for (const auto &[ray, dim] : rc.terms) {
      if (dim == flags.rank) continue;
      acc = intersect(acc, flag_member(flags, ray, dim));
      if (acc.dim() < rc.required_dim) break;
    }
    if (acc.dim() != rc.required_dim) {
      out.member = false;
      if (!collect) return out;
      out.violations.push_back(rc);
    }
  }
  return out;
}

auto check_membership(const FlagCollection &flags, const MultisetPsi &psi) -> Membership {
  return MembershipChecker(psi).check(flags);
}

auto flags_to_klyachko(const FlagCollection &flags, const FlagShape &shape, const Fan &fan, const Field &field)
    -> KlyachkoData {
  if (flags.field != field) throw InputError("flags are over " + flags.field.name() + ", expected " + field.name());
  check_flag_shape(flags, shape);
  if (shape.rays.size() != fan.rays.size()) throw InputError("flag shape and fan have different ray counts");
  KlyachkoData d{field, flags.rank, fan, {}};
  for (std::size_t rho = 0; rho < shape.rays.size(); ++rho) {
    const auto &levels = shape.rays[rho].levels;
    Filtration f;
    f.steps.push_back({levels[0].second, Subspace::full(field, flags.rank)});
    for (std::size_t k = 1; k < levels.size(); ++k) f.steps.push_back({levels[k].second, flags.flags[rho][k - 1]});
    d.filtrations.push_back(std::move(f));
  }
  return d;
}

auto flags_of_klyachko(const KlyachkoData &d, const FlagShape &shape) -> FlagCollection {
  if (shape.rays.size() != d.filtrations.size()) throw InputError("flag shape and data have different ray counts");
  FlagCollection out{d.field, d.rank, {}};
  for (std::size_t rho = 0; rho < shape.rays.size(); ++rho) {
    std::vector<Subspace> members;
    for (std::size_t k = 1; k < shape.rays[rho].levels.size(); ++k)
      members.push_back(eval_filtration(d.filtrations[rho], shape.rays[rho].levels[k].second));
    out.flags.push_back(std::move(members));
  }
  try {
    if (flags_to_klyachko(out, shape, d.fan, d.field).filtrations != d.filtrations)
      throw MathError("filtrations do not have the given flag shape");
  } catch (const InputError &e) {
    throw MathError(std::string("filtrations do not have the given flag shape: ") + e.what());
  }
  return out;
}

auto all_subspaces(const Field &field, std::size_t n, std::size_t k) -> std::vector<Subspace> {
  if (!field.is_prime()) throw InputError("subspace enumeration needs a finite field");
  if (k > n) return {};
  const std::int64_t p = field.modulus();
  std::vector<Subspace> out;
  std::vector<std::size_t> piv(k);
  for (std::size_t t = 0; t < k; ++t) piv[t] = t;
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> free_slots;
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t c = piv[t] + 1; c < n; ++c)
        if (!std::binary_search(piv.begin(), piv.end(), c)) free_slots.emplace_back(t, c);
    std::vector<std::int64_t> vals(free_slots.size(), 0);
    while (true) {
      Mat m(field, k, n);
      for (std::size_t t = 0; t < k; ++t) m(t, piv[t]) = field.one();
      for (std::size_t s = 0; s < free_slots.size(); ++s)
        m(free_slots[s].first, free_slots[s].second) = field.from_int(vals[s]);
      out.push_back(Subspace::span(m));
      std::size_t s = free_slots.size();
      while (s > 0 && ++vals[s - 1] == p) vals[--s] = 0;
      if (s == 0) break;
    }
    // next k-combination of {0..n-1}
    std::size_t t = k;
    while (t > 0 && piv[t - 1] == n - k + (t - 1)) --t;
    if (t == 0) break;
    ++piv[t - 1];
    for (std::size_t u = t; u < k; ++u) piv[u] = piv[u - 1] + 1;
  }
  return out;
}

auto all_flags(const Field &field, std::size_t r, const std::vector<std::size_t> &dims)
    -> std::vector<std::vector<Subspace>> {
  std::vector<std::vector<Subspace>> out{{}};
  for (auto dim : dims) {
    auto candidates = all_subspaces(field, r, dim);
    std::vector<std::vector<Subspace>> next;
    for (const auto &partial : out)
      for (const auto &c : candidates)
        if (partial.empty() || partial.back().contains(c)) {
          next.push_back(partial);
          next.back().push_back(c);
        }
    out = std::move(next);
  }
  return out;
}

auto enumeration_budget() -> double {
  if (const char *env = std::getenv("TORVEC_ENUM_BUDGET")) {
    char *end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return 1e8;
}

auto enumerate_points(const MultisetPsi &psi, std::int64_t p) -> PointSet {
  const Field field = Field::prime(p);
  const MembershipChecker checker(psi);
  const FlagShape &shape = checker.shape();
  std::vector<std::vector<std::vector<Subspace>>> per_ray;
  double space = 1;
  for (const auto &rs : shape.rays) {
    std::vector<std::size_t> dims;
    for (std::size_t k = 1; k < rs.levels.size(); ++k) dims.push_back(rs.levels[k].first);
    per_ray.push_back(all_flags(field, shape.rank, dims));
    space *= static_cast<double>(per_ray.back().size());
  }
  if (space > enumeration_budget())
    throw BudgetExceeded("search space of " + std::to_string(static_cast<long double>(space)) +
                             " flag collections exceeds the enumeration budget",
                         space);
  PointSet out{psi, field, {}};
  std::vector<std::size_t> idx(per_ray.size(), 0);
  FlagCollection fc{field, shape.rank, std::vector<std::vector<Subspace>>(per_ray.size())};
  while (true) {
    for (std::size_t rho = 0; rho < per_ray.size(); ++rho) fc.flags[rho] = per_ray[rho][idx[rho]];
    if (checker.holds(fc)) out.points.push_back(fc);
    std::size_t t = idx.size();
    while (t > 0 && ++idx[t - 1] == per_ray[t - 1].size()) idx[--t] = 0;
    if (t == 0) break;
  }
  return out;
}

auto projective_linear_group(const Field &field, std::size_t r) -> std::vector<Mat> {
  if (!field.is_prime()) throw InputError("group enumeration needs a finite field");
  const std::int64_t p = field.modulus();
  const double candidates = std::pow(static_cast<double>(p), static_cast<double>(r * r));
  if (candidates > enumeration_budget())
    throw BudgetExceeded("enumerating PGL_" + std::to_string(r) + "(F_" + std::to_string(p) + ") needs " +
                             std::to_string(static_cast<long double>(candidates)) + " candidates",
                         candidates);
  std::vector<Mat> out;
  std::vector<std::int64_t> e(r * r, 0);
  while (true) {
    auto first = std::find_if(e.begin(), e.end(), [](std::int64_t v) { return v != 0; });
    if (first != e.end() && *first == 1) {
      Mat g(field, r, r);
      for (std::size_t i = 0; i < r * r; ++i) g(i / r, i % r) = field.from_int(e[i]);
      if (g.is_invertible()) out.push_back(std::move(g));
    }
    std::size_t t = e.size();
    while (t > 0 && ++e[t - 1] == p) e[--t] = 0;
    if (t == 0) break;
  }
  return out;
}

auto act(const Mat &g, const FlagCollection &flags) -> FlagCollection {
  FlagCollection out{flags.field, flags.rank, {}};
  for (const auto &flag : flags.flags) {
    std::vector<Subspace> moved;
    for (const auto &m : flag) moved.push_back(m.image(g));
    out.flags.push_back(std::move(moved));
  }
  return out;
}

namespace {

auto flag_key(const FlagCollection &fc) -> std::vector<std::int64_t> {
  std::vector<std::int64_t> key;
  for (const auto &flag : fc.flags) {
    key.push_back(-1);
    for (const auto &m : flag) {
      key.push_back(-2 - static_cast<std::int64_t>(m.dim()));
      for (std::size_t i = 0; i < m.dim(); ++i)
        for (auto s : m.basis().row(i)) key.push_back(s.num);
    }
  }
  return key;
}

auto pgl_order(std::int64_t p, std::size_t r) -> std::size_t {
  std::size_t q = static_cast<std::size_t>(p);
  std::size_t pr = 1;
  for (std::size_t i = 0; i < r; ++i) pr *= q;
  std::size_t order = 1, pi = 1;
  for (std::size_t i = 0; i < r; ++i) {
    order *= pr - pi;
    pi *= q;
  }
  return order / (q - 1);
}

} // namespace

auto orbit_analysis(const PointSet &pts) -> OrbitSummary {
  OrbitSummary out;
  if (!pts.field.is_prime()) throw InputError("orbit analysis needs a finite field");
  out.group_order = pgl_order(pts.field.modulus(), pts.psi.rank);
  if (pts.points.empty()) return out;
  const auto group = projective_linear_group(pts.field, pts.psi.rank);
  if (group.size() != out.group_order) throw std::logic_error("PGL enumeration has the wrong size");
  std::map<std::vector<std::int64_t>, std::size_t> index;
  for (std::size_t i = 0; i < pts.points.size(); ++i) index.emplace(flag_key(pts.points[i]), i);
  std::vector<bool> seen(pts.points.size(), false);
  for (std::size_t i = 0; i < pts.points.size(); ++i) {
    if (seen[i]) continue;
    std::set<std::size_t> orbit;
    for (const auto &g : group) {
      auto it = index.find(flag_key(act(g, pts.points[i])));
      if (it == index.end()) throw std::logic_error("point set is not closed under the group action");
      orbit.insert(it->second);
      seen[it->second] = true;
    }
    out.orbit_sizes.push_back(orbit.size());
    if (orbit.size() != out.group_order) out.free = false;
  }
  out.orbit_count = out.orbit_sizes.size();
  return out;
}

} // namespace torvec
