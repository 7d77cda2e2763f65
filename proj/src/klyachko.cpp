#include "torvec/klyachko.hpp"

#include "torvec/checked.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace torvec {

namespace {

auto tuple_str(const IntVec &v) -> std::string {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

// Calls fn on every tuple of the Cartesian product of `axes`, last axis
// fastest. Returns false as soon as fn does.
template <class Fn>
auto for_each_tuple(const std::vector<IntVec> &axes, Fn &&fn) -> bool {
  for (const auto &a : axes)
    if (a.empty()) return true;
  std::vector<std::size_t> idx(axes.size(), 0);
  IntVec t(axes.size());
  while (true) {
    for (std::size_t k = 0; k < axes.size(); ++k) t[k] = axes[k][idx[k]];
    if (!fn(t)) return false;
    std::size_t k = axes.size();
    while (k > 0) {
      --k;
      if (++idx[k] < axes[k].size()) break;
      idx[k] = 0;
      if (k == 0) return true;
    }
    if (axes.empty()) return true;
  }
}

void require_filtrations(const KlyachkoData &d) {
  if (d.filtrations.size() != d.fan.rays.size())
    throw InputError("expected one filtration per ray (" + std::to_string(d.fan.rays.size()) + "), got " +
                     std::to_string(d.filtrations.size()));
}

} // namespace

auto make_multiset(const Fan &fan, const ConeRef &cone, const std::vector<IntVec> &lifts) -> ClassMultiset {
  ClassMultiset ms;
  ms.reserve(lifts.size());
  for (const auto &u : lifts) ms.push_back(class_reduce(fan, u, cone));
  std::stable_sort(ms.begin(), ms.end());
  return ms;
}

auto make_psi(const Fan &fan, const std::vector<std::vector<IntVec>> &lifts_per_cone) -> MultisetPsi {
  if (lifts_per_cone.size() != fan.max_cones.size())
    throw InputError("expected one multiset per maximal cone (" + std::to_string(fan.max_cones.size()) +
                     "), got " + std::to_string(lifts_per_cone.size()));
  MultisetPsi psi{fan, lifts_per_cone.empty() ? 0 : lifts_per_cone.front().size(), {}};
  for (std::size_t k = 0; k < lifts_per_cone.size(); ++k)
    psi.cones.push_back(make_multiset(fan, max_cone(fan, k), lifts_per_cone[k]));
  return psi;
}

auto validate_filtrations(const KlyachkoData &d) -> Report {
  if (auto fr = validate_fan(d.fan); !fr) return Report::fail("fan: " + fr.message);
  if (d.rank == 0) return Report::fail("rank must be positive");
  if (d.filtrations.size() != d.fan.rays.size())
    return Report::fail("expected one filtration per ray (" + std::to_string(d.fan.rays.size()) + "), got " +
                        std::to_string(d.filtrations.size()));
  for (std::size_t rho = 0; rho < d.filtrations.size(); ++rho) {
    const auto &steps = d.filtrations[rho].steps;
    const std::string tag = "ray " + std::to_string(rho) + ": ";
    if (steps.empty()) return Report::fail(tag + "empty filtration");
    for (std::size_t k = 0; k < steps.size(); ++k) {
      const auto &s = steps[k];
      const std::string at = tag + "step " + std::to_string(k) + " (jump " + std::to_string(s.jump) + "): ";
      if (s.space.field() != d.field) return Report::fail(at + "space over the wrong field");
      if (s.space.ambient_dim() != d.rank) return Report::fail(at + "ambient dimension differs from rank");
      if (s.space.dim() == 0) return Report::fail(at + "zero-dimensional step");
      if (k == 0) {
        if (s.space.dim() != d.rank) return Report::fail(at + "first step must be the whole space");
        continue;
      }
      const auto &prev = steps[k - 1];
      if (s.space.dim() >= prev.space.dim()) return Report::fail(at + "dimensions must strictly decrease");
      if (s.jump <= prev.jump) return Report::fail(at + "jumps must strictly increase as dimension drops");
      if (!prev.space.contains(s.space)) return Report::fail(at + "space is not contained in the previous step");
    }
  }
  return Report::pass();
}

auto eval_filtration(const Filtration &f, std::int64_t i) -> Subspace {
  if (f.steps.empty()) throw InputError("empty filtration");
  for (const auto &s : f.steps)
    if (s.jump >= i) return s.space;
  return Subspace::zero(f.steps.front().space.field(), f.steps.front().space.ambient_dim());
}

auto jump_values(const Filtration &f) -> IntVec {
  IntVec out;
  for (const auto &s : f.steps) out.push_back(s.jump);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

auto intersection_dimension(const KlyachkoData &d, const ConeRef &cone, const IntVec &iv) -> std::size_t {
  require_filtrations(d);
  if (iv.size() != cone.rays.size())
    throw InputError("need one integer per ray of the cone: got " + std::to_string(iv.size()) + " for " +
                     std::to_string(cone.rays.size()) + " rays");
  Subspace acc = Subspace::full(d.field, d.rank);
  for (std::size_t k = 0; k < iv.size() && acc.dim() > 0; ++k)
    acc = intersect(acc, eval_filtration(d.filtrations.at(cone.rays[k]), iv[k]));
  return acc.dim();
}

auto counting_function(const Fan &fan, const ClassMultiset &ms, const ConeRef &cone, const IntVec &iv)
    -> std::size_t {
  if (iv.size() != cone.rays.size()) throw InputError("need one integer per ray of the cone");
  std::size_t count = 0;
  for (const auto &x : ms) {
    bool all = true;
    for (std::size_t k = 0; k < iv.size() && all; ++k) all = class_eval(fan, x, cone.rays[k]) >= iv[k];
    count += all ? 1 : 0;
  }
  return count;
}

auto critical_grid(const KlyachkoData &d, const ConeRef &cone, const ClassMultiset &ms)
    -> std::vector<IntVec> {
  require_filtrations(d);
  std::vector<IntVec> axes;
  for (auto rho : cone.rays) {
    IntVec vals = jump_values(d.filtrations.at(rho));
    for (const auto &x : ms) vals.push_back(class_eval(d.fan, x, rho));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    axes.push_back(std::move(vals));
  }
  return axes;
}

auto check_cone_compatibility(const KlyachkoData &d, const ConeRef &cone, const ClassMultiset &ms)
    -> CompatibilityReport {
  CompatibilityReport rep;
  for_each_tuple(critical_grid(d, cone, ms), [&](const IntVec &t) {
    std::size_t dim = intersection_dimension(d, cone, t);
    std::size_t cnt = counting_function(d.fan, ms, cone, t);
    if (dim == cnt) return true;
    rep.ok = false;
    rep.tuple = t;
    rep.intersection_dim = dim;
    rep.count = cnt;
    return false;
  });
  return rep;
}

auto check_compatibility(const KlyachkoData &d, const MultisetPsi &psi) -> CompatibilityReport {
  if (!(psi.fan == d.fan)) throw InputError("filtration data and multisets are on different fans");
  if (psi.rank != d.rank) throw InputError("filtration data and multisets have different ranks");
  for (std::size_t k = 0; k < psi.cones.size(); ++k) {
    auto rep = check_cone_compatibility(d, max_cone(d.fan, k), psi.cones[k]);
    if (!rep) {
      rep.cone = k;
      std::ostringstream os;
      os << "cone " << k << " at tuple " << tuple_str(rep.tuple) << ": dim " << rep.intersection_dim
         << " != count " << rep.count;
      rep.message = os.str();
      return rep;
    }
  }
  return {};
}

auto validate_psi(const MultisetPsi &psi) -> Report {
  if (auto fr = validate_fan(psi.fan); !fr) return Report::fail("fan: " + fr.message);
  if (psi.rank == 0) return Report::fail("rank must be positive");
  if (psi.cones.size() != psi.fan.max_cones.size())
    return Report::fail("expected one multiset per maximal cone (" + std::to_string(psi.fan.max_cones.size()) +
                        "), got " + std::to_string(psi.cones.size()));
  for (std::size_t k = 0; k < psi.cones.size(); ++k) {
    if (psi.cones[k].size() != psi.rank)
      return Report::fail("cone " + std::to_string(k) + ": multiset has " + std::to_string(psi.cones[k].size()) +
                          " elements, expected " + std::to_string(psi.rank));
    for (const auto &x : psi.cones[k])
      if (!(x.cone == max_cone(psi.fan, k)))
        return Report::fail("cone " + std::to_string(k) + ": class attached to the wrong cone");
  }
  for (std::size_t a = 0; a < psi.cones.size(); ++a) {
    for (std::size_t b = a + 1; b < psi.cones.size(); ++b) {
      ConeRef tau = common_face(max_cone(psi.fan, a), max_cone(psi.fan, b));
      if (tau.rays.empty()) continue;
      std::vector<IntVec> ra, rb;
      for (const auto &x : psi.cones[a]) ra.push_back(class_restrict(psi.fan, x, tau).canonical);
      for (const auto &x : psi.cones[b]) rb.push_back(class_restrict(psi.fan, x, tau).canonical);
      std::sort(ra.begin(), ra.end());
      std::sort(rb.begin(), rb.end());
      if (ra != rb) {
        std::ostringstream os;
        os << "cones " << a << " and " << b << " restrict differently to their common face {";
        for (std::size_t i = 0; i < tau.rays.size(); ++i) os << (i ? "," : "") << tau.rays[i];
        os << "}";
        return Report::fail(os.str());
      }
    }
  }
  return Report::pass();
}

auto infer_multiset(const KlyachkoData &d, std::size_t cone_index) -> ClassMultiset {
  require_filtrations(d);
  const ConeRef cone = max_cone(d.fan, cone_index);
  const std::size_t s = cone.rays.size();
  const IntMat rays = ray_matrix(d.fan, cone);
  std::vector<IntVec> axes;
  for (auto rho : cone.rays) axes.push_back(jump_values(d.filtrations.at(rho)));

  std::map<IntVec, std::size_t> memo;
  auto dim_at = [&](const IntVec &t) {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    return memo[t] = intersection_dimension(d, cone, t);
  };

  const std::string why = "not a toric vector bundle on U_sigma for cone " + std::to_string(cone_index);
  std::vector<IntVec> lifts;
  std::int64_t total = 0;
  for_each_tuple(axes, [&](const IntVec &a) {
    // m(a) = Σ_S (-1)^|S| dim(a + 1_S): number of classes taking exactly the values a.
    std::int64_t m = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << s); ++mask) {
      IntVec t = a;
      int sign = 1;
      for (std::size_t k = 0; k < s; ++k)
        if (mask & (std::size_t{1} << k)) {
          t[k] += 1;
          sign = -sign;
        }
      m += sign * static_cast<std::int64_t>(dim_at(t));
    }
    if (m < 0) throw MathError(why + ": negative multiplicity at " + tuple_str(a), a);
    if (m == 0) return true;
    auto u = solve_integer(rays, a);
    if (!u) throw MathError(why + ": values " + tuple_str(a) + " are not those of an integral linear function", a);
    for (std::int64_t c = 0; c < m; ++c) lifts.push_back(*u);
    total += m;
    return true;
  });
  if (total != static_cast<std::int64_t>(d.rank))
    throw MathError(why + ": multiplicities sum to " + std::to_string(total) + ", rank is " + std::to_string(d.rank));
  ClassMultiset ms = make_multiset(d.fan, cone, lifts);
  if (auto rep = check_cone_compatibility(d, cone, ms); !rep)
    throw MathError(why + ": rank mismatch at " + tuple_str(rep.tuple) + " (dim " +
                        std::to_string(rep.intersection_dim) + ", count " + std::to_string(rep.count) + ")",
                    rep.tuple);
  return ms;
}

auto psi_of(const KlyachkoData &d) -> MultisetPsi {
  MultisetPsi psi{d.fan, d.rank, {}};
  for (std::size_t k = 0; k < d.fan.max_cones.size(); ++k) psi.cones.push_back(infer_multiset(d, k));
  if (auto rep = validate_psi(psi); !rep) throw MathError("inferred multisets are not face-compatible: " + rep.message);
  return psi;
}

auto split_cone(const KlyachkoData &d, const ConeRef &cone, const ClassMultiset &ms) -> Splitting {
  require_filtrations(d);
  struct Node {
    LinearClass cls;
    std::size_t mult;
    IntVec vals;
  };
  std::vector<Node> nodes;
  for (const auto &x : ms) {
    if (!nodes.empty() && nodes.back().cls == x) {
      ++nodes.back().mult;
      continue;
    }
    IntVec vals;
    for (auto rho : cone.rays) vals.push_back(class_eval(d.fan, x, rho));
    nodes.push_back({x, 1, std::move(vals)});
  }
  // [a] < [b] iff a - b is nonnegative on the cone and a != b.
  auto below = [&](std::size_t a, std::size_t b) {
    if (a == b) return false;
    for (std::size_t k = 0; k < cone.rays.size(); ++k)
      if (nodes[a].vals[k] < nodes[b].vals[k]) return false;
    return true;
  };

  Splitting out{cone, {}};
  std::vector<bool> done(nodes.size(), false);
  std::vector<Subspace> pieces(nodes.size(), Subspace::zero(d.field, d.rank));
  for (std::size_t step = 0; step < nodes.size(); ++step) {
    std::size_t pick = nodes.size();
    for (std::size_t c = 0; c < nodes.size() && pick == nodes.size(); ++c) {
      if (done[c]) continue;
      bool ready = true;
      for (std::size_t b = 0; b < nodes.size() && ready; ++b)
        if (!done[b] && below(b, c)) ready = false;
      if (ready) pick = c;
    }
    Subspace target = Subspace::full(d.field, d.rank);
    for (std::size_t k = 0; k < cone.rays.size(); ++k)
      target = intersect(target, eval_filtration(d.filtrations.at(cone.rays[k]), nodes[pick].vals[k]));
    Subspace lower = Subspace::zero(d.field, d.rank);
    for (std::size_t b = 0; b < nodes.size(); ++b)
      if (below(b, pick)) lower = sum(lower, pieces[b]);
    if (!target.contains(lower))
      throw MathError("split_cone: incompatible data, lower pieces escape the intersection", nodes[pick].vals);
    Subspace piece = complement_within(lower, target);
    if (piece.dim() != nodes[pick].mult)
      throw MathError("split_cone: incompatible data, piece has dimension " + std::to_string(piece.dim()) +
                          " but multiplicity is " + std::to_string(nodes[pick].mult),
                      nodes[pick].vals);
    pieces[pick] = piece;
    done[pick] = true;
    out.pieces.push_back({nodes[pick].cls, nodes[pick].mult, std::move(piece)});
  }
  Subspace total = Subspace::zero(d.field, d.rank);
  std::size_t dims = 0;
  for (const auto &p : out.pieces) {
    total = sum(total, p.space);
    dims += p.space.dim();
  }
  if (total.dim() != d.rank || dims != d.rank)
    throw MathError("split_cone: pieces do not form a direct sum decomposition");
  return out;
}

auto filtration_from_splitting(const Fan &fan, const Splitting &s, std::size_t ray, std::int64_t i) -> Subspace {
  if (s.pieces.empty()) throw InputError("empty splitting");
  const auto &ref = s.pieces.front().space;
  Subspace acc = Subspace::zero(ref.field(), ref.ambient_dim());
  for (const auto &p : s.pieces)
    if (class_eval(fan, p.cls, ray) >= i) acc = sum(acc, p.space);
  return acc;
}

auto is_morphism(const Mat &phi, const KlyachkoData &src, const KlyachkoData &dst) -> bool {
  if (!(src.fan == dst.fan)) throw InputError("is_morphism: data live on different fans");
  if (src.field != dst.field || phi.field() != src.field) throw InputError("is_morphism: field mismatch");
  if (phi.rows() != dst.rank || phi.cols() != src.rank)
    throw InputError("is_morphism: map must be " + std::to_string(dst.rank) + " x " + std::to_string(src.rank));
  require_filtrations(src);
  require_filtrations(dst);
  for (std::size_t rho = 0; rho < src.filtrations.size(); ++rho)
    for (const auto &step : src.filtrations[rho].steps)
      if (!eval_filtration(dst.filtrations[rho], step.jump).contains(step.space.image(phi))) return false;
  return true;
}

} // namespace torvec
