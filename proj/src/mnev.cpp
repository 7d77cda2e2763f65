#include "torvec/mnev.hpp"

#include <cmath>
#include <sstream>

namespace torvec {

namespace {

auto unit(std::size_t n, std::size_t i) -> IntVec {
  IntVec v(n, 0);
  v[i] = 1;
  return v;
}

auto plus(IntVec a, const IntVec &b) -> IntVec {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

auto pattern_str(const IncidencePattern &pat) -> std::string {
  std::ostringstream os;
  os << "d=" << pat.d << " d'=" << pat.dprime << " I={";
  bool first = true;
  for (const auto &[i, j] : pat.incidences) {
    os << (first ? "" : ",") << i << ':' << j;
    first = false;
  }
  os << '}';
  return os.str();
}

} // namespace

auto validate_pattern(const IncidencePattern &pat) -> Report {
  if (pat.d < 1) return Report::fail("need at least one point");
  if (pat.dprime < 1) return Report::fail("need at least one line");
  for (const auto &[i, j] : pat.incidences)
    if (i < 1 || i > pat.d || j < 1 || j > pat.dprime)
      return Report::fail("incidence " + std::to_string(i) + ":" + std::to_string(j) + " is out of range");
  return Report::pass();
}

auto parse_incidences(const std::string &text) -> std::set<std::pair<std::size_t, std::size_t>> {
  std::set<std::pair<std::size_t, std::size_t>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(' ') == std::string::npos) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos) throw InputError("incidence '" + item + "' is not of the form i:j");
    try {
      std::size_t used_i = 0, used_j = 0;
      const std::string a = item.substr(0, colon), b = item.substr(colon + 1);
      long i = std::stol(a, &used_i), j = std::stol(b, &used_j);
      if (used_i != a.size() || used_j != b.size() || i < 1 || j < 1) throw std::invalid_argument(item);
      out.emplace(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    } catch (const std::logic_error &) {
      throw InputError("incidence '" + item + "' is not of the form i:j with positive integers");
    }
  }
  return out;
}

auto build_universality_instance(const IncidencePattern &pat) -> MultisetPsi {
  if (auto rep = validate_pattern(pat); !rep) throw InputError("invalid incidence pattern: " + rep.message);
  const std::size_t n = pat.d + pat.dprime;
  Fan fan;
  fan.lattice_rank = n;
  for (std::size_t i = 0; i < n; ++i) fan.rays.push_back(unit(n, i));
  std::vector<std::vector<IntVec>> lifts;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      fan.max_cones.push_back({i, j});
      const IntVec ei = unit(n, i), ej = unit(n, j), zero(n, 0);
      if (j < pat.d) {
        lifts.push_back({zero, ei, ej});
      } else if (i < pat.d) {
        if (pat.incidences.count({i + 1, j - pat.d + 1}))
          lifts.push_back({zero, ej, plus(ei, ej)});
        else
          lifts.push_back({ei, ej, ej});
      } else {
        lifts.push_back({ei, ej, plus(ei, ej)});
      }
    }
  return make_psi(fan, lifts);
}

auto incidence_pattern_of(const Configuration &cfg) -> ConfigurationPattern {
  ConfigurationPattern out;
  out.pattern.d = cfg.points.size();
  out.pattern.dprime = cfg.lines.size();
  for (std::size_t i = 0; i < cfg.points.size(); ++i)
    for (std::size_t j = 0; j < cfg.lines.size(); ++j)
      if (cfg.lines[j].contains(cfg.points[i])) out.pattern.incidences.emplace(i + 1, j + 1);
  for (std::size_t a = 0; a < cfg.points.size(); ++a)
    for (std::size_t b = a + 1; b < cfg.points.size(); ++b)
      if (cfg.points[a] == cfg.points[b]) out.distinct_points = false;
  for (std::size_t a = 0; a < cfg.lines.size(); ++a)
    for (std::size_t b = a + 1; b < cfg.lines.size(); ++b)
      if (cfg.lines[a] == cfg.lines[b]) out.distinct_lines = false;
  return out;
}

auto flags_of_config(const Configuration &cfg, const FlagShape &shape) -> FlagCollection {
  const std::size_t d = cfg.points.size();
  if (shape.rank != 3) throw InputError("configuration flags need rank 3");
  if (shape.rays.size() != d + cfg.lines.size()) throw InputError("flag shape does not match the configuration size");
  FlagCollection out{cfg.field, 3, {}};
  for (std::size_t rho = 0; rho < shape.rays.size(); ++rho) {
    const auto &levels = shape.rays[rho].levels;
    const std::size_t want = rho < d ? 1 : 2;
    if (levels.size() != 2 || levels[1].first != want)
      throw InputError("ray " + std::to_string(rho) + " does not carry a " + (want == 1 ? "point" : "line") + " flag");
    const Subspace &member = rho < d ? cfg.points[rho] : cfg.lines[rho - d];
    if (member.dim() != want || member.ambient_dim() != 3 || member.field() != cfg.field)
      throw InputError("configuration member " + std::to_string(rho) + " has the wrong dimension");
    out.flags.push_back({member});
  }
  return out;
}

auto config_of_flags(const FlagCollection &flags, std::size_t d, std::size_t dprime) -> Configuration {
  if (flags.rank != 3 || flags.flags.size() != d + dprime) throw InputError("flags do not describe a configuration");
  Configuration cfg{flags.field, {}, {}};
  for (std::size_t rho = 0; rho < d + dprime; ++rho) {
    if (flags.flags[rho].size() != 1) throw InputError("ray " + std::to_string(rho) + " flag must have one member");
    (rho < d ? cfg.points : cfg.lines).push_back(flags.flags[rho][0]);
  }
  return cfg;
}

auto verify_equivalence(const IncidencePattern &pat, std::int64_t p) -> EquivalenceReport {
  const Field field = Field::prime(p);
  const MultisetPsi psi = build_universality_instance(pat);
  const MembershipChecker checker(psi);
  const auto points = all_subspaces(field, 3, 1);
  const auto lines = all_subspaces(field, 3, 2);
  const std::size_t n = pat.d + pat.dprime;
  const double space = std::pow(static_cast<double>(points.size()), static_cast<double>(pat.d)) *
                       std::pow(static_cast<double>(lines.size()), static_cast<double>(pat.dprime));
  if (space > enumeration_budget())
    throw BudgetExceeded("configuration space of " + std::to_string(static_cast<long double>(space)) +
                             " exceeds the enumeration budget",
                         space);

  EquivalenceReport rep;
  std::vector<std::size_t> idx(n, 0);
  Configuration cfg{field, std::vector<Subspace>(pat.d, points[0]), std::vector<Subspace>(pat.dprime, lines[0])};
  while (true) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k < pat.d)
        cfg.points[k] = points[idx[k]];
      else
        cfg.lines[k - pat.d] = lines[idx[k]];
    }
    ++rep.configurations;
    const bool member = checker.holds(flags_of_config(cfg, checker.shape()));
    const auto cp = incidence_pattern_of(cfg);
    const bool realizes = cp.distinct_points && cp.distinct_lines && cp.pattern == pat;
    rep.oracle_count += realizes ? 1 : 0;
    if (member != realizes && rep.ok) {
      rep.ok = false;
      std::ostringstream os;
      os << "configuration #" << rep.configurations - 1 << " (pattern " << pattern_str(cp.pattern)
         << (cp.distinct_points ? "" : ", repeated point") << (cp.distinct_lines ? "" : ", repeated line")
         << ") is " << (member ? "" : "not ") << "a moduli point but " << (realizes ? "realizes " : "does not realize ")
         << pattern_str(pat);
      rep.message = os.str();
    }
    std::size_t t = n;
    while (t > 0 && ++idx[t - 1] == (t - 1 < pat.d ? points.size() : lines.size())) idx[--t] = 0;
    if (t == 0) break;
  }
  rep.moduli_count = enumerate_points(psi, p).count();
  if (rep.ok && rep.moduli_count != rep.oracle_count) {
    rep.ok = false;
    rep.message = "enumerate_points found " + std::to_string(rep.moduli_count) + " points, oracle counts " +
                  std::to_string(rep.oracle_count);
  }
  if (rep.ok) rep.message = pattern_str(pat) + " over F_" + std::to_string(p) + ": equivalent";
  return rep;
}

} // namespace torvec
