#pragma once
// Point/line incidence configurations in P^2 realized as framed moduli of
// rank 3 toric vector bundles on a smooth quasi-affine toric variety.

#include "torvec/exactalg.hpp"
#include "torvec/fan.hpp"
#include "torvec/klyachko.hpp"
#include "torvec/moduli.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace torvec {

// Points x_1..x_d, lines l_1..l_dprime; `incidences` holds 1-based (i, j)
// meaning x_i lies on l_j.
struct IncidencePattern {
  std::size_t d = 0;
  std::size_t dprime = 0;
  std::set<std::pair<std::size_t, std::size_t>> incidences;
  friend auto operator==(const IncidencePattern &, const IncidencePattern &) -> bool = default;
};

struct Configuration {
  Field field = Field::rationals();
  std::vector<Subspace> points; // lines through the origin in k^3
  std::vector<Subspace> lines;  // planes through the origin in k^3
  friend auto operator==(const Configuration &, const Configuration &) -> bool = default;
};

struct ConfigurationPattern {
  IncidencePattern pattern;
  bool distinct_points = true;
  bool distinct_lines = true;
};

struct EquivalenceReport {
  bool ok = true;
  std::size_t configurations = 0;
  std::size_t oracle_count = 0; // configurations realizing the pattern
  std::size_t moduli_count = 0; // points found by enumerate_points
  std::string message;
  explicit operator bool() const { return ok; }
};

auto validate_pattern(const IncidencePattern &pat) -> Report;
// Parses "i:j,i:j,..." (1-based); empty string means no incidences.
auto parse_incidences(const std::string &text) -> std::set<std::pair<std::size_t, std::size_t>>;

auto build_universality_instance(const IncidencePattern &pat) -> MultisetPsi;
auto incidence_pattern_of(const Configuration &cfg) -> ConfigurationPattern;
auto flags_of_config(const Configuration &cfg, const FlagShape &shape) -> FlagCollection;
auto config_of_flags(const FlagCollection &flags, std::size_t d, std::size_t dprime) -> Configuration;
auto verify_equivalence(const IncidencePattern &pat, std::int64_t p) -> EquivalenceReport;

} // namespace torvec
