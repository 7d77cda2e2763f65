#pragma once
// JSON file formats for fans, filtration data, multisets and flags, plus the
// report objects the command-line tool prints.

#include "torvec/chern.hpp"
#include "torvec/fan.hpp"
#include "torvec/klyachko.hpp"
#include "torvec/mnev.hpp"
#include "torvec/moduli.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace torvec::io {

using Json = nlohmann::ordered_json;

// Parsers throw InputError naming the offending field (e.g. "filtrations/2/0/basis").
auto field_from_json(const Json &j) -> Field;
auto field_to_json(const Field &f) -> Json;

auto fan_from_json(const Json &j) -> Fan;
auto fan_to_json(const Fan &fan) -> Json;

// `base` resolves a "fan" given as a relative path.
auto klyachko_from_json(const Json &j, const std::filesystem::path &base = {}) -> KlyachkoData;
auto klyachko_to_json(const KlyachkoData &d) -> Json;

auto psi_from_json(const Json &j, const std::filesystem::path &base = {}) -> MultisetPsi;
auto psi_to_json(const MultisetPsi &psi) -> Json;

auto flags_from_json(const Json &j) -> FlagCollection;
auto flags_to_json(const FlagCollection &flags) -> Json;

auto subspace_to_json(const Subspace &s) -> Json;
auto poly_to_json(const Poly &p) -> Json;

// Read and parse a JSON file; parse errors become InputError with the byte offset.
auto read_json(const std::filesystem::path &path) -> Json;
auto load_fan(const std::filesystem::path &path) -> Fan;
auto load_klyachko(const std::filesystem::path &path) -> KlyachkoData;
auto load_psi(const std::filesystem::path &path) -> MultisetPsi;
auto load_flags(const std::filesystem::path &path) -> FlagCollection;

// Report fragments.
auto ray_json(const Fan &fan, std::size_t ray) -> Json;
auto cone_json(const Fan &fan, const ConeRef &cone) -> Json;
auto condition_json(const Fan &fan, const RankCondition &rc) -> Json;
auto splitting_json(const Fan &fan, const Splitting &s) -> Json;
auto chern_json(const MultisetPsi &psi, const std::vector<PiecewisePoly> &classes) -> Json;
auto orbit_json(const OrbitSummary &o) -> Json;

} // namespace torvec::io
