#include "torvec/io.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace torvec::io {

namespace {

auto at(const Json &j, const std::string &key, const std::string &path) -> const Json & {
  if (!j.is_object()) throw InputError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path + ": missing field '" + key + "'");
  return *it;
}

auto join(const std::string &path, const std::string &key) -> std::string {
  return path.empty() ? key : path + "/" + key;
}

auto as_int(const Json &j, const std::string &path) -> std::int64_t {
  if (!j.is_number_integer()) throw InputError(path + ": expected an integer");
  return j.get<std::int64_t>();
}

auto as_index(const Json &j, const std::string &path) -> std::size_t {
  auto v = as_int(j, path);
  if (v < 0) throw InputError(path + ": index must be nonnegative");
  return static_cast<std::size_t>(v);
}

auto as_array(const Json &j, const std::string &path) -> const Json & {
  if (!j.is_array()) throw InputError(path + ": expected an array");
  return j;
}

auto int_vec(const Json &j, const std::string &path) -> IntVec {
  IntVec out;
  std::size_t k = 0;
  for (const auto &x : as_array(j, path)) out.push_back(as_int(x, join(path, std::to_string(k++))));
  return out;
}

auto key_index(const std::string &key, const std::string &path) -> std::size_t {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(key, &used);
  } catch (const std::logic_error &) {
    used = 0;
  }
  if (used == 0 || used != key.size() || key.front() == '-' || key.front() == '+')
    throw InputError(path + ": key '" + key + "' is not a nonnegative index");
  return v;
}

auto scalar(const Field &f, const Json &j, const std::string &path) -> Scalar {
  try {
    if (j.is_string()) return f.parse(j.get<std::string>());
    if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
  } catch (const InputError &e) {
    throw InputError(path + ": " + e.what());
  }
  throw InputError(path + ": expected a field element string such as \"3/4\"");
}

auto basis_subspace(const Field &f, std::size_t r, const Json &j, const std::string &path) -> Subspace {
  Mat m(f, 0, r);
  std::size_t k = 0;
  for (const auto &row : as_array(j, path)) {
    const std::string rp = join(path, std::to_string(k++));
    if (as_array(row, rp).size() != r) throw InputError(rp + ": row length must equal the rank " + std::to_string(r));
    std::vector<Scalar> vals;
    std::size_t c = 0;
    for (const auto &x : row) vals.push_back(scalar(f, x, join(rp, std::to_string(c++))));
    m.append_row(vals);
  }
  return Subspace::span(m);
}

auto resolve_fan(const Json &j, const std::filesystem::path &base) -> Fan {
  if (j.is_string()) {
    std::filesystem::path p = j.get<std::string>();
    if (p.is_relative() && !base.empty()) p = base / p;
    return load_fan(p);
  }
  try {
    return fan_from_json(j);
  } catch (const InputError &e) {
    throw InputError(std::string("fan/") + e.what());
  }
}

auto rank_of(const Json &j) -> std::size_t {
  auto r = as_index(at(j, "rank", ""), "rank");
  if (r == 0) throw InputError("rank: must be positive");
  return r;
}

} // namespace

auto field_from_json(const Json &j) -> Field {
  if (j.is_string() && (j.get<std::string>() == "Q" || j.get<std::string>() == "QQ")) return Field::rationals();
  if (j.is_object() && j.contains("Fp")) {
    try {
      return Field::prime(as_int(j.at("Fp"), "field/Fp"));
    } catch (const InputError &e) {
      throw InputError(std::string("field: ") + e.what());
    }
  }
  throw InputError("field: expected \"Q\" or {\"Fp\": p}");
}

auto field_to_json(const Field &f) -> Json {
  if (!f.is_prime()) return "Q";
  return Json{{"Fp", f.modulus()}};
}

auto fan_from_json(const Json &j) -> Fan {
  Fan fan;
  fan.lattice_rank = as_index(at(j, "lattice_rank", ""), "lattice_rank");
  std::size_t k = 0;
  for (const auto &ray : as_array(at(j, "rays", ""), "rays")) fan.rays.push_back(int_vec(ray, "rays/" + std::to_string(k++)));
  k = 0;
  for (const auto &cone : as_array(at(j, "max_cones", ""), "max_cones")) {
    const std::string path = "max_cones/" + std::to_string(k++);
    std::vector<std::size_t> rays;
    std::size_t c = 0;
    for (const auto &r : as_array(cone, path)) rays.push_back(as_index(r, join(path, std::to_string(c++))));
    fan.max_cones.push_back(std::move(rays));
  }
  return fan;
}

auto fan_to_json(const Fan &fan) -> Json {
  Json rays = Json::array();
  for (const auto &r : fan.rays) rays.push_back(r);
  Json cones = Json::array();
  for (const auto &c : fan.max_cones) cones.push_back(c);
  return Json{{"lattice_rank", fan.lattice_rank}, {"rays", rays}, {"max_cones", cones}};
}

auto klyachko_from_json(const Json &j, const std::filesystem::path &base) -> KlyachkoData {
  KlyachkoData d;
  d.field = field_from_json(at(j, "field", ""));
  d.rank = rank_of(j);
  d.fan = resolve_fan(at(j, "fan", ""), base);
  const Json &filts = at(j, "filtrations", "");
  if (!filts.is_object()) throw InputError("filtrations: expected an object keyed by ray index");
  std::vector<std::optional<Filtration>> slots(d.fan.rays.size());
  for (const auto &[key, entries] : filts.items()) {
    const std::string path = "filtrations/" + key;
    std::size_t rho = key_index(key, "filtrations");
    if (rho >= slots.size()) throw InputError(path + ": ray index out of range");
    Filtration f;
    std::size_t k = 0;
    for (const auto &e : as_array(entries, path)) {
      const std::string ep = join(path, std::to_string(k++));
      f.steps.push_back({as_int(at(e, "jump", ep), join(ep, "jump")),
                         basis_subspace(d.field, d.rank, at(e, "basis", ep), join(ep, "basis"))});
    }
    slots[rho] = std::move(f);
  }
  for (std::size_t rho = 0; rho < slots.size(); ++rho) {
    if (!slots[rho]) throw InputError("filtrations: missing filtration for ray " + std::to_string(rho));
    d.filtrations.push_back(std::move(*slots[rho]));
  }
  return d;
}

auto subspace_to_json(const Subspace &s) -> Json {
  Json rows = Json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) {
    Json row = Json::array();
    for (auto x : s.basis().row(i)) row.push_back(s.field().format(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

auto klyachko_to_json(const KlyachkoData &d) -> Json {
  Json filts = Json::object();
  for (std::size_t rho = 0; rho < d.filtrations.size(); ++rho) {
    Json entries = Json::array();
    for (const auto &s : d.filtrations[rho].steps)
      entries.push_back(Json{{"jump", s.jump}, {"basis", subspace_to_json(s.space)}});
    filts[std::to_string(rho)] = std::move(entries);
  }
  return Json{{"field", field_to_json(d.field)}, {"rank", d.rank}, {"fan", fan_to_json(d.fan)}, {"filtrations", filts}};
}

auto psi_from_json(const Json &j, const std::filesystem::path &base) -> MultisetPsi {
  Fan fan = resolve_fan(at(j, "fan", ""), base);
  const Json &ms = at(j, "multisets", "");
  if (!ms.is_object()) throw InputError("multisets: expected an object keyed by cone index");
  std::vector<std::optional<std::vector<IntVec>>> slots(fan.max_cones.size());
  for (const auto &[key, lifts] : ms.items()) {
    const std::string path = "multisets/" + key;
    std::size_t k = key_index(key, "multisets");
    if (k >= slots.size()) throw InputError(path + ": cone index out of range");
    std::vector<IntVec> vecs;
    std::size_t c = 0;
    for (const auto &u : as_array(lifts, path)) {
      const std::string up = join(path, std::to_string(c++));
      vecs.push_back(int_vec(u, up));
      if (vecs.back().size() != fan.lattice_rank)
        throw InputError(up + ": linear function must have " + std::to_string(fan.lattice_rank) + " entries");
    }
    slots[k] = std::move(vecs);
  }
  std::vector<std::vector<IntVec>> lifts;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (!slots[k]) throw InputError("multisets: missing multiset for cone " + std::to_string(k));
    lifts.push_back(std::move(*slots[k]));
  }
  return make_psi(fan, lifts);
}

auto psi_to_json(const MultisetPsi &psi) -> Json {
  Json ms = Json::object();
  for (std::size_t k = 0; k < psi.cones.size(); ++k) {
    Json lifts = Json::array();
    for (const auto &x : psi.cones[k]) lifts.push_back(x.lift);
    ms[std::to_string(k)] = std::move(lifts);
  }
  return Json{{"fan", fan_to_json(psi.fan)}, {"multisets", ms}};
}

auto flags_from_json(const Json &j) -> FlagCollection {
  FlagCollection fc;
  fc.field = field_from_json(at(j, "field", ""));
  fc.rank = rank_of(j);
  const Json &flags = at(j, "flags", "");
  if (!flags.is_object()) throw InputError("flags: expected an object keyed by ray index");
  std::vector<std::optional<std::vector<Subspace>>> slots;
  for (const auto &[key, members] : flags.items()) {
    const std::string path = "flags/" + key;
    std::size_t rho = key_index(key, "flags");
    if (rho >= slots.size()) slots.resize(rho + 1);
    std::vector<Subspace> out;
    std::size_t k = 0;
    for (const auto &m : as_array(members, path)) {
      const std::string mp = join(path, std::to_string(k++));
      std::size_t dim = as_index(at(m, "dim", mp), join(mp, "dim"));
      Subspace s = basis_subspace(fc.field, fc.rank, at(m, "basis", mp), join(mp, "basis"));
      if (s.dim() != dim)
        throw InputError(mp + ": basis spans a " + std::to_string(s.dim()) + "-dimensional space, declared dim " +
                         std::to_string(dim));
      if (dim == fc.rank) continue; // the whole space is implicit
      if (dim == 0) throw InputError(mp + ": flag members must be nonzero");
      out.push_back(std::move(s));
    }
    std::stable_sort(out.begin(), out.end(), [](const Subspace &a, const Subspace &b) { return a.dim() > b.dim(); });
    slots[rho] = std::move(out);
  }
  for (std::size_t rho = 0; rho < slots.size(); ++rho) {
    if (!slots[rho]) throw InputError("flags: missing flag for ray " + std::to_string(rho));
    fc.flags.push_back(std::move(*slots[rho]));
  }
  return fc;
}

auto flags_to_json(const FlagCollection &flags) -> Json {
  Json out = Json::object();
  for (std::size_t rho = 0; rho < flags.flags.size(); ++rho) {
    Json members = Json::array();
    for (const auto &m : flags.flags[rho]) members.push_back(Json{{"dim", m.dim()}, {"basis", subspace_to_json(m)}});
    out[std::to_string(rho)] = std::move(members);
  }
  return Json{{"field", field_to_json(flags.field)}, {"rank", flags.rank}, {"flags", out}};
}

auto poly_to_json(const Poly &p) -> Json {
  Json terms = Json::array();
  for (const auto &[e, c] : p.terms()) terms.push_back(Json::array({e, c}));
  return terms;
}

auto read_json(const std::filesystem::path &path) -> Json {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw InputError(path.string() + ": malformed JSON (" + e.what() + ")");
  }
}

namespace {

template <class Fn>
auto load_with(const std::filesystem::path &path, Fn &&fn) {
  Json j = read_json(path);
  try {
    return fn(j);
  } catch (const InputError &e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

} // namespace

auto load_fan(const std::filesystem::path &path) -> Fan {
  return load_with(path, [](const Json &j) { return fan_from_json(j); });
}

auto load_klyachko(const std::filesystem::path &path) -> KlyachkoData {
  return load_with(path, [&](const Json &j) { return klyachko_from_json(j, path.parent_path()); });
}

auto load_psi(const std::filesystem::path &path) -> MultisetPsi {
  return load_with(path, [&](const Json &j) { return psi_from_json(j, path.parent_path()); });
}

auto load_flags(const std::filesystem::path &path) -> FlagCollection {
  return load_with(path, [](const Json &j) { return flags_from_json(j); });
}

auto ray_json(const Fan &fan, std::size_t ray) -> Json {
  return Json{{"index", ray}, {"vector", fan.rays.at(ray)}};
}

auto cone_json(const Fan &fan, const ConeRef &cone) -> Json {
  Json rays = Json::array();
  for (auto r : cone.rays) rays.push_back(ray_json(fan, r));
  return rays;
}

auto condition_json(const Fan &fan, const RankCondition &rc) -> Json {
  Json terms = Json::array();
  for (const auto &[ray, dim] : rc.terms)
    terms.push_back(Json{{"ray", ray}, {"vector", fan.rays.at(ray)}, {"dim", dim}});
  return Json{{"source_cone", rc.source_cone},
              {"terms", terms},
              {"required_dim", rc.required_dim},
              {"trivial", rc.trivial}};
}

auto splitting_json(const Fan &fan, const Splitting &s) -> Json {
  Json pieces = Json::array();
  for (const auto &p : s.pieces)
    pieces.push_back(Json{{"class", p.cls.canonical},
                          {"lift", p.cls.lift},
                          {"multiplicity", p.multiplicity},
                          {"basis", subspace_to_json(p.space)}});
  return Json{{"rays", cone_json(fan, s.cone)}, {"pieces", pieces}};
}

auto chern_json(const MultisetPsi &psi, const std::vector<PiecewisePoly> &classes) -> Json {
  Json cones = Json::array();
  for (std::size_t k = 0; k < psi.cones.size(); ++k) {
    Json cs = Json::array();
    for (std::size_t i = 0; i < classes.size(); ++i)
      cs.push_back(Json{{"i", i}, {"terms", poly_to_json(classes[i].pieces[k])}, {"text", classes[i].pieces[k].to_string()}});
    cones.push_back(Json{{"cone", k}, {"rays", cone_json(psi.fan, max_cone(psi.fan, k))}, {"classes", cs}});
  }
  Json continuity = Json::array();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto rep = validate_continuity(classes[i]);
    continuity.push_back(Json{{"i", i}, {"ok", rep.ok}, {"message", rep.message}});
  }
  return Json{{"cones", cones}, {"continuity", continuity}};
}

auto orbit_json(const OrbitSummary &o) -> Json {
  return Json{{"orbit_count", o.orbit_count},
              {"free", o.free},
              {"group_order", o.group_order},
              {"orbit_sizes", o.orbit_sizes}};
}

} // namespace torvec::io
