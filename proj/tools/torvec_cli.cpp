// torvec: command-line front end. Every command prints one JSON report on
// stdout. Exit status: 0 success, 1 validation or mathematical failure,
// 2 malformed input or exceeded budget.

#include "torvec/io.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace torvec;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

auto emit(const Json &report, int status) -> int {
  std::cout << report.dump(2) << '\n';
  return status;
}

auto report_json(const std::string &command, const Report &rep) -> Json {
  return Json{{"command", command}, {"ok", rep.ok}, {"message", rep.message}};
}

auto cmd_validate_fan(const std::string &path) -> int {
  Fan fan = io::load_fan(path);
  auto rep = validate_fan(fan);
  Json out = report_json("validate-fan", rep);
  out["fan"] = io::fan_to_json(fan);
  return emit(out, rep ? kOk : kFailed);
}

auto cmd_validate_psi(const std::string &path) -> int {
  auto psi = io::load_psi(path);
  auto rep = validate_psi(psi);
  Json out = report_json("validate-psi", rep);
  out["rank"] = psi.rank;
  return emit(out, rep ? kOk : kFailed);
}

auto check_data(const std::string &command, const KlyachkoData &d) -> std::optional<int> {
  if (auto rep = validate_filtrations(d); !rep) return emit(report_json(command, rep), kFailed);
  return std::nullopt;
}

auto cmd_infer_psi(const std::string &path) -> int {
  auto d = io::load_klyachko(path);
  if (auto early = check_data("infer-psi", d)) return *early;
  auto psi = psi_of(d);
  Json cones = Json::array();
  for (std::size_t k = 0; k < psi.cones.size(); ++k) {
    Json classes = Json::array();
    for (const auto &x : psi.cones[k]) classes.push_back(x.canonical);
    cones.push_back(Json{{"cone", k}, {"rays", io::cone_json(psi.fan, max_cone(psi.fan, k))}, {"classes", classes}});
  }
  return emit(Json{{"command", "infer-psi"}, {"ok", true}, {"cones", cones}, {"psi", io::psi_to_json(psi)}}, kOk);
}

auto cmd_check_compat(const std::string &data_path, const std::string &psi_path) -> int {
  auto d = io::load_klyachko(data_path);
  auto psi = io::load_psi(psi_path);
  if (auto early = check_data("check-compat", d)) return *early;
  if (auto rep = validate_psi(psi); !rep) return emit(report_json("check-compat", rep), kFailed);
  auto rep = check_compatibility(d, psi);
  Json out{{"command", "check-compat"}, {"ok", rep.ok}, {"message", rep.message}};
  if (!rep) {
    ConeRef cone = max_cone(d.fan, rep.cone);
    out["cone"] = rep.cone;
    out["rays"] = io::cone_json(d.fan, cone);
    out["tuple"] = rep.tuple;
    out["intersection_dim"] = rep.intersection_dim;
    out["count"] = rep.count;
  }
  return emit(out, rep ? kOk : kFailed);
}

auto cmd_split(const std::string &data_path, const std::string &psi_path, std::optional<std::size_t> only) -> int {
  auto d = io::load_klyachko(data_path);
  auto psi = io::load_psi(psi_path);
  if (auto early = check_data("split", d)) return *early;
  if (auto rep = validate_psi(psi); !rep) return emit(report_json("split", rep), kFailed);
  if (!(psi.fan == d.fan)) throw InputError("filtration data and multisets are on different fans");
  if (only && *only >= psi.cones.size()) throw InputError("--cone index out of range");
  Json cones = Json::array();
  for (std::size_t k = 0; k < psi.cones.size(); ++k) {
    if (only && *only != k) continue;
    ConeRef cone = max_cone(d.fan, k);
    if (auto rep = check_cone_compatibility(d, cone, psi.cones[k]); !rep) {
      return emit(Json{{"command", "split"},
                       {"ok", false},
                       {"message", "data incompatible with the multiset on cone " + std::to_string(k)},
                       {"cone", k},
                       {"tuple", rep.tuple}},
                  kFailed);
    }
    Json s = io::splitting_json(d.fan, split_cone(d, cone, psi.cones[k]));
    s["cone"] = k;
    cones.push_back(std::move(s));
  }
  return emit(Json{{"command", "split"}, {"ok", true}, {"splittings", cones}}, kOk);
}

auto cmd_chern(const std::string &psi_path) -> int {
  auto psi = io::load_psi(psi_path);
  if (auto rep = validate_psi(psi); !rep) return emit(report_json("chern", rep), kFailed);
  auto classes = chern_of_psi(psi);
  Json out{{"command", "chern"}, {"ok", true}, {"rank", psi.rank}};
  out.update(io::chern_json(psi, classes));
  return emit(out, kOk);
}

auto cmd_conditions(const std::string &psi_path) -> int {
  auto psi = io::load_psi(psi_path);
  if (auto rep = validate_psi(psi); !rep) return emit(report_json("conditions", rep), kFailed);
  Json list = Json::array();
  for (const auto &rc : generate_conditions(psi)) list.push_back(io::condition_json(psi.fan, rc));
  return emit(Json{{"command", "conditions"}, {"ok", true}, {"count", list.size()}, {"conditions", list}}, kOk);
}

auto cmd_member(const std::string &flags_path, const std::string &psi_path) -> int {
  auto flags = io::load_flags(flags_path);
  auto psi = io::load_psi(psi_path);
  if (auto rep = validate_psi(psi); !rep) return emit(report_json("member", rep), kFailed);
  auto m = check_membership(flags, psi);
  Json violations = Json::array();
  for (const auto &rc : m.violations) violations.push_back(io::condition_json(psi.fan, rc));
  return emit(Json{{"command", "member"}, {"ok", m.member}, {"violations", violations}}, m.member ? kOk : kFailed);
}

auto cmd_enumerate(const std::string &psi_path, std::int64_t p, bool points, bool orbits) -> int {
  auto psi = io::load_psi(psi_path);
  if (auto rep = validate_psi(psi); !rep) return emit(report_json("enumerate", rep), kFailed);
  auto pts = enumerate_points(psi, p);
  Json out{{"command", "enumerate"}, {"ok", true}, {"field", io::field_to_json(pts.field)}, {"count", pts.count()}};
  if (orbits) out["orbits"] = io::orbit_json(orbit_analysis(pts));
  if (points) {
    Json list = Json::array();
    for (const auto &fc : pts.points) list.push_back(io::flags_to_json(fc)["flags"]);
    out["points"] = std::move(list);
  }
  return emit(out, kOk);
}

auto cmd_mnev(std::size_t d, std::size_t dprime, const std::string &incidences, std::optional<std::int64_t> p,
              const std::string &out_dir) -> int {
  IncidencePattern pat{d, dprime, parse_incidences(incidences)};
  auto psi = build_universality_instance(pat);
  Json out{{"command", "mnev"}, {"ok", true}};
  Json fan = io::fan_to_json(psi.fan);
  Json psi_json = io::psi_to_json(psi);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream(std::filesystem::path(out_dir) / "fan.json") << fan.dump(2) << '\n';
    std::ofstream(std::filesystem::path(out_dir) / "psi.json") << psi_json.dump(2) << '\n';
  }
  out["fan"] = fan;
  out["psi"] = psi_json;
  out["validate_fan"] = validate_fan(psi.fan).ok;
  out["validate_psi"] = validate_psi(psi).ok;
  int status = kOk;
  if (p) {
    auto rep = verify_equivalence(pat, *p);
    out["verification"] = Json{{"ok", rep.ok},
                               {"field", "F_" + std::to_string(*p)},
                               {"configurations", rep.configurations},
                               {"oracle_count", rep.oracle_count},
                               {"moduli_count", rep.moduli_count},
                               {"message", rep.message}};
    out["ok"] = rep.ok;
    if (!rep) status = kFailed;
  }
  return emit(out, status);
}

} // namespace

auto main(int argc, char **argv) -> int {
  CLI::App app{"Klyachko filtrations, equivariant Chern classes and framed moduli of toric vector bundles"};
  app.require_subcommand(1);

  std::string a, b, incidences, out_dir;
  std::optional<std::size_t> cone;
  std::int64_t prime = 2;
  std::optional<std::int64_t> verify_field;
  bool points = false, orbits = false;
  std::size_t d = 1, dprime = 1;

  auto *vf = app.add_subcommand("validate-fan", "Check a fan file");
  vf->add_option("fan", a, "fan JSON")->required();
  auto *vp = app.add_subcommand("validate-psi", "Check multiset sizes and face compatibility");
  vp->add_option("psi", a, "psi JSON")->required();
  auto *ip = app.add_subcommand("infer-psi", "Infer the multisets of a filtration file");
  ip->add_option("data", a, "Klyachko data JSON")->required();
  auto *cc = app.add_subcommand("check-compat", "Check filtrations against multisets");
  cc->add_option("data", a, "Klyachko data JSON")->required();
  cc->add_option("psi", b, "psi JSON")->required();
  auto *sp = app.add_subcommand("split", "Construct the splitting on each maximal cone");
  sp->add_option("data", a, "Klyachko data JSON")->required();
  sp->add_option("psi", b, "psi JSON")->required();
  sp->add_option("--cone", cone, "only this maximal cone (0-based)");
  auto *ch = app.add_subcommand("chern", "Equivariant Chern classes c_0..c_r per maximal cone");
  ch->add_option("psi", a, "psi JSON")->required();
  auto *co = app.add_subcommand("conditions", "Rank conditions cutting out the framed moduli");
  co->add_option("psi", a, "psi JSON")->required();
  auto *me = app.add_subcommand("member", "Test a flag collection against the rank conditions");
  me->add_option("flags", a, "flags JSON")->required();
  me->add_option("psi", b, "psi JSON")->required();
  auto *en = app.add_subcommand("enumerate", "Count framed moduli points over F_p");
  en->add_option("psi", a, "psi JSON")->required();
  en->add_option("--p", prime, "prime")->required();
  en->add_flag("--points", points, "list the points");
  en->add_flag("--orbits", orbits, "PGL_r(F_p) orbit analysis");
  auto *mn = app.add_subcommand("mnev", "Build (and optionally verify) an incidence-configuration instance");
  mn->add_option("--d", d, "number of points")->required();
  mn->add_option("--dprime", dprime, "number of lines")->required();
  mn->add_option("--incidences", incidences, "1-based pairs i:j,i:j,...");
  mn->add_option("--verify-field", verify_field, "prime p: brute-force check over F_p");
  mn->add_option("--out-dir", out_dir, "also write fan.json and psi.json here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*vf) return cmd_validate_fan(a);
    if (*vp) return cmd_validate_psi(a);
    if (*ip) return cmd_infer_psi(a);
    if (*cc) return cmd_check_compat(a, b);
    if (*sp) return cmd_split(a, b, cone);
    if (*ch) return cmd_chern(a);
    if (*co) return cmd_conditions(a);
    if (*me) return cmd_member(a, b);
    if (*en) return cmd_enumerate(a, prime, points, orbits);
    if (*mn) return cmd_mnev(d, dprime, incidences, verify_field, out_dir);
  } catch (const MathError &e) {
    return emit(Json{{"ok", false}, {"error", "math"}, {"message", e.what()}, {"witness", e.witness()}}, kFailed);
  } catch (const BudgetExceeded &e) {
    return emit(Json{{"ok", false}, {"error", "budget"}, {"message", e.what()}, {"search_space", e.search_space()}},
                kBadInput);
  } catch (const InputError &e) {
    return emit(Json{{"ok", false}, {"error", "input"}, {"message", e.what()}}, kBadInput);
  } catch (const std::overflow_error &e) {
    return emit(Json{{"ok", false}, {"error", "overflow"}, {"message", e.what()}}, kBadInput);
  }
  return kBadInput;
}
