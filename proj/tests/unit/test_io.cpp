#include "doctest.h"
#include "test_support.hpp"

#include "torvec/io.hpp"
#include "torvec/report.hpp"

#include <filesystem>
#include <fstream>

using namespace torvec;
using io::Json;
using torvec::testing::Rng;

namespace {

auto error_of(auto &&fn) -> std::string {
  try {
    fn();
  } catch (const InputError &e) {
    return e.what();
  }
  return "";
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("field and fan formats") {
  CHECK(io::field_from_json("Q") == Field::rationals());
  CHECK(io::field_from_json(Json{{"Fp", 5}}) == Field::prime(5));
  CHECK(io::field_to_json(Field::prime(3)) == Json{{"Fp", 3}});
  CHECK_THROWS_AS(io::field_from_json(Json{{"Fp", 6}}), InputError);
  CHECK_THROWS_AS(io::field_from_json("R"), InputError);

  auto fan = io::fan_from_json(Json::parse(R"({"lattice_rank": 2, "rays": [[1,0],[0,1]], "max_cones": [[0,1]]})"));
  CHECK(fan == Fan{2, {{1, 0}, {0, 1}}, {{0, 1}}});
  CHECK(io::fan_from_json(io::fan_to_json(fan)) == fan);
  CHECK(error_of([] { (void)io::fan_from_json(Json::parse(R"({"lattice_rank": 2, "rays": [[1,"a"]], "max_cones": []})")); })
            .find("rays/0/1") != std::string::npos);
  CHECK(error_of([] { (void)io::fan_from_json(Json::parse(R"({"rays": [], "max_cones": []})")); })
            .find("lattice_rank") != std::string::npos);
}

TEST_CASE("klyachko format names offending fields") {
  const char *text = R"({
    "field": "Q", "rank": 2,
    "fan": {"lattice_rank": 1, "rays": [[1]], "max_cones": [[0]]},
    "filtrations": {"0": [{"jump": 0, "basis": [["1","0"],["0","1"]]}, {"jump": 1, "basis": [["1/2","x"]]}]}
  })";
  auto msg = error_of([&] { (void)io::klyachko_from_json(Json::parse(text)); });
  CHECK(msg.find("filtrations/0/1/basis") != std::string::npos);

  const char *good = R"({
    "field": {"Fp": 3}, "rank": 2,
    "fan": {"lattice_rank": 1, "rays": [[1]], "max_cones": [[0]]},
    "filtrations": {"0": [{"jump": 0, "basis": [["1","0"],["0","1"]]}, {"jump": 1, "basis": [["2","1"]]}]}
  })";
  auto d = io::klyachko_from_json(Json::parse(good));
  CHECK(d.field == Field::prime(3));
  CHECK(d.filtrations[0].steps[1].space == testing::sub(Field::prime(3), 2, {{1, 2}}));
}

TEST_CASE("fan given as a path relative to the file") {
  auto dir = std::filesystem::temp_directory_path() / "torvec_io_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "fan.json") << R"({"lattice_rank": 2, "rays": [[1,0],[0,1]], "max_cones": [[0,1]]})";
  std::ofstream(dir / "psi.json") << R"({"fan": "fan.json", "multisets": {"0": [[1,0],[0,1]]}})";
  auto psi = io::load_psi(dir / "psi.json");
  CHECK(psi.rank == 2);
  CHECK(validate_psi(psi).ok);
  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK(error_of([&] { (void)io::load_psi(dir / "broken.json"); }).find("malformed") != std::string::npos);
  CHECK_THROWS_AS(io::load_psi(dir / "missing.json"), InputError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("flags format checks declared dimensions") {
  const char *wrong = R"({"field": {"Fp": 2}, "rank": 2, "flags": {"0": [{"dim": 2, "basis": [["1","1"]]}]}})";
  CHECK(error_of([&] { (void)io::flags_from_json(Json::parse(wrong)); }).find("flags/0/0") != std::string::npos);
  const char *ok = R"({"field": {"Fp": 2}, "rank": 2, "flags": {"0": [{"dim": 1, "basis": [["1","1"]]}], "1": []}})";
  auto fc = io::flags_from_json(Json::parse(ok));
  CHECK(fc.flags.size() == 2);
  CHECK(fc.flags[0].size() == 1);
}

TEST_CASE("property: parse of serialize is the identity on all file kinds") {
  Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    Field f = testing::random_field(rng);
    Fan fan = testing::random_fan(rng);
    CHECK(io::fan_from_json(Json::parse(io::fan_to_json(fan).dump())) == fan);
    auto inst = testing::split_instance(fan, f, 1 + rng.index(4), rng);
    CHECK(io::klyachko_from_json(Json::parse(io::klyachko_to_json(inst.data).dump())) == inst.data);
    CHECK(io::psi_from_json(Json::parse(io::psi_to_json(inst.psi).dump())) == inst.psi);
    auto fc = testing::random_flags(flag_shape(inst.psi), f, rng);
    CHECK(io::flags_from_json(Json::parse(io::flags_to_json(fc).dump())) == fc);
    // Serialization is deterministic.
    CHECK(io::klyachko_to_json(inst.data).dump() == io::klyachko_to_json(inst.data).dump());
  }
}

TEST_CASE("report fragments") {
  Fan fan{2, {{1, 0}, {0, 1}}, {{0, 1}}};
  CHECK(io::ray_json(fan, 1) == Json{{"index", 1}, {"vector", {0, 1}}});
  Poly p = Poly::linear({1, 2});
  auto pj = io::poly_to_json(p);
  CHECK(pj == Json::parse("[[[1,0],1],[[0,1],2]]"));
  auto oj = io::orbit_json(OrbitSummary{1, false, {21}, 168});
  CHECK(oj["orbit_count"] == 1);
}

} // TEST_SUITE
