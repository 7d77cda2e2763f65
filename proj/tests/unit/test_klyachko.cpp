#include "doctest.h"
#include "test_support.hpp"

#include "torvec/report.hpp"

using namespace torvec;
using torvec::testing::Rng;
using torvec::testing::sub;

namespace {

const Field Q = Field::rationals();

auto quadrant() -> Fan { return Fan{2, {{1, 0}, {0, 1}}, {{0, 1}}}; }

auto filt(std::vector<FiltrationStep> steps) -> Filtration { return Filtration{std::move(steps)}; }

auto full(std::size_t r) -> Subspace { return Subspace::full(Q, r); }

// r=3 on <e1,e2>: rho1 jumps to `line` at 1, rho2 jumps to `plane` at 1.
auto line_plane(const Subspace &line, const Subspace &plane) -> KlyachkoData {
  return KlyachkoData{Q, 3, quadrant(), {filt({{0, full(3)}, {1, line}}), filt({{0, full(3)}, {1, plane}})}};
}

auto trivial_data(const Fan &fan, std::size_t r) -> KlyachkoData {
  KlyachkoData d{Q, r, fan, {}};
  for (std::size_t i = 0; i < fan.rays.size(); ++i) d.filtrations.push_back(filt({{0, full(r)}}));
  return d;
}

} // namespace

TEST_SUITE("klyachko") {

TEST_CASE("validate_filtrations examples") {
  CHECK(validate_filtrations(trivial_data(quadrant(), 2)).ok);
  auto non_nested = KlyachkoData{Q, 2, Fan{1, {{1}}, {{0}}},
                                 {filt({{0, full(2)}, {1, sub(Q, 2, {{1, 0}})}, {2, sub(Q, 2, {{0, 1}})}})}};
  CHECK_FALSE(validate_filtrations(non_nested).ok);
  auto bad_jumps = KlyachkoData{Q, 2, Fan{1, {{1}}, {{0}}}, {filt({{3, full(2)}, {1, sub(Q, 2, {{1, 0}})}})}};
  CHECK_FALSE(validate_filtrations(bad_jumps).ok);
  auto not_full = KlyachkoData{Q, 2, Fan{1, {{1}}, {{0}}}, {filt({{0, sub(Q, 2, {{1, 0}})}})}};
  CHECK_FALSE(validate_filtrations(not_full).ok);
  auto missing = KlyachkoData{Q, 2, quadrant(), {filt({{0, full(2)}})}};
  CHECK_FALSE(validate_filtrations(missing).ok);
  auto wrong_ambient = KlyachkoData{Q, 2, Fan{1, {{1}}, {{0}}}, {filt({{0, full(3)}})}};
  CHECK_FALSE(validate_filtrations(wrong_ambient).ok);
}

TEST_CASE("eval_filtration examples") {
  auto f = filt({{0, full(3)}, {1, sub(Q, 3, {{1, 0, 0}})}});
  CHECK(eval_filtration(f, -5) == full(3));
  CHECK(eval_filtration(f, 0) == full(3));
  CHECK(eval_filtration(f, 1) == sub(Q, 3, {{1, 0, 0}}));
  CHECK(eval_filtration(f, 2).dim() == 0);
  CHECK(jump_values(f) == IntVec{0, 1});
}

TEST_CASE("intersection_dimension examples") {
  auto d = line_plane(sub(Q, 3, {{0, 1, 0}}), sub(Q, 3, {{0, 0, 1}}));
  ConeRef c({0, 1});
  CHECK(intersection_dimension(d, c, {0, -3}) == 3);
  CHECK(intersection_dimension(d, c, {2, 0}) == 0);
  CHECK(intersection_dimension(d, c, {1, 1}) == 0);
  CHECK(intersection_dimension(d, c, {1, 0}) == 1);
}

TEST_CASE("counting_function examples") {
  Fan f = quadrant();
  ConeRef c({0, 1});
  auto ms = make_multiset(f, c, {{0, 0}, {0, 1}, {1, 1}});
  CHECK(counting_function(f, ms, c, {-1, 0}) == 3);
  CHECK(counting_function(f, ms, c, {2, 2}) == 0);
  CHECK(counting_function(f, ms, c, {1, 1}) == 1);
}

TEST_CASE("check_compatibility examples") {
  Fan line{1, {{1}}, {{0}}};
  KlyachkoData rank1{Q, 1, line, {filt({{3, full(1)}})}};
  CHECK(check_compatibility(rank1, make_psi(line, {{{3}}})).ok);
  CHECK_FALSE(check_compatibility(rank1, make_psi(line, {{{2}}})).ok);

  auto psi = make_psi(quadrant(), {{{0, 0}, {0, 1}, {1, 1}}});
  auto ok = line_plane(sub(Q, 3, {{1, 0, 0}}), sub(Q, 3, {{1, 0, 0}, {0, 1, 0}}));
  CHECK(check_compatibility(ok, psi).ok);
  auto bad = line_plane(sub(Q, 3, {{0, 0, 1}}), sub(Q, 3, {{1, 0, 0}, {0, 1, 0}}));
  auto rep = check_compatibility(bad, psi);
  CHECK_FALSE(rep.ok);
  CHECK(rep.tuple == IntVec{1, 1});
  CHECK(rep.intersection_dim == 0);
  CHECK(rep.count == 1);
}

TEST_CASE("validate_psi examples") {
  CHECK(validate_psi(make_psi(quadrant(), {{{1, 0}, {0, 1}}})).ok);
  MultisetPsi wrong_size = make_psi(quadrant(), {{{1, 0}, {0, 1}}});
  wrong_size.rank = 3;
  CHECK_FALSE(validate_psi(wrong_size).ok);
  // Two cones sharing e2 with values {0,1,1} vs {0,0,1} on it.
  Fan two{2, {{1, 0}, {0, 1}, {-1, 0}}, {{0, 1}, {1, 2}}};
  CHECK_FALSE(validate_psi(make_psi(two, {{{0, 0}, {0, 1}, {0, 1}}, {{0, 0}, {0, 0}, {0, 1}}})).ok);
  CHECK(validate_psi(make_psi(two, {{{0, 0}, {0, 1}, {1, 1}}, {{0, 0}, {0, 1}, {-1, 1}}})).ok);
}

TEST_CASE("infer_multiset examples") {
  Fan f = quadrant();
  auto ms = infer_multiset(trivial_data(f, 3), 0);
  CHECK(ms == make_multiset(f, ConeRef({0, 1}), {{0, 0}, {0, 0}, {0, 0}}));

  auto d = line_plane(sub(Q, 3, {{0, 1, 0}}), sub(Q, 3, {{0, 0, 1}}));
  CHECK(infer_multiset(d, 0) == make_multiset(f, ConeRef({0, 1}), {{0, 0}, {1, 0}, {0, 1}}));

  KlyachkoData r1{Q, 1, f, {filt({{2, full(1)}}), filt({{-1, full(1)}})}};
  CHECK(infer_multiset(r1, 0) == make_multiset(f, ConeRef({0, 1}), {{2, -1}}));
}

TEST_CASE("infer_multiset rejects non-integral and non-bundle data") {
  // A single ray (2,1)... primitive ray (1,2) on a 1-dim cone: value 1 is realizable.
  Fan g{2, {{1, 2}}, {{0}}};
  KlyachkoData d{Q, 1, g, {filt({{1, full(1)}})}};
  CHECK(infer_multiset(d, 0).front().canonical.size() == 2);
  // Non-integral: cone <(1,1),(1,-1)> with values (1,0) needs u=(1/2,1/2).
  Fan h{2, {{1, 1}, {1, -1}}, {{0, 1}}};
  KlyachkoData ni{Q, 1, h, {filt({{1, full(1)}}), filt({{0, full(1)}})}};
  CHECK_THROWS_AS(infer_multiset(ni, 0), MathError);
  // Three generic lines in k^2 on a 3-dim cone.
  Fan c3{3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 2}}};
  KlyachkoData three{Q, 2, c3,
                     {filt({{0, full(2)}, {1, sub(Q, 2, {{1, 0}})}}), filt({{0, full(2)}, {1, sub(Q, 2, {{0, 1}})}}),
                      filt({{0, full(2)}, {1, sub(Q, 2, {{1, 1}})}})}};
  try {
    (void)infer_multiset(three, 0);
    FAIL("expected MathError");
  } catch (const MathError &e) {
    CHECK(std::string(e.what()).find("not a toric vector bundle") != std::string::npos);
    CHECK(e.witness().size() == 3);
  }
  CHECK_THROWS_AS(psi_of(three), MathError);
}

TEST_CASE("psi_of examples") {
  Fan p2{2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}};
  auto psi = psi_of(trivial_data(p2, 2));
  for (const auto &ms : psi.cones) CHECK(ms == make_multiset(p2, ms.front().cone, {{0, 0}, {0, 0}}));

  // Perturbing one jump in a 3-dim cone of a two-cone fan breaks that cone.
  Fan f{3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}, {{0, 1, 2}, {1, 2, 3}}};
  Rng rng(31);
  auto inst = testing::split_instance(f, Q, 2, rng);
  CHECK(psi_of(inst.data) == inst.psi);
  auto broken = inst.data;
  broken.filtrations[0] = filt({{0, full(2)}, {1, sub(Q, 2, {{1, 1}})}});
  broken.filtrations[1] = filt({{0, full(2)}, {1, sub(Q, 2, {{1, 0}})}});
  broken.filtrations[2] = filt({{0, full(2)}, {1, sub(Q, 2, {{0, 1}})}});
  CHECK_THROWS_AS(psi_of(broken), MathError);
}

TEST_CASE("split_cone examples") {
  Fan line{1, {{1}}, {{0}}};
  KlyachkoData r1{Q, 1, line, {filt({{4, full(1)}})}};
  auto s1 = split_cone(r1, ConeRef({0}), make_multiset(line, ConeRef({0}), {{4}}));
  REQUIRE(s1.pieces.size() == 1);
  CHECK(s1.pieces[0].space == full(1));

  Fan f = quadrant();
  KlyachkoData d{Q, 2, f,
                 {filt({{0, full(2)}, {1, sub(Q, 2, {{1, 0}})}}), filt({{0, full(2)}, {1, sub(Q, 2, {{0, 1}})}})}};
  auto s = split_cone(d, ConeRef({0, 1}), make_multiset(f, ConeRef({0, 1}), {{1, 0}, {0, 1}}));
  REQUIRE(s.pieces.size() == 2);
  for (const auto &p : s.pieces) {
    if (p.cls.canonical == IntVec{1, 0}) CHECK(p.space == sub(Q, 2, {{1, 0}}));
    if (p.cls.canonical == IntVec{0, 1}) CHECK(p.space == sub(Q, 2, {{0, 1}}));
  }

  KlyachkoData e{Q, 2, line, {filt({{0, full(2)}, {1, sub(Q, 2, {{1, 1}})}})}};
  auto t = split_cone(e, ConeRef({0}), make_multiset(line, ConeRef({0}), {{0}, {1}}));
  REQUIRE(t.pieces.size() == 2);
  CHECK(t.pieces[0].cls.canonical == IntVec{1});
  CHECK(t.pieces[0].space == sub(Q, 2, {{1, 1}}));
  CHECK(t.pieces[1].cls.canonical == IntVec{0});
  CHECK(t.pieces[1].space == sub(Q, 2, {{1, 0}}));

  auto wrong = make_multiset(line, ConeRef({0}), {{0}, {2}});
  CHECK_THROWS(split_cone(e, ConeRef({0}), wrong));
}

TEST_CASE("is_morphism examples") {
  Fan line{1, {{1}}, {{0}}};
  KlyachkoData d{Q, 2, line, {filt({{0, full(2)}, {1, sub(Q, 2, {{1, 0}})}})}};
  CHECK(is_morphism(Mat::identity(Q, 2), d, d));
  CHECK(is_morphism(Mat(Q, 2, 2), d, d));
  CHECK_FALSE(is_morphism(Mat::from_ints(Q, 2, {{0, 0}, {1, 0}}), d, d));
  CHECK_THROWS_AS(is_morphism(Mat(Q, 3, 2), d, d), InputError);
}

TEST_CASE("property: monotone filtrations and critical grid completeness") {
  Rng rng(32);
  int agree_true = 0, agree_false = 0;
  for (int trial = 0; trial < 120; ++trial) {
    Fan fan = testing::random_fan(rng);
    Field f = testing::random_field(rng);
    auto inst = testing::split_instance(fan, f, 1 + rng.index(3), rng);
    for (const auto &fl : inst.data.filtrations) {
      auto jv = jump_values(fl);
      for (auto i = jv.front() - 1; i <= jv.back() + 1; ++i) CHECK(eval_filtration(fl, i - 1).contains(eval_filtration(fl, i)));
    }
    auto psi = inst.psi;
    if (rng.coin()) {
      auto lifts = inst.characters;
      lifts[rng.index(lifts.size())][rng.index(fan.lattice_rank)] += rng.coin() ? 1 : -1;
      psi = make_psi(fan, std::vector<std::vector<IntVec>>(fan.max_cones.size(), lifts));
    }
    bool grid = check_compatibility(inst.data, psi).ok;
    bool box = true;
    for (std::size_t k = 0; k < fan.max_cones.size() && box; ++k) {
      ConeRef c = max_cone(fan, k);
      auto axes = critical_grid(inst.data, c, psi.cones[k]);
      IntVec lo, hi;
      for (const auto &ax : axes) {
        lo.push_back(ax.front() - 1);
        hi.push_back(ax.back() + 1);
      }
      IntVec iv = lo;
      for (;;) {
        if (intersection_dimension(inst.data, c, iv) != counting_function(fan, psi.cones[k], c, iv)) {
          box = false;
          break;
        }
        std::size_t pos = 0;
        while (pos < iv.size() && ++iv[pos] > hi[pos]) iv[pos] = lo[pos], ++pos;
        if (pos == iv.size()) break;
      }
    }
    CHECK(grid == box);
    (grid ? agree_true : agree_false)++;
  }
  CHECK(agree_true > 0);
  CHECK(agree_false > 0);
}

TEST_CASE("property: construct-then-infer round trip and splitting identities") {
  Rng rng(33);
  for (int trial = 0; trial < 120; ++trial) {
    Fan fan = testing::random_fan(rng);
    Field f = testing::random_field(rng);
    auto inst = testing::split_instance(fan, f, 1 + rng.index(4), rng);
    REQUIRE(validate_filtrations(inst.data).ok);
    CHECK(check_compatibility(inst.data, inst.psi).ok);
    auto inferred = psi_of(inst.data);
    CHECK(inferred == inst.psi);
    for (std::size_t k = 0; k < fan.max_cones.size(); ++k) {
      ConeRef c = max_cone(fan, k);
      auto s = split_cone(inst.data, c, inst.psi.cones[k]);
      Subspace total = Subspace::zero(f, inst.data.rank);
      std::size_t dims = 0;
      for (const auto &p : s.pieces) {
        CHECK(p.space.dim() == p.multiplicity);
        total = sum(total, p.space);
        dims += p.space.dim();
      }
      CHECK(dims == inst.data.rank);
      CHECK(total.dim() == inst.data.rank);
      for (auto ray : c.rays) {
        auto jv = jump_values(inst.data.filtrations[ray]);
        for (auto i = jv.front() - 1; i <= jv.back() + 1; ++i)
          CHECK(filtration_from_splitting(fan, s, ray, i) == eval_filtration(inst.data.filtrations[ray], i));
      }
    }
  }
}

TEST_CASE("property: morphisms compose") {
  Rng rng(34);
  int composed = 0;
  for (int trial = 0; trial < 150; ++trial) {
    Fan fan = testing::random_fan(rng, 2);
    Field f = Field::prime(2);
    std::size_t r = 1 + rng.index(3);
    auto a = testing::split_instance(fan, f, r, rng, 1);
    auto b = testing::split_instance(fan, f, r, rng, 1);
    Mat phi = testing::random_matrix(f, r, r, rng);
    Mat psi = testing::random_matrix(f, r, r, rng);
    if (is_morphism(psi, a.data, b.data) && is_morphism(phi, b.data, b.data)) {
      CHECK(is_morphism(phi * psi, a.data, b.data));
      ++composed;
    }
  }
  CHECK(composed > 10);
}

} // TEST_SUITE
