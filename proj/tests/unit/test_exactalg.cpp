#include "doctest.h"
#include "test_support.hpp"

#include "torvec/checked.hpp"
#include "torvec/report.hpp"

using namespace torvec;
using torvec::testing::Rng;
using torvec::testing::sub;

TEST_SUITE("exactalg") {

TEST_CASE("field construction and arithmetic") {
  Field q = Field::rationals();
  CHECK(q.name() == "Q");
  CHECK(q.parse("6/-4") == Scalar{-3, 2});
  CHECK(q.format(q.add(q.parse("1/2"), q.parse("1/3"))) == "5/6");
  CHECK(q.format(q.mul(q.parse("-2/3"), q.parse("3/4"))) == "-1/2");
  CHECK(q.inv(q.from_int(-4)) == Scalar{-1, 4});
  CHECK_THROWS(q.inv(q.zero()));
  CHECK_THROWS_AS(q.parse("1/0"), InputError);
  CHECK_THROWS_AS(q.parse("x"), InputError);

  Field f5 = Field::prime(5);
  CHECK(f5.name() == "F_5");
  CHECK(f5.from_int(-1) == Scalar{4, 1});
  CHECK(f5.mul(f5.from_int(2), f5.inv(f5.from_int(2))) == f5.one());
  CHECK(f5.parse("1/2") == f5.from_int(3));
  CHECK_THROWS_AS(Field::prime(4), InputError);
  CHECK_THROWS_AS(Field::prime(1), InputError);
}

TEST_CASE("rational overflow is reported, not wrapped") {
  Field q = Field::rationals();
  Scalar big{INT64_MAX / 2 + 1, 1};
  CHECK_THROWS_AS((void)q.add(big, big), std::overflow_error);
  CHECK_THROWS_AS(checked::mul(INT64_MAX, 2), std::overflow_error);
  CHECK(checked::floor_div(-7, 2) == -4);
  CHECK(checked::floor_div(7, -2) == -4);
  CHECK(checked::floor_div(6, 3) == 2);
}

TEST_CASE("rref examples") {
  Field q = Field::rationals();
  auto id = rref(Mat::identity(q, 2));
  CHECK(id.rank == 2);
  CHECK(id.form == Mat::identity(q, 2));
  auto z = rref(Mat(q, 2, 2));
  CHECK(z.rank == 0);
  CHECK(z.form.rows() == 0);
  auto r = rref(Mat::from_ints(q, 2, {{1, 2}, {2, 4}}));
  CHECK(r.rank == 1);
  CHECK(r.form == Mat::from_ints(q, 2, {{1, 2}}));
  CHECK(r.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("intersection examples") {
  for (Field f : {Field::rationals(), Field::prime(2), Field::prime(3)}) {
    auto v = sub(f, 3, {{1, 1, 0}, {0, 1, 1}});
    CHECK(intersect(v, v) == v);
    CHECK(intersect(sub(f, 2, {{1, 0}}), sub(f, 2, {{0, 1}})).dim() == 0);
    CHECK(intersect(sub(f, 3, {{1, 0, 0}, {0, 1, 0}}), sub(f, 3, {{0, 1, 0}, {0, 0, 1}})) == sub(f, 3, {{0, 1, 0}}));
  }
}

TEST_CASE("sum examples") {
  Field q = Field::rationals();
  auto v = sub(q, 3, {{1, 2, 3}});
  CHECK(sum(Subspace::zero(q, 3), v) == v);
  CHECK(sum(sub(q, 3, {{1, 0, 0}}), sub(q, 3, {{0, 1, 0}})) == sub(q, 3, {{1, 0, 0}, {0, 1, 0}}));
  CHECK(sum(v, v) == v);
}

TEST_CASE("complement_within examples") {
  Field q = Field::rationals();
  auto full = Subspace::full(q, 2);
  CHECK(complement_within(Subspace::zero(q, 2), full) == full);
  CHECK(complement_within(full, full).dim() == 0);
  CHECK(complement_within(sub(q, 2, {{1, 0}}), full) == sub(q, 2, {{0, 1}}));
  CHECK_THROWS_AS(complement_within(sub(q, 2, {{1, 0}}), sub(q, 2, {{0, 1}})), MathError);
}

TEST_CASE("integer kernel examples") {
  CHECK(integer_kernel(IntMat::from_rows(2, {{1, 0}})).row_vectors() == std::vector<IntVec>{{0, 1}});
  CHECK(integer_kernel(IntMat::identity(2)).rows() == 0);
  CHECK(integer_kernel(IntMat::from_rows(2, {{2, 4}})).row_vectors() == std::vector<IntVec>{{2, -1}});
}

TEST_CASE("primitive examples") {
  CHECK(primitive({2, 4}) == IntVec{1, 2});
  CHECK(primitive({0, -3}) == IntVec{0, -1});
  CHECK(primitive({1, 1, 1}) == IntVec{1, 1, 1});
}

TEST_CASE("hermite normal form conventions") {
  IntMat a = IntMat::from_rows(3, {{2, 4, 6}, {-1, 0, 3}, {1, 4, 9}});
  auto h = hermite_decompose(a);
  CHECK(h.rank == 2);
  // transform * a == hnf
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < 3; ++k) s += h.transform(i, k) * a(k, j);
      CHECK(s == h.hnf(i, j));
    }
  for (std::size_t t = 0; t < h.rank; ++t) {
    CHECK(h.hnf(t, h.pivots[t]) > 0);
    for (std::size_t s = 0; s < t; ++s) {
      CHECK(h.hnf(s, h.pivots[t]) >= 0);
      CHECK(h.hnf(s, h.pivots[t]) < h.hnf(t, h.pivots[t]));
    }
  }
  CHECK(solve_integer(IntMat::from_rows(2, {{1, 0}, {0, 2}}), {3, 4}) == IntVec{3, 2});
  CHECK_FALSE(solve_integer(IntMat::from_rows(2, {{1, 0}, {0, 2}}), {3, 3}).has_value());
}

TEST_CASE("property: rref is a projection preserving the row space") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Field f = testing::random_field(rng);
    Mat m = testing::random_matrix(f, 1 + rng.index(4), 1 + rng.index(4), rng);
    auto r1 = rref(m);
    CHECK(rref(r1.form).form == r1.form);
    auto a = Subspace::span(m);
    auto b = Subspace::span(r1.form);
    CHECK(a.contains(b));
    CHECK(b.contains(a));
    for (std::size_t i = 0; i < m.rows(); ++i) CHECK(a.contains(m.row(i)));
  }
}

TEST_CASE("property: canonical RREF basis invariants") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    Field f = testing::random_field(rng);
    std::size_t n = 1 + rng.index(4);
    auto s = Subspace::span(testing::random_matrix(f, rng.index(5), n, rng));
    const auto &piv = s.pivots();
    for (std::size_t i = 0; i < s.dim(); ++i) {
      if (i > 0) CHECK(piv[i] > piv[i - 1]);
      CHECK(s.basis()(i, piv[i]) == f.one());
      for (std::size_t k = 0; k < s.dim(); ++k)
        if (k != i) CHECK(s.basis()(k, piv[i]) == f.zero());
    }
    // Same subspace from a different generating set gives identical bases.
    auto g = testing::random_invertible(f, std::max<std::size_t>(s.dim(), 1), rng);
    if (s.dim() > 0) {
      Mat other = g * s.basis();
      CHECK(Subspace::span(other) == s);
    }
  }
}

TEST_CASE("property: dimension formula for intersection and sum") {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    Field f = testing::random_field(rng);
    std::size_t n = 1 + rng.index(5);
    auto a = Subspace::span(testing::random_matrix(f, rng.index(n + 1), n, rng));
    auto b = Subspace::span(testing::random_matrix(f, rng.index(n + 1), n, rng));
    auto i = intersect(a, b);
    auto s = sum(a, b);
    CHECK(i.dim() + s.dim() == a.dim() + b.dim());
    CHECK(a.contains(i));
    CHECK(b.contains(i));
    CHECK(s.contains(a));
    CHECK(s.contains(b));
  }
}

TEST_CASE("property: complement_within is a deterministic complement") {
  Rng rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    Field f = testing::random_field(rng);
    std::size_t n = 1 + rng.index(5);
    auto u = Subspace::span(testing::random_matrix(f, rng.index(n + 1), n, rng));
    Mat coeff = testing::random_matrix(f, rng.index(u.dim() + 1), std::max<std::size_t>(u.dim(), 1), rng);
    auto w = u.dim() == 0 ? Subspace::zero(f, n) : Subspace::span(coeff * u.basis());
    auto c = complement_within(w, u);
    CHECK(w.dim() + c.dim() == u.dim());
    CHECK(intersect(w, c).dim() == 0);
    CHECK(u.contains(c));
    CHECK(complement_within(w, u).basis() == c.basis());
  }
}

TEST_CASE("property: integer kernel is independent, annihilated, and of complementary rank") {
  Rng rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t rows = 1 + rng.index(3), cols = 1 + rng.index(4);
    std::vector<IntVec> a(rows, IntVec(cols));
    for (auto &r : a)
      for (auto &x : r) x = rng.uniform(-3, 3);
    IntMat am = IntMat::from_rows(cols, a);
    IntMat k = integer_kernel(am);
    for (const auto &kv : k.row_vectors())
      for (const auto &r : a) CHECK(dot(r, kv) == 0);
    std::size_t rank_a = hermite_decompose(am).rank;
    CHECK(rank_a + k.rows() == cols);
    if (k.rows() > 0) CHECK(hermite_decompose(k).rank == k.rows());
    // Saturation: any integral kernel vector is an integral combination.
    IntVec probe(cols);
    for (auto &x : probe) x = rng.uniform(-2, 2);
    bool in_kernel = std::all_of(a.begin(), a.end(), [&](const IntVec &r) { return dot(r, probe) == 0; });
    if (in_kernel && k.rows() > 0) CHECK(solve_integer(k.transpose(), probe).has_value());
  }
}

TEST_CASE("subspace image") {
  Field q = Field::rationals();
  Mat swap = Mat::from_ints(q, 2, {{0, 1}, {1, 0}});
  CHECK(sub(q, 2, {{1, 0}}).image(swap) == sub(q, 2, {{0, 1}}));
  CHECK(sub(q, 2, {{1, 1}}).image(Mat(q, 2, 2)).dim() == 0);
}

} // TEST_SUITE
