#include <doctest.h>

#include <algorithm>

#include "toric/bounds.hpp"
#include "toric/decomp.hpp"
#include "toric/error.hpp"

using namespace toric;

namespace {

using P = LatticePolygon;
using Parts = std::vector<P>;

Parts sorted(Parts v) {
  for (auto& p : v) p = p.normalized();
  std::sort(v.begin(), v.end());
  return v;
}

bool contains(const std::vector<Parts>& all, const Parts& want) {
  const Parts w = sorted(want);
  return std::any_of(all.begin(), all.end(), [&](const Parts& v) { return sorted(v) == w; });
}

const P hexagon = P::hull({{1, 0}, {2, 0}, {0, 1}, {1, 2}, {3, 2}, {3, 3}});
const P kite = P::hull({{0, 0}, {1, 1}, {2, 1}, {1, 2}});
const P unit_x = P::horizontal_segment(1);
const P unit_y = P::hull({{0, 0}, {0, 1}});

}  // namespace

TEST_CASE("segments factor into unit segments") {
  const auto f = factor_polygon(P::horizontal_segment(3), 5);
  REQUIRE_FALSE(f.empty());
  CHECK(f.front() == Parts{unit_x, unit_x, unit_x});
  CHECK(max_summand_count(P::horizontal_segment(3)) == 3);
  CHECK(max_summand_count(P::point({2, 2})) == 0);
  CHECK_THROWS_AS(factor_polygon(P::point({0, 0}), 2), Error);
}

TEST_CASE("slanted rectangle is a triangle plus a segment") {
  const P h = hirzebruch_polygon(1, 1, 1);
  const auto f = maximal_factorizations(h);
  CHECK(max_summand_count(h) == 2);
  CHECK(contains(f, {unit_y, P::hull({{0, 0}, {1, 0}, {1, 1}})}));
  const P h2 = hirzebruch_polygon(2, 1, 1);
  CHECK(contains(factor_polygon(h2, 3), {unit_y, P::hull({{0, 0}, {2, 0}, {2, 2}})}));
}

TEST_CASE("family I pentagon splits into two triangles and a segment") {
  const P p = rank3_family_polygon(Rank3Case::I, 1, 1, 1, 1);
  const P t = P::hull({{0, 0}, {1, 0}, {0, 1}});
  const P tb = P::hull({{0, 0}, {2, 0}, {1, 1}});
  CHECK(minkowski_sum(std::vector<P>{t, tb, unit_x}) == p);
  CHECK(contains(factor_polygon(p, 3), {t, tb, unit_x}));
  for (const auto& parts : factor_polygon(p, 4)) CHECK(minkowski_sum(std::span<const P>(parts)).normalized() == p.normalized());
}

TEST_CASE("hexagon has three-summand subpolygons") {
  const auto s = best_subpolygon_decomposition(hexagon);
  CHECK(s.exhaustive);
  CHECK(s.ell == 3);
  bool rectangle = false, parallelogram = false;
  for (const auto& d : s.decompositions) {
    d.validate();
    if (d.subpolygon == P::rectangle(1, 2) && d.translation == LatticePoint{1, 0}) {
      rectangle = sorted(d.summands) == sorted({unit_y, unit_y, unit_x});
    }
    if (d.subpolygon.translated(d.translation) == P::hull({{1, 0}, {1, 1}, {3, 2}, {3, 3}})) parallelogram = true;
  }
  CHECK(rectangle);
  CHECK(parallelogram);
}

TEST_CASE("pentagon keeps both two-summand decompositions") {
  const P p = minkowski_sum(kite, unit_x);
  const auto s = best_subpolygon_decomposition(p);
  CHECK(s.ell == 2);
  bool whole = false, square = false;
  for (const auto& d : s.decompositions) {
    const P placed = d.subpolygon.translated(d.translation);
    if (placed == p && sorted(d.summands) == sorted({kite, unit_x})) whole = true;
    if (placed == P::hull({{1, 1}, {2, 1}, {2, 2}, {1, 2}}) && sorted(d.summands) == sorted({unit_x, unit_y})) {
      square = true;
    }
  }
  CHECK(whole);
  CHECK(square);
}

TEST_CASE("small cases") {
  const auto s = best_subpolygon_decomposition(P::standard_triangle(1));
  CHECK(s.ell == 1);
  for (const auto& d : s.decompositions) CHECK(d.ell() == 1);
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) CHECK(best_subpolygon_decomposition(P::rectangle(a, b)).ell == std::size_t(a + b));
  }
}

TEST_CASE("validation rejects broken decompositions") {
  const P p = P::rectangle(1, 1);
  MinkowskiDecomposition bad{p, p, {0, 0}, {unit_x, unit_x}};
  CHECK_THROWS_AS(bad.validate(), Error);
  MinkowskiDecomposition outside{p, p, {1, 0}, {unit_x, unit_y}};
  CHECK_THROWS_AS(outside.validate(), Error);
  MinkowskiDecomposition point{p, unit_x, {0, 0}, {unit_x, P::point({0, 0})}};
  CHECK_THROWS_AS(point.validate(), Error);
}

TEST_CASE("greedy fallback") {
  const auto g = greedy_subpolygon_decomposition(P::hull({{0, 0}, {1, 4}, {4, 1}}));
  CHECK_FALSE(g.exhaustive);
  CHECK(g.ell == 3);
  for (const auto& d : g.decompositions) d.validate();
  const P thin = P::hull({{0, 0}, {10, 0}, {0, 1}, {10, 1}});
  CHECK(greedy_subpolygon_decomposition(thin).ell == 11);
  const auto budgeted = best_subpolygon_decomposition(P::rectangle(6, 6), 50);
  CHECK_FALSE(budgeted.exhaustive);
  CHECK(budgeted.ell == 12);
}
