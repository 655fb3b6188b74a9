#include <doctest.h>

#include "oracle.hpp"
#include "toric/error.hpp"
#include "toric/polygon.hpp"

using namespace toric;

namespace {

using P = LatticePolygon;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvariantViolation;
}

const P hexagon = P::hull({{1, 0}, {2, 0}, {0, 1}, {1, 2}, {3, 2}, {3, 3}});
const P triangle11 = P::hull({{0, 0}, {1, 4}, {4, 1}});

}  // namespace

TEST_CASE("hull dimensions and canonical form") {
  CHECK(triangle11.dim() == 2);
  const P seg = P::hull({{0, 0}, {2, 0}, {1, 0}});
  CHECK(seg.dim() == 1);
  CHECK(seg.vertices() == std::vector<LatticePoint>{{0, 0}, {2, 0}});
  CHECK(P::hull({{3, 3}}).dim() == 0);
  CHECK(P::hull({{1, 1}, {0, 0}, {1, 0}, {0, 1}, {1, 1}}) == P::rectangle(1, 1));
  CHECK(P::rectangle(1, 1).vertices() == std::vector<LatticePoint>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(kind_of([] { P::hull(std::span<const LatticePoint>{}); }) == ErrorKind::EmptyInput);
  CHECK(kind_of([] { P::hull({{kCoordinateLimit + 1, 0}}); }) == ErrorKind::CoordinateOverflow);
}

TEST_CASE("lattice point counts") {
  CHECK(counts(triangle11) == PolygonCounts{15, 11, 5, 6});
  CHECK(counts(hexagon).total == 9);
  CHECK(counts(P::rectangle(1, 1)) == PolygonCounts{2, 4, 4, 0});
  for (const P& p : {triangle11, hexagon, P::standard_triangle(3), P::rectangle(2, 3)}) {
    const auto o = oracle::counts(oracle::hull(p.vertices()));
    const auto c = counts(p);
    CHECK(c.volume2 == o.area2);
    CHECK(c.total == o.total);
    CHECK(c.boundary == o.boundary);
    CHECK(c.interior == o.interior);
    CHECK(p.lattice_points() == oracle::lattice_points(p.vertices()));
  }
}

TEST_CASE("Minkowski sums") {
  const P q = P::hull({{0, 0}, {1, 2}, {2, 1}});
  CHECK(minkowski_sum(P::rectangle(1, 1), q) ==
        P::hull({{0, 0}, {1, 0}, {3, 1}, {3, 2}, {2, 3}, {1, 3}, {0, 1}}));
  CHECK(minkowski_sum(hexagon, P::point({0, 0})) == hexagon);
  const P kite = P::hull({{0, 0}, {1, 1}, {2, 1}, {1, 2}});
  const P sum = minkowski_sum(kite, P::horizontal_segment(1));
  CHECK(sum == P::hull({{0, 0}, {1, 0}, {3, 1}, {2, 2}, {1, 2}}));
  CHECK(counts(sum).total == 7);
}

TEST_CASE("box fitting") {
  CHECK(fits_in_box(hexagon, 5).has_value());
  CHECK_FALSE(fits_in_box(hexagon, 4).has_value());
  CHECK_FALSE(fits_in_box(P::horizontal_segment(4), 5).has_value());
  const auto t = fits_in_box(P::hull({{-7, 3}, {-2, 9}}), 1000);
  REQUIRE(t.has_value());
  CHECK(*t == LatticePoint{7, -3});
}

TEST_CASE("unimodular maps") {
  const UnimodularAffineMap shear{{1, 1, 0, 1}, {0, 0}};
  CHECK(apply_map(P::standard_triangle(3), shear) == P::hull({{0, 0}, {3, 0}, {3, 3}}));
  CHECK(apply_map(hexagon, UnimodularAffineMap::identity()) == hexagon);
  // conv{(0,0),(d,0),(d,rd)} keeps its counts under a shear
  const P t = P::hull({{0, 0}, {2, 0}, {2, 6}});
  const P image = apply_map(t, UnimodularAffineMap{{1, 0, -3, 1}, {0, 0}});
  CHECK(counts(image) == counts(t));
  CHECK(image == P::hull({{0, 0}, {2, -6}, {2, 0}}));
}

TEST_CASE("lattice equivalence") {
  const UnimodularAffineMap m{{2, 1, 1, 1}, {5, -2}};
  const P image = apply_map(triangle11, m);
  const auto found = lattice_equivalence(triangle11, image);
  REQUIRE(found.has_value());
  CHECK(apply_map(triangle11, *found) == image);
  CHECK(std::abs(found->determinant()) == 1);
  CHECK_FALSE(lattice_equivalence(P::standard_triangle(2), P::rectangle(1, 1)).has_value());
  CHECK_FALSE(lattice_equivalence(P::hull({{0, 0}, {2, 0}, {0, 1}}), P::hull({{0, 0}, {1, 0}, {0, 2}, {1, 2}}))
                  .has_value());
  CHECK(lattice_equivalence(P::hull({{0, 0}, {2, 0}, {0, 1}}), P::hull({{0, 0}, {1, 0}, {0, 2}})).has_value());
}

TEST_CASE("genus, Scott and canonical degree") {
  CHECK(genus(P::hull({{0, 0}, {1, 1}, {2, 1}, {1, 2}})) == 1);
  CHECK(genus(P::standard_triangle(2)) == 0);
  CHECK(genus(triangle11) == 6);
  CHECK(kind_of([] { genus(P::horizontal_segment(3)); }) == ErrorKind::DegeneratePolygon);
  CHECK(scott_check(hexagon));
  CHECK(counts(P::standard_triangle(3)).total == 10);
  CHECK(counts(P::standard_triangle(3)).interior == 1);
  CHECK(scott_check(P::standard_triangle(3)));
  CHECK(kind_of([] { scott_check(P::rectangle(1, 1)); }) == ErrorKind::NotApplicable);
  // D.K = 2I - 2 - 2v
  CHECK(canonical_degree(P::standard_triangle(1)) == -3);
  CHECK(canonical_degree(triangle11) == 2 * 6 - 2 - 15);
}

TEST_CASE("edges and edge multiset") {
  const auto e = P::rectangle(2, 3).edges();
  REQUIRE(e.size() == 4);
  CHECK(e[0] == LatticeEdge{{1, 0}, 2});
  CHECK(e[1] == LatticeEdge{{0, 1}, 3});
  CHECK(P::horizontal_segment(3).edges().size() == 2);
  const auto m = edge_multiset(minkowski_sum(P::rectangle(1, 1), P::rectangle(2, 1)));
  REQUIRE(m.size() == 4);
  CHECK(m[0] == LatticeEdge{{1, 0}, 3});
  CHECK(angle_less({1, 0}, {0, 1}));
  CHECK(angle_less({-1, 1}, {0, -1}));
  CHECK_FALSE(angle_less({0, -1}, {1, 0}));
}
