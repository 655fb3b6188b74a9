#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracle.hpp"
#include "toric/bounds.hpp"
#include "toric/error.hpp"

using namespace toric;

namespace {

using P = LatticePolygon;

constexpr int kCases = 500;

const std::vector<std::uint32_t> kOrders{3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64};

P random_2d(std::mt19937_64& rng, std::int64_t side, int max_points) {
  for (;;) {
    P p = oracle::random_polygon(rng, side, max_points);
    if (p.dim() == 2) return p;
  }
}

std::vector<LatticePoint> sorted_points(const P& p) {
  auto v = p.lattice_points();
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<std::int64_t> edge_lengths(const P& p) {
  std::vector<std::int64_t> out;
  for (const auto& e : p.edges()) out.push_back(e.length);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("counts agree with a bounding box scan and satisfy Pick") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < kCases; ++i) {
    const P p = oracle::random_polygon(rng, 9, 7);
    const auto want = oracle::counts(oracle::hull(p.vertices()));
    const auto got = counts(p);
    REQUIRE(got.volume2 == want.area2);
    REQUIRE(got.total == want.total);
    REQUIRE(got.boundary == want.boundary);
    REQUIRE(got.interior == want.interior);
    REQUIRE(sorted_points(p) == oracle::lattice_points(oracle::hull(p.vertices())));
    if (p.dim() == 2) {
      REQUIRE(got.volume2 == 2 * got.interior + got.boundary - 2);
      REQUIRE(genus(p) == got.volume2 + 2 - got.total);
    }
  }
}

TEST_CASE("Scott inequality and canonical degree") {
  std::mt19937_64 rng(102);
  int seen = 0;
  while (seen < kCases) {
    const P p = random_2d(rng, 12, 8);
    const auto k = counts(p);
    if (k.interior == 0) {
      REQUIRE_THROWS_AS(scott_check(p), Error);
      continue;
    }
    ++seen;
    REQUIRE(scott_check(p));
    REQUIRE(k.total <= 3 * k.interior + 7);
    REQUIRE(canonical_degree(p) == -k.boundary);
  }
}

TEST_CASE("Minkowski sums") {
  std::mt19937_64 rng(103);
  for (int i = 0; i < kCases; ++i) {
    const P a = oracle::random_polygon(rng, 5, 5);
    const P b = oracle::random_polygon(rng, 5, 5);
    const P c = oracle::random_polygon(rng, 3, 4);
    const P ab = minkowski_sum(a, b);
    std::vector<LatticePoint> sums;
    for (const auto& u : a.vertices()) {
      for (const auto& v : b.vertices()) sums.push_back({u.x + v.x, u.y + v.y});
    }
    REQUIRE(ab == P::hull(sums));
    REQUIRE(ab == minkowski_sum(b, a));
    REQUIRE(minkowski_sum(ab, c) == minkowski_sum(a, minkowski_sum(b, c)));
    const std::vector<P> parts{a, b, c};
    REQUIRE(minkowski_sum(std::span<const P>(parts)) == minkowski_sum(ab, c));
    REQUIRE(counts(ab).total >= counts(a).total + counts(b).total - 1);
    REQUIRE(ab.contains(a.translated(b.vertices().front())));
  }
}

TEST_CASE("invariance under unimodular maps") {
  std::mt19937_64 rng(104);
  for (int i = 0; i < kCases; ++i) {
    const P p = oracle::random_polygon(rng, 6, 6);
    const auto m = oracle::random_unimodular(rng, 4);
    REQUIRE(std::abs(m.determinant()) == 1);
    const P image = apply_map(p, m);
    REQUIRE(counts(image) == counts(p));
    REQUIRE(edge_lengths(image) == edge_lengths(p));
    if (p.dim() == 2) REQUIRE(genus(image) == genus(p));
    const auto t = lattice_equivalence(p, image);
    REQUIRE(t);
    REQUIRE(apply_map(p, *t) == image);
  }
}

TEST_CASE("factorizations sum back to the polygon") {
  std::mt19937_64 rng(105);
  for (int i = 0; i < kCases; ++i) {
    const P a = oracle::random_polygon(rng, 2, 4);
    const P b = oracle::random_polygon(rng, 2, 3);
    const P sum = minkowski_sum(a, b).normalized();
    if (sum.dim() == 0) {
      REQUIRE_THROWS_AS(maximal_factorizations(sum), Error);
      continue;
    }
    const auto fs = maximal_factorizations(sum);
    REQUIRE_FALSE(fs.empty());
    for (const auto& f : fs) {
      REQUIRE(minkowski_sum(std::span<const P>(f)).normalized() == sum);
      REQUIRE(f.size() == max_summand_count(sum));
    }
    if (a.dim() > 0 && b.dim() > 0) REQUIRE(max_summand_count(sum) >= 2);
  }
}

TEST_CASE("subpolygon decompositions validate") {
  std::mt19937_64 rng(106);
  for (int i = 0; i < kCases; ++i) {
    const P p = oracle::random_polygon(rng, 3, 6);
    const auto s = best_subpolygon_decomposition(p);
    const auto total = static_cast<std::size_t>(counts(p).total);
    REQUIRE(s.ell <= total);
    if (p.dim() > 0) REQUIRE(s.ell >= 1);
    for (const auto& d : s.decompositions) {
      d.validate();
      REQUIRE(d.ell() == s.ell);
      REQUIRE(p.contains(d.subpolygon.translated(d.translation)));
    }
  }
}

TEST_CASE("field arithmetic against schoolbook tables") {
  std::mt19937_64 rng(107);
  std::uniform_int_distribution<std::size_t> pick(0, kOrders.size() - 1);
  for (int i = 0; i < kCases; ++i) {
    const FieldSpec f = FieldSpec::from_order(kOrders[pick(rng)]);
    const oracle::Field o(f.p(), f.modulus());
    std::uniform_int_distribution<std::uint32_t> el(0, f.q() - 1);
    const auto a = f.element(el(rng)), b = f.element(el(rng)), c = f.element(el(rng));
    REQUIRE(f.add(a, b).value == o.slow_add(a.value, b.value));
    REQUIRE(f.mul(a, b).value == o.slow_mul(a.value, b.value));
    REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
    REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
    REQUIRE(f.add(a, f.neg(a)) == f.zero());
    REQUIRE(f.sub(a, b) == f.add(a, f.neg(b)));
    if (a != f.zero()) {
      REQUIRE(f.mul(a, f.inv(a)) == f.one());
      REQUIRE(f.exp(f.log(a)) == a);
      REQUIRE(f.order(a) == o.order(a.value));
      REQUIRE(f.pow(a, f.q() - 1) == f.one());
    }
    std::uint32_t frob = 1;
    for (std::uint32_t t = 0; t < f.p(); ++t) frob = o.mul(frob, a.value);
    REQUIRE(f.pow(a, f.p()).value == frob);
  }
}

TEST_CASE("Hasse-Weil interval against a direct scan") {
  std::mt19937_64 rng(108);
  std::uniform_int_distribution<std::int64_t> gd(0, 40);
  std::uniform_int_distribution<std::size_t> pick(0, kOrders.size() - 1);
  for (int i = 0; i < kCases; ++i) {
    const std::int64_t g = gd(rng), q = kOrders[pick(rng)];
    std::int64_t lo = 0;
    while (1 + q - lo > 0 && (1 + q - lo) * (1 + q - lo) > 4 * g * g * q) ++lo;
    std::int64_t hi = 1 + q;
    while ((hi + 1 - 1 - q) * (hi + 1 - 1 - q) <= 4 * g * g * q) ++hi;
    REQUIRE(hasse_weil_interval(g, q) == std::pair{lo, hi});
    const double r = 2.0 * static_cast<double>(g) * std::sqrt(static_cast<double>(q));
    REQUIRE(std::abs(static_cast<double>(hi) - std::floor(1.0 + q + r)) <= 1.0);
  }
}

TEST_CASE("dimension equals the number of lattice points") {
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<std::size_t> pick(0, 5);
  for (int i = 0; i < kCases; ++i) {
    const FieldSpec f = FieldSpec::from_order(kOrders[pick(rng)]);
    const P p = oracle::random_polygon(rng, f.q() - 2, 6);
    const ToricCode c = ToricCode::build(p, f);
    REQUIRE(static_cast<std::int64_t>(c.k()) == counts(p).total);
    std::vector<std::vector<FieldElement>> rows(c.k());
    for (std::size_t r = 0; r < c.k(); ++r) {
      for (std::size_t col = 0; col < c.n(); ++col) rows[r].push_back(c.generator(r, col));
    }
    REQUIRE(matrix_rank(f, rows) == c.k());
  }
}

TEST_CASE("torus scaling preserves zero counts") {
  std::mt19937_64 rng(110);
  std::uniform_int_distribution<std::size_t> pick(0, 8);
  for (int i = 0; i < kCases; ++i) {
    const FieldSpec f = FieldSpec::from_order(kOrders[pick(rng)]);
    std::uniform_int_distribution<std::uint32_t> el(0, f.q() - 1), unit(1, f.q() - 1);
    std::uniform_int_distribution<std::int64_t> ex(0, 4);
    SectionPoly s;
    for (int t = 0; t < 4; ++t) s.set_term({ex(rng), ex(rng)}, f.element(el(rng)));
    const auto lambda = f.element(unit(rng)), mu = f.element(unit(rng));
    const auto z = count_torus_zeros(s, f);
    REQUIRE(count_torus_zeros(s.scaled(f, lambda, mu), f) == z);
    std::int64_t direct = 0;
    for (std::int64_t x = 0; x + 1 < f.q(); ++x) {
      for (std::int64_t y = 0; y + 1 < f.q(); ++y) direct += s.evaluate(f, x, y) == f.zero();
    }
    REQUIRE(z == direct);
  }
}

TEST_CASE("exact distance against the reference enumerator") {
  std::mt19937_64 rng(111);
  std::uniform_int_distribution<std::size_t> pick(0, 2);
  for (int i = 0; i < kCases; ++i) {
    const FieldSpec f = FieldSpec::from_order(kOrders[pick(rng)]);
    const P p = oracle::random_polygon(rng, f.q() - 2, 5);
    const oracle::Field o(f.p(), f.modulus());
    const auto got = min_distance_exact(ToricCode::build(p, f));
    REQUIRE(got.exact);
    REQUIRE(got.distance == oracle::min_distance(o, p.vertices()));
  }
}

TEST_CASE("weight distribution is invariant under lattice maps") {
  std::mt19937_64 rng(112);
  std::uniform_int_distribution<std::size_t> pick(0, 2);
  int done = 0;
  while (done < kCases) {
    const FieldSpec f = FieldSpec::from_order(kOrders[pick(rng)]);
    const P p = oracle::random_polygon(rng, f.q() - 2, 4);
    const P image = apply_map(p, oracle::random_unimodular(rng, 3));
    if (!fits_in_box(image, f.q())) continue;
    ++done;
    REQUIRE(weight_distribution(ToricCode::build(p, f)) == weight_distribution(ToricCode::build(image, f)));
  }
}

TEST_CASE("bounds bracket the exact distance") {
  std::mt19937_64 rng(113);
  const std::vector<std::uint32_t> orders{5, 7, 8, 9};
  std::uniform_int_distribution<std::size_t> pick(0, orders.size() - 1);
  int applicable = 0;
  for (int i = 0; i < kCases; ++i) {
    const FieldSpec f = FieldSpec::from_order(orders[pick(rng)]);
    const P p = oracle::random_polygon(rng, 3, 5);
    if (counts(p).total > 7) {
      --i;
      continue;
    }
    const auto exact = min_distance_exact(ToricCode::build(p, f)).distance;
    const auto decs = best_subpolygon_decomposition(p).decompositions;
    const auto up = certified_upper_bound(p, f, decs);
    REQUIRE(up.value >= exact);
    REQUIRE(count_torus_zeros(up.witness, f) == up.zeros);
    if (decs.empty()) continue;
    const auto lo = mainthm_lower_bound(p, f, decs);
    if (lo && lo->applicable) {
      ++applicable;
      REQUIRE(lo->value <= exact);
    }
  }
  CHECK(applicable > 0);
}

TEST_CASE("thread count does not change results") {
  std::mt19937_64 rng(114);
  std::uniform_int_distribution<std::size_t> pick(0, 4);
  for (int i = 0; i < kCases; ++i) {
    const FieldSpec f = FieldSpec::from_order(kOrders[pick(rng)]);
    const P p = oracle::random_polygon(rng, std::min<std::int64_t>(f.q() - 2, 3), 5);
    const ToricCode c = ToricCode::build(p, f);
    MinDistanceOptions many;
    many.threads = 4;
    const auto a = min_distance_exact(c);
    const auto b = min_distance_exact(c, many);
    REQUIRE(a.distance == b.distance);
    REQUIRE(a.witness == b.witness);
    REQUIRE(a.codewords == b.codewords);
  }
}
