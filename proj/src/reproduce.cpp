#include <functional>

#include "toric/cli.hpp"
#include "toric/error.hpp"

namespace toric::cli {

namespace {

LatticePolygon hexagon() { return LatticePolygon::hull({{1, 0}, {2, 0}, {0, 1}, {1, 2}, {3, 2}, {3, 3}}); }
LatticePolygon kite() { return LatticePolygon::hull({{0, 0}, {1, 1}, {2, 1}, {1, 2}}); }
LatticePolygon unit_x() { return LatticePolygon::horizontal_segment(1); }
LatticePolygon pentagon() { return minkowski_sum(kite(), unit_x()); }
LatticePolygon triangle() { return LatticePolygon::hull({{0, 0}, {1, 4}, {4, 1}}); }

std::int64_t exact(const LatticePolygon& p, std::uint32_t q, unsigned threads) {
  MinDistanceOptions o;
  o.threads = threads;
  return min_distance_exact(ToricCode::build(p, FieldSpec::from_order(q)), o).distance;
}

ReproduceRow equal_row(std::string source, std::string claim, std::int64_t expected, std::int64_t computed) {
  return {std::move(source), std::move(claim), std::to_string(expected), std::to_string(computed), expected == computed,
          false};
}

// x(x - a)(y - b)(y - c) on the 1x2 rectangle inside the hexagon
std::int64_t split_section_weight(std::uint32_t q) {
  const FieldSpec f = FieldSpec::from_order(q);
  const ToricCode c = ToricCode::build(hexagon(), f);
  auto linear = [&](LatticePoint v, FieldElement root) {
    SectionPoly s = SectionPoly::monomial(v, f.one());
    s.add_term(f, {0, 0}, f.neg(root));
    return s;
  };
  SectionPoly s = SectionPoly::monomial({1, 0}, f.one());
  s = s.multiply(f, linear({1, 0}, f.exp(1)));
  s = s.multiply(f, linear({0, 1}, f.exp(1)));
  s = s.multiply(f, linear({0, 1}, f.exp(2)));
  return weight_of_section(s, c);
}

MinkowskiDecomposition decomposition(const LatticePolygon& parent, const std::vector<LatticePolygon>& parts,
                                     LatticePoint at) {
  std::vector<LatticePolygon> summands;
  for (const auto& s : parts) summands.push_back(s.normalized());
  const LatticePolygon sub = minkowski_sum(std::span<const LatticePolygon>(summands)).normalized();
  MinkowskiDecomposition d{parent, sub, {at.x - sub.vertices().front().x, at.y - sub.vertices().front().y}, summands};
  d.validate();
  return d;
}

std::int64_t decomposition_value(const MinkowskiDecomposition& d, const FieldSpec& f) {
  std::vector<std::int64_t> ds;
  for (const auto& s : d.summands) ds.push_back(component_distance(s, f));
  return upper_bound_from_decomposition(d, f.q(), ds);
}

}  // namespace

std::vector<ReproduceRow> reproduce_rows(bool long_tests, unsigned threads) {
  std::vector<ReproduceRow> rows;
  auto guarded = [&](const std::string& source, const std::string& claim, const std::string& expected,
                     const std::function<ReproduceRow()>& fn) {
    try {
      rows.push_back(fn());
    } catch (const Error& e) {
      rows.push_back({source, claim, expected, std::string("error: ") + e.what(), false, false});
    }
  };

  // hexagon conv{(1,0),(2,0),(0,1),(1,2),(3,2),(3,3)}
  const std::vector<std::pair<std::uint32_t, std::int64_t>> hex_d{{5, 6}, {7, 20}, {8, 28}, {9, 42}, {11, 72}};
  for (const auto& [q, d] : hex_d) {
    if (q == 11 && !long_tests) continue;
    const std::string src = "hexagon/F" + std::to_string(q) + "/d";
    guarded(src, "exact minimum distance", std::to_string(d), [&, q = q, d = d] {
      auto row = equal_row(src, "exact minimum distance", d, exact(hexagon(), q, threads));
      row.long_only = q == 11;
      return row;
    });
  }
  guarded("hexagon/k", "dimension equals lattice point count", "9",
          [&] { return equal_row("hexagon/k", "dimension equals lattice point count", 9, counts(hexagon()).total); });
  for (const auto& [q, d] : hex_d) {
    if (q == 11) continue;
    const std::int64_t bound = (q - 1) * (q - 1) - 3 * (q - 1) + 2;
    const std::string src = "hexagon/F" + std::to_string(q) + "/split-section";
    guarded(src, "weight of x(x-a)(y-b)(y-c) is (q-1)^2-3(q-1)+2", std::to_string(bound), [&, q = q] {
      return equal_row(src, "weight of x(x-a)(y-b)(y-c) is (q-1)^2-3(q-1)+2", bound, split_section_weight(q));
    });
  }
  guarded("hexagon/F8/certified", "certified upper bound", "<= 30", [&] {
    const LatticePolygon p = hexagon();
    const FieldSpec f = FieldSpec::from_order(8);
    const auto decs = best_subpolygon_decomposition(p).decompositions;
    const auto c = certified_upper_bound(p, f, decs);
    return ReproduceRow{"hexagon/F8/certified", "certified upper bound", "<= 30", std::to_string(c.value),
                        c.value <= 30, false};
  });
  for (const auto& modulus : {std::vector<std::uint32_t>{1, 1, 0, 1}, std::vector<std::uint32_t>{1, 0, 1, 1}}) {
    const std::string src = std::string("hexagon/F8/zero-count/modulus=") + (modulus[1] ? "1+u+u^3" : "1+u^2+u^3");
    guarded(src, "x + x^3y^3 + y^2 vanishes at 3*7 torus points", "21", [&] {
      const FieldSpec f = FieldSpec::make(2, 3, modulus);
      SectionPoly s;
      s.set_term({1, 0}, f.one());
      s.set_term({3, 3}, f.one());
      s.set_term({0, 2}, f.one());
      return equal_row(src, "x + x^3y^3 + y^2 vanishes at 3*7 torus points", 21, count_torus_zeros(s, f));
    });
  }
  guarded("hexagon/F8/min-weight-words", "number of weight-28 codewords", "49", [&] {
    const auto dist = weight_distribution(ToricCode::build(hexagon(), FieldSpec::from_order(8)), threads,
                                          std::uint64_t{1} << 28);
    const auto it = dist.find(28);
    return equal_row("hexagon/F8/min-weight-words", "number of weight-28 codewords", 49,
                     it == dist.end() ? 0 : static_cast<std::int64_t>(it->second));
  });
  guarded("hexagon/F13/lower", "lower bound (q-1)^2-3(q-1) applies for q > #P + 3", "108 applicable", [&] {
    const LatticePolygon p = hexagon();
    const auto decs = best_subpolygon_decomposition(p).decompositions;
    const auto lb = mainthm_lower_bound(p, FieldSpec::from_order(13), decs);
    const std::string computed =
        lb ? std::to_string(lb->value) + (lb->applicable ? " applicable" : " conditional") : "none";
    return ReproduceRow{"hexagon/F13/lower", "lower bound (q-1)^2-3(q-1) applies for q > #P + 3", "108 applicable",
                        computed, computed == "108 applicable", false};
  });
  if (long_tests) {
    guarded("hexagon/F13/d", "exact distance within [108, 110]", "108..110", [&] {
      const auto d = exact(hexagon(), 13, threads);
      return ReproduceRow{"hexagon/F13/d", "exact distance within [108, 110]", "108..110", std::to_string(d),
                          d >= 108 && d <= 110, true};
    });
  }

  // pentagon = kite + horizontal unit segment
  guarded("pentagon/F8/d", "exact minimum distance", "33",
          [&] { return equal_row("pentagon/F8/d", "exact minimum distance", 33, exact(pentagon(), 8, threads)); });
  guarded("pentagon/F8/decomposition-kite", "sum of summand distances minus (q-1)^2, kite + segment", "33", [&] {
    const auto d = decomposition(pentagon(), {kite(), unit_x()}, pentagon().vertices().front());
    return equal_row("pentagon/F8/decomposition-kite", "sum of summand distances minus (q-1)^2, kite + segment", 33,
                     decomposition_value(d, FieldSpec::from_order(8)));
  });
  guarded("pentagon/F8/decomposition-segments", "sum of summand distances minus (q-1)^2, two segments", "35", [&] {
    const auto d = decomposition(pentagon(), {LatticePolygon::hull({{1, 1}, {1, 2}}), unit_x()}, {1, 1});
    return equal_row("pentagon/F8/decomposition-segments", "sum of summand distances minus (q-1)^2, two segments",
                     35, decomposition_value(d, FieldSpec::from_order(8)));
  });

  // triangle conv{(0,0),(1,4),(4,1)}
  guarded("triangle/F8/k", "dimension", "11", [&] {
    return equal_row("triangle/F8/k", "dimension", 11,
                     static_cast<std::int64_t>(ToricCode::build(triangle(), FieldSpec::from_order(8)).k()));
  });
  guarded("triangle/F8/certified", "certified upper bound via the embedded full triangle of size 3", "<= 28", [&] {
    const LatticePolygon p = triangle();
    const auto decs = best_subpolygon_decomposition(p).decompositions;
    const auto c = certified_upper_bound(p, FieldSpec::from_order(8), decs);
    return ReproduceRow{"triangle/F8/certified", "certified upper bound via the embedded full triangle of size 3",
                        "<= 28", std::to_string(c.value), c.value <= 28, false};
  });
  if (long_tests) {
    guarded("triangle/F8/d", "exact minimum distance", "28", [&] {
      auto row = equal_row("triangle/F8/d", "exact minimum distance", 28, exact(triangle(), 8, threads));
      row.long_only = true;
      return row;
    });
  }
  return rows;
}

}  // namespace toric::cli
