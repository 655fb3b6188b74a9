#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "toric/bounds.hpp"
#include "toric/error.hpp"
#include "toric/io.hpp"

using namespace toric;

namespace {

using P = LatticePolygon;

// Every criterion compares integers; the tolerance is exact equality.
constexpr std::int64_t kTolerance = 0;
constexpr int kPropertyCases = 500;
constexpr std::uint64_t kPropertySeed = 20240917;

// Criteria that fail for a documented mathematical reason. They are still run
// and printed as FAIL; the binary exits nonzero if any other criterion fails
// or if one of these starts passing.
const std::set<std::string> kKnownRed{"C5b"};

const P hexagon = P::hull({{1, 0}, {2, 0}, {0, 1}, {1, 2}, {3, 2}, {3, 3}});
const P kite = P::hull({{0, 0}, {1, 1}, {2, 1}, {1, 2}});
const P unit_x = P::horizontal_segment(1);
const P pentagon = minkowski_sum(kite, unit_x);
const P triangle = P::hull({{0, 0}, {1, 4}, {4, 1}});

bool close(std::int64_t a, std::int64_t b) { return (a > b ? a - b : b - a) <= kTolerance; }

MinDistanceResult search(const P& p, const FieldSpec& f, unsigned threads = 1) {
  MinDistanceOptions o;
  o.threads = threads;
  return min_distance_exact(ToricCode::build(p, f), o);
}

std::int64_t exact(const P& p, std::uint32_t q) { return search(p, FieldSpec::from_order(q)).distance; }

std::int64_t decomposition_value(const P& parent, const std::vector<P>& parts, LatticePoint at, const FieldSpec& f) {
  std::vector<P> summands;
  for (const auto& s : parts) summands.push_back(s.normalized());
  const P sub = minkowski_sum(std::span<const P>(summands)).normalized();
  const MinkowskiDecomposition d{parent, sub, {at.x - sub.vertices().front().x, at.y - sub.vertices().front().y},
                                 summands};
  d.validate();
  std::vector<std::int64_t> ds;
  for (const auto& s : d.summands) ds.push_back(component_distance(s, f));
  return upper_bound_from_decomposition(d, f.q(), ds);
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  std::function<Outcome()> run;
  bool long_only = false;
};

// Compares a closed form with the exhaustive distance over a grid; skips
// members that do not fit the field.
struct Grid {
  int checked = 0;
  std::vector<std::string> failures;

  void add(const std::string& label, const std::function<std::int64_t()>& formula, const P& p, std::uint32_t q) {
    std::int64_t want = 0;
    try {
      want = formula();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::FieldTooSmall) return;
      failures.push_back(label + " F" + std::to_string(q) + ": " + e.what());
      return;
    }
    ++checked;
    const auto got = exact(p, q);
    if (!close(want, got)) {
      failures.push_back(label + " F" + std::to_string(q) + ": formula " + std::to_string(want) + ", exact " +
                         std::to_string(got));
    }
  }

  Outcome outcome() const {
    std::string d = std::to_string(checked) + " members checked";
    for (const auto& f : failures) d += "; " + f;
    return {failures.empty() && checked > 0, d};
  }
};

const std::vector<std::uint32_t> kGridOrders{5, 7, 8};

std::vector<Criterion> criteria() {
  std::vector<Criterion> out;

  out.push_back({"C1", "hexagon exact distance 6/20/28/42 over F5/F7/F8/F9", [] {
                   const std::vector<std::pair<std::uint32_t, std::int64_t>> want{{5, 6}, {7, 20}, {8, 28}, {9, 42}};
                   Outcome o{true, ""};
                   for (const auto& [q, d] : want) {
                     const auto got = exact(hexagon, q);
                     o.pass = o.pass && close(got, d);
                     o.detail += "F" + std::to_string(q) + "=" + std::to_string(got) + " ";
                   }
                   return o;
                 }});
  out.push_back({"C1L", "hexagon exact distance 72 over F11 and within 108..110 over F13",
                 [] {
                   const auto d11 = exact(hexagon, 11);
                   const auto d13 = exact(hexagon, 13);
                   return Outcome{close(d11, 72) && d13 >= 108 - kTolerance && d13 <= 110 + kTolerance,
                                  "F11=" + std::to_string(d11) + " F13=" + std::to_string(d13)};
                 },
                 true});
  out.push_back({"C1b", "hexagon lower bound 108 applies over F13", [] {
                   const auto lb = mainthm_lower_bound(hexagon, FieldSpec::from_order(13),
                                                       best_subpolygon_decomposition(hexagon).decompositions);
                   if (!lb) return Outcome{false, "no bound"};
                   return Outcome{lb->applicable && close(lb->value, 108),
                                  std::to_string(lb->value) + (lb->applicable ? " applicable" : " conditional")};
                 }});
  out.push_back({"C2", "pentagon over F8: exact 33, kite + segment 33, two segments 35", [] {
                   const FieldSpec f = FieldSpec::from_order(8);
                   const auto d = exact(pentagon, 8);
                   const auto a = decomposition_value(pentagon, {kite, unit_x}, pentagon.vertices().front(), f);
                   const auto b = decomposition_value(pentagon, {P::hull({{1, 1}, {1, 2}}), unit_x}, {1, 1}, f);
                   return Outcome{close(d, 33) && close(a, 33) && close(b, 35),
                                  std::to_string(d) + "/" + std::to_string(a) + "/" + std::to_string(b)};
                 }});
  out.push_back({"C3", "triangle over F8: k = 11, certified upper bound <= 28", [] {
                   const FieldSpec f = FieldSpec::from_order(8);
                   const auto k = static_cast<std::int64_t>(ToricCode::build(triangle, f).k());
                   const auto c =
                       certified_upper_bound(triangle, f, best_subpolygon_decomposition(triangle).decompositions);
                   return Outcome{close(k, 11) && c.value <= 28 + kTolerance,
                                  "k=" + std::to_string(k) + " certified=" + std::to_string(c.value)};
                 }});
  out.push_back({"C3L", "triangle over F8: exact distance 28",
                 [] {
                   const auto d = exact(triangle, 8);
                   return Outcome{close(d, 28), std::to_string(d)};
                 },
                 true});
  out.push_back({"C4", "x + x^3y^3 + y^2 has 21 torus zeros over F8 under both moduli", [] {
                   Outcome o{true, ""};
                   for (const auto& m : {std::vector<std::uint32_t>{1, 1, 0, 1}, std::vector<std::uint32_t>{1, 0, 1, 1}}) {
                     const FieldSpec f = FieldSpec::make(2, 3, m);
                     SectionPoly s;
                     for (LatticePoint e : {LatticePoint{1, 0}, LatticePoint{3, 3}, LatticePoint{0, 2}}) {
                       s.set_term(e, f.one());
                     }
                     const auto z = count_torus_zeros(s, f);
                     o.pass = o.pass && close(z, 21);
                     o.detail += std::to_string(z) + " ";
                   }
                   return o;
                 }});
  out.push_back({"C5a", "closed forms match exhaustive search: segments, rectangles, Hirzebruch, triangles", [] {
                   Grid g;
                   for (std::uint32_t q : kGridOrders) {
                     for (std::int64_t a = 1; a <= 3; ++a) {
                       g.add("segment " + std::to_string(a), [&] { return d_segment(a, q); },
                             P::horizontal_segment(a), q);
                       g.add("full triangle " + std::to_string(a), [&] { return d_full_triangle(a, q); },
                             P::standard_triangle(a), q);
                       for (std::int64_t b = 0; b <= a; ++b) {
                         for (std::int64_t c = 1; b + c <= a; ++c) {
                           g.add("triangle " + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c),
                                 [&] { return d_triangle(a, b, c, q); }, triangle_polygon(a, b, c), q);
                         }
                       }
                     }
                     for (std::int64_t d = 1; d <= 2; ++d) {
                       for (std::int64_t e = 1; e <= 2; ++e) {
                         g.add("rectangle " + std::to_string(d) + "x" + std::to_string(e),
                               [&] { return d_rectangle(d, e, q); }, P::rectangle(d, e), q);
                       }
                     }
                     for (std::int64_t d = 1; d <= 3; ++d) {
                       for (std::int64_t r = 1; d * r <= 2; ++r) {
                         for (std::int64_t e = 1; d * r + e <= 3; ++e) {
                           g.add("hirzebruch " + std::to_string(d) + "," + std::to_string(e) + "," + std::to_string(r),
                                 [&] { return d_hirzebruch(d, e, r, q); }, hirzebruch_polygon(d, e, r), q);
                         }
                       }
                     }
                   }
                   return g.outcome();
                 }});
  for (const auto& [id, c] : {std::pair{"C5b", Rank3Case::II}, std::pair{"C5c", Rank3Case::I},
                              std::pair{"C5d", Rank3Case::IV}}) {
    const Rank3Case cc = c;
    out.push_back({id, "rank-3 pentagon case " + std::string(to_string(cc)) + " at a=b=c=r=1 matches exhaustive search",
                   [cc] {
                     Grid g;
                     for (std::uint32_t q : kGridOrders) {
                       g.add(std::string("case ") + std::string(to_string(cc)),
                             [&] { return rank3_family_distance(cc, 1, 1, 1, 1, q).value; },
                             rank3_family_polygon(cc, 1, 1, 1, 1), q);
                     }
                     return g.outcome();
                   }});
  }
  out.push_back({"C5e", "rank-3 pentagon case III rejects a=b=c=r=1 (needs b > a)", [] {
                   try {
                     rank3_family_distance(Rank3Case::III, 1, 1, 1, 1, 8);
                   } catch (const Error& e) {
                     return Outcome{e.kind() == ErrorKind::HypothesisViolated, e.what()};
                   }
                   return Outcome{false, "no error"};
                 }});
  out.push_back({"C6", "500 random polygons: applicable lower bound <= exact <= certified upper bound", [] {
                   std::mt19937_64 rng(kPropertySeed);
                   const std::vector<std::uint32_t> orders{5, 7, 8, 9};
                   std::uniform_int_distribution<std::size_t> pick(0, orders.size() - 1);
                   int done = 0, applicable = 0, bad = 0;
                   while (done < kPropertyCases) {
                     const FieldSpec f = FieldSpec::from_order(orders[pick(rng)]);
                     const P p = oracle::random_polygon(rng, 3, 5);
                     if (counts(p).total > 7) continue;
                     ++done;
                     const auto d = search(p, f).distance;
                     const auto decs = best_subpolygon_decomposition(p).decompositions;
                     if (certified_upper_bound(p, f, decs).value < d) ++bad;
                     if (decs.empty()) continue;
                     const auto lo = mainthm_lower_bound(p, f, decs);
                     if (lo && lo->applicable) {
                       ++applicable;
                       if (lo->value > d) ++bad;
                     }
                   }
                   return Outcome{bad == 0 && applicable > 0, std::to_string(done) + " cases, " +
                                                                  std::to_string(applicable) + " lower bounds applied, " +
                                                                  std::to_string(bad) + " violations"};
                 }});
  out.push_back({"C7", "1 and 8 threads give identical searches and reports", [] {
                   bool same = true;
                   for (const auto& [p, q] : {std::pair{hexagon, 8u}, std::pair{pentagon, 8u}, std::pair{hexagon, 9u}}) {
                     const FieldSpec f = FieldSpec::from_order(q);
                     const auto a = search(p, f, 1), b = search(p, f, 8);
                     same = same && a.distance == b.distance && a.witness == b.witness && a.codewords == b.codewords;
                     ReportOptions o1, o8;
                     o1.exact = o8.exact = true;
                     o8.threads = 8;
                     same = same && to_json(full_report(p, f, o1)).dump() == to_json(full_report(p, f, o8)).dump();
                   }
                   return Outcome{same, same ? "identical" : "different"};
                 }});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  bool long_runs = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--long") == 0) {
      long_runs = true;
    } else {
      std::cerr << "usage: toric_acceptance [--long]\n";
      return 2;
    }
  }
  int unexpected = 0;
  for (const auto& c : criteria()) {
    if (c.long_only && !long_runs) {
      std::cout << "SKIP " << c.id << " " << c.title << " (needs --long)\n";
      continue;
    }
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const bool known = kKnownRed.contains(c.id);
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.id << " " << c.title << " [" << o.detail << "]"
              << (known ? (o.pass ? " (listed as known red but passed)" : " (known red)") : "") << "\n";
    if (o.pass == known) ++unexpected;
  }
  std::cout << (unexpected ? "acceptance: unexpected results\n" : "acceptance: as expected\n");
  return unexpected ? 1 : 0;
}
