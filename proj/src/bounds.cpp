#include "toric/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "toric/error.hpp"

namespace toric {

namespace {

std::int64_t sq(std::int64_t v) { return v * v; }

void require_field(std::int64_t q) {
  if (q < 2) throw Error(ErrorKind::FieldTooSmall, "q must be at least 2");
}

void require_fit(const LatticePolygon& p, std::int64_t q, const char* what) {
  require_field(q);
  if (!fits_in_box(p, q)) {
    throw Error(ErrorKind::FieldTooSmall, std::string(what) + " does not fit [0, q-2]^2 for q = " + std::to_string(q));
  }
}

void require_nonnegative(std::initializer_list<std::int64_t> values) {
  for (auto v : values) {
    if (v < 0) throw Error(ErrorKind::HypothesisViolated, "parameters must be nonnegative");
  }
}

// floor(sqrt(v)) for v >= 0
std::int64_t isqrt(std::int64_t v) {
  std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

std::size_t torus_index(std::int64_t i, std::int64_t j, std::int64_t order) {
  return static_cast<std::size_t>(i * order + j);
}

std::vector<char> zero_mask(const SectionPoly& s, const FieldSpec& f) {
  const std::int64_t order = f.q() - 1;
  std::vector<char> mask(static_cast<std::size_t>(order * order), 0);
  for (std::int64_t i = 0; i < order; ++i) {
    for (std::int64_t j = 0; j < order; ++j) mask[torus_index(i, j, order)] = s.evaluate(f, i, j) == f.zero();
  }
  return mask;
}

// (x^v - alpha) as a Laurent binomial
SectionPoly binomial(const FieldSpec& f, LatticePoint v, FieldElement alpha) {
  SectionPoly s = SectionPoly::monomial(v, f.one());
  s.add_term(f, {0, 0}, f.neg(alpha));
  return s;
}

LatticePoint primitive(LatticePoint d) {
  const std::int64_t g = std::gcd(d.x, d.y);
  d = {d.x / g, d.y / g};
  if (d.x < 0 || (d.x == 0 && d.y < 0)) d = {-d.x, -d.y};
  return d;
}

// Lattice translation placing r inside p, if any.
std::optional<LatticePoint> place(const LatticePolygon& p, const std::vector<LatticePoint>& pts,
                                  const LatticePolygon& r) {
  const LatticePoint anchor = r.vertices().front();
  for (const auto& pt : pts) {
    const LatticePoint t{pt.x - anchor.x, pt.y - anchor.y};
    if (p.contains(r.translated(t))) return t;
  }
  return std::nullopt;
}

LatticePolygon scaled_segment(LatticePoint v, std::int64_t len) {
  return LatticePolygon::hull({{0, 0}, {v.x * len, v.y * len}});
}

// Binomial product along direction v with `len` factors using ξ^{offset+1..}.
SectionPoly split_form(const FieldSpec& f, LatticePoint v, std::int64_t len, std::int64_t offset) {
  SectionPoly s = SectionPoly::constant(f.one());
  for (std::int64_t t = 0; t < len; ++t) s = s.multiply(f, binomial(f, v, f.exp(offset + t)));
  return s;
}

SectionPoly shifted(const SectionPoly& s, LatticePoint t) {
  SectionPoly r;
  for (const auto& [m, c] : s.terms()) r.set_term({m.x + t.x, m.y + t.y}, c);
  return r;
}

ZeroSection catalog_section(const LatticePolygon& p, const FieldSpec& f) {
  const auto pts = p.lattice_points();
  const std::int64_t q = f.q();
  ZeroSection best{SectionPoly::constant(f.one()), 0, false};

  std::set<LatticePoint> dirs;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) dirs.insert(primitive({pts[j].x - pts[i].x, pts[j].y - pts[i].y}));
  }
  // longest segment per direction
  std::vector<std::pair<std::int64_t, LatticePoint>> longest;
  for (const auto& v : dirs) {
    std::int64_t len = 0;
    while (len + 1 < q - 1 && place(p, pts, scaled_segment(v, len + 1))) ++len;
    if (len > 0) longest.push_back({len, v});
  }
  std::sort(longest.begin(), longest.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });

  auto consider = [&](const SectionPoly& s) {
    const std::int64_t z = count_torus_zeros(s, f);
    if (z > best.zeros) best = {s, z, false};
  };
  for (const auto& [len, v] : longest) {
    const auto t = place(p, pts, scaled_segment(v, len));
    consider(shifted(split_form(f, v, len, 0), *t));
  }
  // parallelograms along two of the longest directions
  const std::size_t limit = std::min<std::size_t>(longest.size(), 8);
  for (std::size_t a = 0; a < limit; ++a) {
    for (std::size_t b = a + 1; b < limit; ++b) {
      const LatticePoint v = longest[a].second, w = longest[b].second;
      for (std::int64_t i = 1; i <= longest[a].first; ++i) {
        std::int64_t j = 0;
        while (j + 1 <= longest[b].first &&
               place(p, pts, minkowski_sum(scaled_segment(v, i), scaled_segment(w, j + 1)))) {
          ++j;
        }
        if (j == 0) break;
        const auto shape = minkowski_sum(scaled_segment(v, i), scaled_segment(w, j));
        const auto t = place(p, pts, shape);
        SectionPoly s = split_form(f, v, i, 0).multiply(f, split_form(f, w, j, 0));
        const LatticePolygon np = s.newton_polygon();
        const LatticePoint target = shape.translated(*t).vertices().front();
        const LatticePoint from = np.vertices().front();
        consider(shifted(s, {target.x - from.x, target.y - from.y}));
      }
    }
  }
  return best;
}

}  // namespace

// ------------------------------------------------------------ closed forms

std::int64_t d_segment(std::int64_t a, std::int64_t q) {
  require_nonnegative({a});
  require_field(q);
  if (q <= a + 1) throw Error(ErrorKind::FieldTooSmall, "segment needs q > a + 1");
  return sq(q - 1) - a * (q - 1);
}

LatticePolygon triangle_polygon(std::int64_t a, std::int64_t b, std::int64_t c) {
  return LatticePolygon::hull({{0, 0}, {a, 0}, {b, c}});
}

std::int64_t d_triangle(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t q) {
  require_nonnegative({a, b, c});
  if (a < b + c) throw Error(ErrorKind::HypothesisViolated, "triangle needs a >= b + c");
  require_field(q);
  if (q <= a + 1) throw Error(ErrorKind::FieldTooSmall, "triangle needs q > a + 1");
  return sq(q - 1) - a * (q - 1);
}

std::int64_t d_full_triangle(std::int64_t a, std::int64_t q) {
  require_nonnegative({a});
  require_field(q);
  if (q <= a + 1) throw Error(ErrorKind::FieldTooSmall, "triangle needs q > a + 1");
  return sq(q - 1) - a * (q - 1);
}

std::int64_t d_rectangle(std::int64_t d, std::int64_t e, std::int64_t q) {
  require_nonnegative({d, e});
  require_field(q);
  if (q <= std::max(d, e) + 1) throw Error(ErrorKind::FieldTooSmall, "rectangle needs q > max(d, e) + 1");
  return sq(q - 1) - (d + e) * (q - 1) + d * e;
}

LatticePolygon hirzebruch_polygon(std::int64_t d, std::int64_t e, std::int64_t r) {
  return LatticePolygon::hull({{0, 0}, {d, 0}, {0, e}, {d, e + r * d}});
}

std::int64_t d_hirzebruch(std::int64_t d, std::int64_t e, std::int64_t r, std::int64_t q) {
  require_nonnegative({d, e, r});
  if (r == 0) return d_rectangle(d, e, q);
  require_field(q);
  if (e + d * r >= q - 1 || d >= q - 1) throw Error(ErrorKind::FieldTooSmall, "needs e + dr < q - 1");
  return sq(q - 1) - (r * d + e) * (q - 1);
}

std::string_view to_string(Rank3Case c) {
  switch (c) {
    case Rank3Case::I: return "I";
    case Rank3Case::II: return "II";
    case Rank3Case::III: return "III";
    case Rank3Case::IV: return "IV";
  }
  return "?";
}

LatticePolygon rank3_family_polygon(Rank3Case c, std::int64_t a, std::int64_t b, std::int64_t cc, std::int64_t r) {
  if (a < 1 || b < 1 || cc < 1 || r < 1) throw Error(ErrorKind::HypothesisViolated, "a, b, c, r must be at least 1");
  switch (c) {
    case Rank3Case::I:
      return LatticePolygon::hull({{0, 0}, {r * (a + b) + b + cc, 0}, {b + cc, a + b}, {b, a + b}, {0, a}});
    case Rank3Case::II:
      return LatticePolygon::hull({{a, 0}, {r * (a + b) + cc, 0}, {cc, a + b}, {0, a + b}, {0, a}});
    case Rank3Case::III:
      if (b <= a) throw Error(ErrorKind::HypothesisViolated, "case III needs b > a");
      return LatticePolygon::hull({{a, 0}, {2 * b + cc, 0}, {b + cc, b}, {0, b}, {0, a}});
    case Rank3Case::IV:
      return LatticePolygon::hull(
          {{0, 0}, {cc + r * a + (r + 1) * b, 0}, {cc + (r + 1) * b, a}, {cc, a + b}, {0, a + b}});
  }
  throw Error(ErrorKind::HypothesisViolated, "unknown case");
}

FamilyDistance rank3_family_distance(Rank3Case c, std::int64_t a, std::int64_t b, std::int64_t cc, std::int64_t r,
                                     std::int64_t q) {
  FamilyDistance out;
  out.polygon = rank3_family_polygon(c, a, b, cc, r);
  require_fit(out.polygon, q, "family polygon");
  std::int64_t m = 0;
  switch (c) {
    case Rank3Case::I: m = r * (a + b) + b + cc; break;
    case Rank3Case::II: m = std::max(a + b, cc + (r - 1) * a + r * b); break;
    case Rank3Case::III: m = 2 * b + cc - a; break;
    case Rank3Case::IV: m = cc + r * a + (r + 1) * b; break;
  }
  out.value = sq(q - 1) - m * (q - 1);
  return out;
}

// ------------------------------------------------------------ decompositions

std::int64_t upper_bound_from_decomposition(const MinkowskiDecomposition& dec, std::int64_t q,
                                            std::span<const std::int64_t> component_distances) {
  if (component_distances.size() != dec.ell()) {
    throw Error(ErrorKind::NotApplicable, "one distance per summand is required");
  }
  const std::int64_t sum = std::accumulate(component_distances.begin(), component_distances.end(), std::int64_t{0});
  return sum - (static_cast<std::int64_t>(dec.ell()) - 1) * sq(q - 1);
}

ZeroSection max_zero_section(const LatticePolygon& p, const FieldSpec& f, std::uint64_t budget) {
  if (p.dim() == 0) return {SectionPoly::monomial(p.vertices().front(), f.one()), 0, true};
  const ToricCode code = ToricCode::build(p, f);
  if (message_count(code) > budget) return catalog_section(p, f);

  const MinDistanceResult r = min_distance_exact(code);
  SectionPoly s;
  const LatticePoint t = code.translation();
  for (std::size_t row = 0; row < code.k(); ++row) {
    if (r.witness[row] == f.zero()) continue;
    const LatticePoint m = code.monomials()[row];
    s.set_term({m.x - t.x, m.y - t.y}, r.witness[row]);
  }
  return {s, static_cast<std::int64_t>(code.n()) - r.distance, true};
}

std::int64_t component_distance(const LatticePolygon& p, const FieldSpec& f, std::uint64_t budget) {
  require_fit(p, f.q(), "summand");
  if (p.dim() == 0) return sq(f.q() - 1);
  if (p.dim() == 1) return d_segment(p.edges().front().length, f.q());
  const ToricCode code = ToricCode::build(p, f);
  if (message_count(code) > budget) {
    throw Error(ErrorKind::TooLarge, "summand code has q^k above the search budget");
  }
  return min_distance_exact(code).distance;
}

CertifiedBound certified_upper_bound(const LatticePolygon& p, const FieldSpec& f,
                                     std::span<const MinkowskiDecomposition> decs, std::uint64_t budget) {
  const std::int64_t order = f.q() - 1;
  const std::int64_t n = sq(order);
  if (!fits_in_box(p, f.q())) throw Error(ErrorKind::PolygonTooLargeForField, "polygon does not fit the box");

  std::map<LatticePolygon, ZeroSection> cache;
  auto section_for = [&](const LatticePolygon& summand) -> const ZeroSection& {
    auto it = cache.find(summand);
    if (it == cache.end()) it = cache.emplace(summand, max_zero_section(summand, f, budget)).first;
    return it->second;
  };

  CertifiedBound best;
  best.value = n;
  best.zeros = 0;
  best.witness = SectionPoly::monomial(p.vertices().front(), f.one());

  auto accept = [&](const SectionPoly& s, const std::optional<MinkowskiDecomposition>& dec) {
    for (const auto& [m, c] : s.terms()) {
      if (!p.contains(m)) throw Error(ErrorKind::InvariantViolation, "certified section leaves the polygon");
    }
    const std::int64_t zeros = count_torus_zeros(s, f);
    if (zeros > best.zeros) {
      best.zeros = zeros;
      best.value = n - zeros;
      best.witness = s;
      best.decomposition = dec;
    }
  };

  accept(section_for(p).section, std::nullopt);

  for (const auto& dec : decs) {
    std::vector<std::size_t> order_idx(dec.summands.size());
    std::iota(order_idx.begin(), order_idx.end(), 0);
    std::stable_sort(order_idx.begin(), order_idx.end(), [&](std::size_t a, std::size_t b) {
      return section_for(dec.summands[a]).zeros > section_for(dec.summands[b]).zeros;
    });

    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    SectionPoly product = SectionPoly::constant(f.one());
    for (auto idx : order_idx) {
      const ZeroSection& zs = section_for(dec.summands[idx]);
      const auto mask = zero_mask(zs.section, f);
      std::vector<std::pair<std::int64_t, std::int64_t>> zeros;
      for (std::int64_t i = 0; i < order; ++i) {
        for (std::int64_t j = 0; j < order; ++j) {
          if (mask[torus_index(i, j, order)]) zeros.push_back({i, j});
        }
      }
      // shift (a, b): zero (i, j) moves to (i + a, j + b)
      std::int64_t best_gain = -1, best_a = 0, best_b = 0;
      for (std::int64_t a = 0; a < order; ++a) {
        for (std::int64_t b = 0; b < order; ++b) {
          std::int64_t gain = 0;
          for (const auto& [i, j] : zeros) gain += !covered[torus_index((i + a) % order, (j + b) % order, order)];
          if (gain > best_gain) {
            best_gain = gain;
            best_a = a;
            best_b = b;
          }
        }
      }
      for (const auto& [i, j] : zeros) covered[torus_index((i + best_a) % order, (j + best_b) % order, order)] = 1;
      // s(λx, μy) with λ = ξ^{-a}, μ = ξ^{-b}
      product = product.multiply(f, zs.section.scaled(f, f.exp(-best_a), f.exp(-best_b)));
    }
    const LatticePolygon sum = minkowski_sum(std::span<const LatticePolygon>(dec.summands));
    const LatticePoint target = dec.subpolygon.translated(dec.translation).vertices().front();
    const LatticePoint from = sum.vertices().front();
    accept(shifted(product, {target.x - from.x, target.y - from.y}), dec);
  }
  return best;
}

// ------------------------------------------------------------ lower bounds

std::pair<std::int64_t, std::int64_t> hasse_weil_interval(std::int64_t g, std::int64_t q) {
  if (g < 0) throw Error(ErrorKind::HypothesisViolated, "genus must be nonnegative");
  require_field(q);
  // 2g sqrt(q) = sqrt(4 g^2 q)
  // ceil(1+q-x) = 1+q-floor(x)
  const std::int64_t root = isqrt(4 * g * g * q);
  const std::int64_t low = 1 + q - root;
  const std::int64_t high = 1 + q + root;
  return {std::max<std::int64_t>(0, low), high};
}

std::optional<LowerBound> mainthm_lower_bound(const LatticePolygon& p, const FieldSpec& f,
                                              std::span<const MinkowskiDecomposition> decs, std::uint64_t budget) {
  if (decs.empty() || decs.front().ell() < 1) throw Error(ErrorKind::NoDecomposition, "no Minkowski decomposition");
  const std::int64_t q = f.q();
  const PolygonCounts c = counts(p);

  LowerBound out;
  out.ell = decs.front().ell();
  out.threshold = sq(4 * c.interior + 3);
  out.rational_threshold = c.total + static_cast<std::int64_t>(out.ell);
  out.rational_summands = true;

  std::map<LatticePolygon, std::optional<std::int64_t>> cache;
  bool found = false;
  for (std::size_t i = 0; i < decs.size(); ++i) {
    std::int64_t sum = 0;
    bool ok = true;
    for (const auto& s : decs[i].summands) {
      if (s.dim() == 2 && counts(s).interior > 0) out.rational_summands = false;
      auto it = cache.find(s);
      if (it == cache.end()) {
        std::optional<std::int64_t> d;
        try {
          d = component_distance(s, f, budget);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::TooLarge) throw;
        }
        it = cache.emplace(s, d).first;
      }
      if (!it->second) {
        ok = false;
        continue;
      }
      sum += *it->second;
    }
    if (!ok) continue;
    const std::int64_t value = sum - (static_cast<std::int64_t>(decs[i].ell()) - 1) * sq(q - 1);
    if (!found || value < out.value) {
      out.value = value;
      out.decomposition = i;
      found = true;
    }
  }
  if (!found) return std::nullopt;
  out.applicable = c.interior > 0 && (q >= out.threshold || (out.rational_summands && q > out.rational_threshold));
  return out;
}

// ------------------------------------------------------------ report

std::string_view to_string(BoundKind k) {
  switch (k) {
    case BoundKind::Upper: return "upper";
    case BoundKind::Lower: return "lower";
    case BoundKind::ExactFormula: return "exact-formula";
  }
  return "?";
}

namespace {

BoundEntry formula_entry(std::string name, std::int64_t value, std::string provenance, std::string detail) {
  BoundEntry e;
  e.name = std::move(name);
  e.kind = BoundKind::ExactFormula;
  e.value = value;
  e.provenance = std::move(provenance);
  e.detail = std::move(detail);
  return e;
}

std::string params(std::initializer_list<std::pair<const char*, std::int64_t>> kv) {
  std::string s;
  for (const auto& [k, v] : kv) {
    if (!s.empty()) s += ",";
    s += std::string(k) + "=" + std::to_string(v);
  }
  return s;
}

}  // namespace

std::vector<BoundEntry> recognize_closed_forms(const LatticePolygon& p, std::int64_t q) {
  std::vector<BoundEntry> out;
  if (!fits_in_box(p, q)) return out;
  const PolygonCounts c = counts(p);
  const std::size_t nv = p.vertices().size();

  if (p.dim() == 1) {
    const std::int64_t a = p.edges().front().length;
    out.push_back(formula_entry("segment", d_segment(a, q), "segment closed form", params({{"a", a}})));
    return out;
  }
  if (p.dim() != 2) return out;

  if (nv == 3) {
    // conv{(0,0),(a,0),(b,c)} with a >= b + c; area2 = a c
    bool matched = false;
    for (std::int64_t a = 1; a <= c.volume2 && !matched; ++a) {
      if (c.volume2 % a != 0) continue;
      const std::int64_t h = c.volume2 / a;
      for (std::int64_t b = 0; b + h <= a && !matched; ++b) {
        if (lattice_equivalence(p, triangle_polygon(a, b, h))) {
          if (b == 0 && h == a) {
            out.push_back(formula_entry("full-triangle", d_full_triangle(a, q), "full triangle closed form",
                                        params({{"a", a}})));
          }
          out.push_back(formula_entry("triangle", d_triangle(a, b, h, q), "triangle closed form",
                                      params({{"a", a}, {"b", b}, {"c", h}})));
          matched = true;
        }
      }
    }
  }
  if (nv == 4) {
    bool matched = false;
    for (std::int64_t d = 1; 2 * d <= c.volume2 && !matched; ++d) {
      for (std::int64_t r = 0; r * d * d < c.volume2 && !matched; ++r) {
        // area2 = 2de + r d^2
        const std::int64_t rest = c.volume2 - r * d * d;
        if (rest <= 0 || rest % (2 * d) != 0) continue;
        const std::int64_t e = rest / (2 * d);
        if (e < 1) continue;
        if (!lattice_equivalence(p, hirzebruch_polygon(d, e, r))) continue;
        matched = true;
        try {
          if (r == 0) {
            out.push_back(formula_entry("rectangle", d_rectangle(d, e, q), "rectangle closed form",
                                        params({{"d", d}, {"e", e}})));
          } else {
            out.push_back(formula_entry("hirzebruch", d_hirzebruch(d, e, r, q), "Hirzebruch polygon closed form",
                                        params({{"d", d}, {"e", e}, {"r", r}})));
          }
        } catch (const Error& err) {
          if (err.kind() != ErrorKind::FieldTooSmall) throw;
        }
      }
    }
  }
  if (nv == 5) {
    for (auto kase : {Rank3Case::I, Rank3Case::II, Rank3Case::III, Rank3Case::IV}) {
      bool matched = false;
      // area grows with every parameter, so each loop stops once it overshoots
      auto area = [&](std::int64_t a, std::int64_t b, std::int64_t cc, std::int64_t r) -> std::optional<std::int64_t> {
        try {
          return counts(rank3_family_polygon(kase, a, b, cc, r)).volume2;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::HypothesisViolated) throw;
          return std::nullopt;
        }
      };
      const std::int64_t r_max = kase == Rank3Case::III ? 1 : c.volume2;
      for (std::int64_t a = 1; !matched && a <= c.volume2; ++a) {
        const std::int64_t b0 = kase == Rank3Case::III ? a + 1 : 1;
        auto base = area(a, b0, 1, 1);
        if (!base || *base > c.volume2) break;
        for (std::int64_t b = b0; !matched; ++b) {
          auto ab = area(a, b, 1, 1);
          if (!ab || *ab > c.volume2) break;
          for (std::int64_t cc = 1; !matched; ++cc) {
            auto abc = area(a, b, cc, 1);
            if (!abc || *abc > c.volume2) break;
            for (std::int64_t r = 1; !matched && r <= r_max; ++r) {
              auto v = area(a, b, cc, r);
              if (!v || *v > c.volume2) break;
              if (*v != c.volume2) continue;
              if (!lattice_equivalence(p, rank3_family_polygon(kase, a, b, cc, r))) continue;
              matched = true;
              try {
                const auto fd = rank3_family_distance(kase, a, b, cc, r, q);
                out.push_back(formula_entry("rank3-case-" + std::string(to_string(kase)), fd.value,
                                            "rank-three pentagon family closed form",
                                            params({{"a", a}, {"b", b}, {"c", cc}, {"r", r}})));
              } catch (const Error& err) {
                if (err.kind() != ErrorKind::FieldTooSmall) throw;
              }
            }
          }
        }
      }
    }
  }
  return out;
}

BoundReport full_report(const LatticePolygon& p, const FieldSpec& f, const ReportOptions& options) {
  if (!fits_in_box(p, f.q())) throw Error(ErrorKind::PolygonTooLargeForField, "polygon does not fit the box");
  BoundReport rep;
  rep.polygon = p;
  rep.field = f;
  rep.counts = counts(p);
  rep.n = sq(f.q() - 1);
  rep.k = rep.counts.total;
  rep.genus = rep.counts.interior;
  rep.hasse_weil = hasse_weil_interval(rep.genus, f.q());

  rep.entries = recognize_closed_forms(p, f.q());

  if (p.dim() > 0) {
    rep.decompositions = best_subpolygon_decomposition(p, options.subpolygon_budget);
  }
  const auto& decs = rep.decompositions.decompositions;

  // Hypothetical decomposition bound: best over decompositions with computable summands.
  {
    std::map<LatticePolygon, std::optional<std::int64_t>> cache;
    std::optional<BoundEntry> best;
    for (const auto& dec : decs) {
      std::vector<std::int64_t> ds;
      for (const auto& s : dec.summands) {
        auto it = cache.find(s);
        if (it == cache.end()) {
          std::optional<std::int64_t> d;
          try {
            d = component_distance(s, f, options.component_budget);
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::TooLarge) throw;
          }
          it = cache.emplace(s, d).first;
        }
        if (!it->second) break;
        ds.push_back(*it->second);
      }
      if (ds.size() != dec.ell()) continue;
      const std::int64_t v = upper_bound_from_decomposition(dec, f.q(), ds);
      if (!best || v < best->value) {
        BoundEntry e;
        e.name = "decomposition-upper";
        e.kind = BoundKind::Upper;
        e.value = v;
        e.hypothetical = true;
        e.provenance = "sum of summand distances minus (ell-1)(q-1)^2, assuming disjoint zeros";
        e.decomposition = dec;
        best = e;
      }
    }
    if (best) rep.entries.push_back(*best);
  }

  {
    const auto cert = certified_upper_bound(p, f, decs, options.section_budget);
    BoundEntry e;
    e.name = "certified-upper";
    e.kind = BoundKind::Upper;
    e.value = cert.value;
    e.provenance = "weight of an explicit product section";
    e.decomposition = cert.decomposition;
    e.section = cert.witness;
    e.detail = "zeros=" + std::to_string(cert.zeros);
    rep.entries.push_back(e);
  }

  if (!decs.empty()) {
    if (auto lb = mainthm_lower_bound(p, f, decs, options.component_budget)) {
      BoundEntry e;
      e.name = "decomposition-lower";
      e.kind = BoundKind::Lower;
      e.value = lb->value;
      e.applicable = lb->applicable;
      e.conditional = !lb->applicable;
      e.provenance = "sum of summand distances minus (ell-1)(q-1)^2 for large q";
      e.decomposition = decs[lb->decomposition];
      e.detail = "threshold=" + std::to_string(lb->threshold) +
                 ",rational_summands=" + (lb->rational_summands ? "true" : "false") +
                 ",rational_threshold=" + std::to_string(lb->rational_threshold);
      rep.entries.push_back(e);
    }
  }

  if (options.exact) {
    const ToricCode code = ToricCode::build(p, f);
    MinDistanceOptions mo;
    mo.threads = options.threads;
    mo.deadline = options.deadline;
    const auto r = min_distance_exact(code, mo);
    rep.exact_complete = r.exact;
    if (r.exact) rep.exact_d = r.distance;
  }

  // consistency
  auto describe = [](const BoundEntry& e) { return e.name + "=" + std::to_string(e.value); };
  for (const auto& lo : rep.entries) {
    if (!lo.asserted() || lo.kind == BoundKind::Upper) continue;
    for (const auto& hi : rep.entries) {
      if (!hi.asserted() || hi.kind == BoundKind::Lower || &lo == &hi) continue;
      if (lo.value > hi.value) {
        const std::string msg = describe(lo) + " exceeds " + describe(hi);
        // A certified witness beating a formula is a claim failure; both sides
        // being formulas or lower bounds likewise.
        rep.mismatches.push_back(msg);
      }
    }
  }
  if (rep.exact_d) {
    for (const auto& e : rep.entries) {
      if (!e.asserted()) continue;
      const bool too_high = e.kind != BoundKind::Upper && e.value > *rep.exact_d;
      const bool too_low = e.kind != BoundKind::Lower && e.value < *rep.exact_d;
      if (!too_high && !too_low) continue;
      const std::string msg = describe(e) + (too_high ? " above" : " below") + " exact " + std::to_string(*rep.exact_d);
      if (e.name == "certified-upper") {
        rep.violations.push_back(msg);
      } else {
        rep.mismatches.push_back(msg);
      }
    }
  }
  return rep;
}

}  // namespace toric
