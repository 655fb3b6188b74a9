#include "toric/polygon.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "toric/error.hpp"

namespace toric {

namespace {

using i128 = __int128;

void check_coordinate(std::int64_t v) {
  if (v > kCoordinateLimit || v < -kCoordinateLimit) {
    throw Error(ErrorKind::CoordinateOverflow, "coordinate " + std::to_string(v) + " outside supported range");
  }
}

void check_point(LatticePoint p) {
  check_coordinate(p.x);
  check_coordinate(p.y);
}

LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }

i128 cross(LatticePoint a, LatticePoint b) { return i128{a.x} * b.y - i128{a.y} * b.x; }

// Orientation of c relative to the directed line a->b.
i128 orient(LatticePoint a, LatticePoint b, LatticePoint c) { return cross(b - a, c - a); }

std::int64_t gcd_abs(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

// Integer x-range [lo, hi] of a two-dimensional polygon on row y (lo > hi if empty).
std::pair<i128, i128> row_range(const std::vector<LatticePoint>& v, std::int64_t y) {
  i128 lo = -(i128{1} << 100), hi = i128{1} << 100;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const LatticePoint a = v[i], b = v[(i + 1) % n];
    const i128 dx = b.x - a.x, dy = b.y - a.y;
    // inside: dx*(y-ay) - dy*(x-ax) >= 0  <=>  dy*x <= dx*(y-ay) + dy*ax
    const i128 rhs = dx * (y - a.y) + dy * a.x;
    if (dy > 0) {
      hi = std::min(hi, floor_div(rhs, dy));
    } else if (dy < 0) {
      lo = std::max(lo, ceil_div(rhs, dy));
    } else if (dx * (y - a.y) < 0) {
      return {1, 0};
    }
  }
  return {lo, hi};
}

}  // namespace

bool angle_less(LatticePoint a, LatticePoint b) {
  auto half = [](LatticePoint v) { return (v.y < 0 || (v.y == 0 && v.x < 0)) ? 1 : 0; };
  const int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

LatticePolygon LatticePolygon::hull(std::span<const LatticePoint> points) {
  if (points.empty()) throw Error(ErrorKind::EmptyInput, "convex hull of an empty point set");
  std::vector<LatticePoint> pts(points.begin(), points.end());
  for (const auto& p : pts) check_point(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  LatticePolygon out;
  if (pts.size() == 1) {
    out.vertices_ = pts;
    return out;
  }
  // Andrew's monotone chain; collinear points are dropped.
  std::vector<LatticePoint> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orient(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  out.vertices_ = std::move(h);
  return out;
}

LatticePolygon LatticePolygon::standard_triangle(std::int64_t a) { return hull({{0, 0}, {a, 0}, {0, a}}); }
LatticePolygon LatticePolygon::horizontal_segment(std::int64_t a) { return hull({{0, 0}, {a, 0}}); }
LatticePolygon LatticePolygon::rectangle(std::int64_t w, std::int64_t h) {
  return hull({{0, 0}, {w, 0}, {0, h}, {w, h}});
}

LatticePoint LatticePolygon::min_corner() const {
  LatticePoint m = vertices_.front();
  for (const auto& v : vertices_) m = {std::min(m.x, v.x), std::min(m.y, v.y)};
  return m;
}

LatticePoint LatticePolygon::max_corner() const {
  LatticePoint m = vertices_.front();
  for (const auto& v : vertices_) m = {std::max(m.x, v.x), std::max(m.y, v.y)};
  return m;
}

std::vector<LatticeEdge> LatticePolygon::edges() const {
  std::vector<LatticeEdge> out;
  const std::size_t n = vertices_.size();
  if (n < 2) return out;
  const std::size_t m = (n == 2) ? 2 : n;
  for (std::size_t i = 0; i < m; ++i) {
    const LatticePoint d = vertices_[(i + 1) % n] - vertices_[i];
    const std::int64_t g = gcd_abs(d.x, d.y);
    out.push_back({{d.x / g, d.y / g}, g});
  }
  return out;
}

bool LatticePolygon::contains(LatticePoint p) const {
  const std::size_t n = vertices_.size();
  if (n == 1) return p == vertices_[0];
  if (n == 2) {
    const LatticePoint a = vertices_[0], b = vertices_[1];
    if (orient(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (orient(vertices_[i], vertices_[(i + 1) % n], p) < 0) return false;
  }
  return true;
}

bool LatticePolygon::contains(const LatticePolygon& other) const {
  return std::all_of(other.vertices_.begin(), other.vertices_.end(),
                     [this](const LatticePoint& v) { return contains(v); });
}

std::vector<LatticePoint> LatticePolygon::lattice_points() const {
  std::vector<LatticePoint> out;
  if (dim() == 0) return vertices_;
  if (dim() == 1) {
    const auto e = edges().front();
    for (std::int64_t s = 0; s <= e.length; ++s) {
      out.push_back({vertices_[0].x + s * e.direction.x, vertices_[0].y + s * e.direction.y});
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  const LatticePoint lo = min_corner(), hi = max_corner();
  for (std::int64_t y = lo.y; y <= hi.y; ++y) {
    auto [a, b] = row_range(vertices_, y);
    for (i128 x = a; x <= b; ++x) out.push_back({static_cast<std::int64_t>(x), y});
  }
  std::sort(out.begin(), out.end());
  return out;
}

LatticePolygon LatticePolygon::translated(LatticePoint t) const {
  LatticePolygon out = *this;
  for (auto& v : out.vertices_) {
    v = v + t;
    check_point(v);
  }
  return out;
}

LatticePolygon LatticePolygon::normalized() const {
  return translated({-vertices_.front().x, -vertices_.front().y});
}

LatticePoint UnimodularAffineMap::apply(LatticePoint p) const {
  const i128 x = i128{matrix[0]} * p.x + i128{matrix[1]} * p.y + translation.x;
  const i128 y = i128{matrix[2]} * p.x + i128{matrix[3]} * p.y + translation.y;
  if (x > kCoordinateLimit || x < -kCoordinateLimit || y > kCoordinateLimit || y < -kCoordinateLimit) {
    throw Error(ErrorKind::CoordinateOverflow, "affine image outside supported range");
  }
  return {static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)};
}

LatticePolygon convex_hull(std::span<const LatticePoint> points) { return LatticePolygon::hull(points); }

PolygonCounts counts(const LatticePolygon& p) {
  PolygonCounts c;
  const auto& v = p.vertices();
  if (p.dim() == 0) {
    c.total = c.boundary = 1;
    return c;
  }
  if (p.dim() == 1) {
    c.boundary = c.total = p.edges().front().length + 1;
    return c;
  }
  i128 area2 = 0;
  for (std::size_t i = 0; i < v.size(); ++i) area2 += cross(v[i], v[(i + 1) % v.size()]);
  c.volume2 = static_cast<std::int64_t>(area2 < 0 ? -area2 : area2);
  for (const auto& e : p.edges()) c.boundary += e.length;
  const LatticePoint lo = p.min_corner(), hi = p.max_corner();
  for (std::int64_t y = lo.y; y <= hi.y; ++y) {
    auto [a, b] = row_range(v, y);
    if (b >= a) c.total += static_cast<std::int64_t>(b - a + 1);
  }
  c.interior = c.total - c.boundary;
  if (c.volume2 != 2 * c.total - c.boundary - 2) {
    throw Error(ErrorKind::InvariantViolation, "Pick's identity failed");
  }
  return c;
}

LatticePolygon minkowski_sum(const LatticePolygon& a, const LatticePolygon& b) {
  auto bottom_left = [](const LatticePolygon& p) {
    return *std::min_element(p.vertices().begin(), p.vertices().end(), [](LatticePoint u, LatticePoint w) {
      return u.y != w.y ? u.y < w.y : u.x < w.x;
    });
  };
  auto full_edges = [](const LatticePolygon& p) {
    std::vector<LatticePoint> out;
    for (const auto& e : p.edges()) out.push_back({e.direction.x * e.length, e.direction.y * e.length});
    return out;
  };
  std::vector<LatticePoint> steps = full_edges(a);
  const auto eb = full_edges(b);
  steps.insert(steps.end(), eb.begin(), eb.end());
  std::stable_sort(steps.begin(), steps.end(), angle_less);

  LatticePoint cur = bottom_left(a) + bottom_left(b);
  check_point(cur);
  std::vector<LatticePoint> pts{cur};
  for (const auto& s : steps) {
    cur = cur + s;
    check_point(cur);
    pts.push_back(cur);
  }
  return LatticePolygon::hull(pts);
}

LatticePolygon minkowski_sum(std::span<const LatticePolygon> parts) {
  if (parts.empty()) return LatticePolygon::point({0, 0});
  LatticePolygon acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = minkowski_sum(acc, parts[i]);
  return acc;
}

std::optional<LatticePoint> fits_in_box(const LatticePolygon& p, std::int64_t q) {
  const LatticePoint lo = p.min_corner(), hi = p.max_corner();
  if (hi.x - lo.x > q - 2 || hi.y - lo.y > q - 2) return std::nullopt;
  return LatticePoint{-lo.x, -lo.y};
}

LatticePolygon apply_map(const LatticePolygon& p, const UnimodularAffineMap& t) {
  const std::int64_t det = t.determinant();
  if (det != 1 && det != -1) throw Error(ErrorKind::InvariantViolation, "map is not unimodular");
  std::vector<LatticePoint> img;
  for (const auto& v : p.vertices()) img.push_back(t.apply(v));
  return LatticePolygon::hull(img);
}

namespace {

// Unimodular M with M*u = w for primitive u, w.
std::array<std::int64_t, 4> basis_change(LatticePoint u, LatticePoint w) {
  // complete u to a basis (u, u') with det [u u'] = 1 via extended gcd
  auto complete = [](LatticePoint v) {
    // find s, t with v.x*t - v.y*s = 1  -> column (s, t)
    std::int64_t old_r = v.x, r = v.y, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      const std::int64_t qq = old_r / r;
      std::tie(old_r, r) = std::pair{r, old_r - qq * r};
      std::tie(old_s, s) = std::pair{s, old_s - qq * s};
      std::tie(old_t, t) = std::pair{t, old_t - qq * t};
    }
    // old_s*v.x + old_t*v.y = old_r = ±1
    const std::int64_t sign = old_r;
    // det [v | (a,b)] = v.x*b - v.y*a = 1 with a = -old_t*sign, b = old_s*sign
    return LatticePoint{-old_t * sign, old_s * sign};
  };
  const LatticePoint uc = complete(u), wc = complete(w);
  // M = [w wc] * [u uc]^{-1}, [u uc]^{-1} = [[uc.y, -uc.x], [-u.y, u.x]] (det 1)
  const std::int64_t a = w.x * uc.y - wc.x * u.y;
  const std::int64_t b = -w.x * uc.x + wc.x * u.x;
  const std::int64_t c = w.y * uc.y - wc.y * u.y;
  const std::int64_t d = -w.y * uc.x + wc.y * u.x;
  return {a, b, c, d};
}

}  // namespace

std::optional<UnimodularAffineMap> lattice_equivalence(const LatticePolygon& a, const LatticePolygon& b) {
  if (a.dim() != b.dim() || a.vertices().size() != b.vertices().size()) return std::nullopt;
  if (counts(a) != counts(b)) return std::nullopt;
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  if (a.dim() == 0) {
    UnimodularAffineMap m;
    m.translation = vb[0] - va[0];
    return m;
  }
  if (a.dim() == 1) {
    const auto ea = a.edges().front(), eb = b.edges().front();
    if (ea.length != eb.length) return std::nullopt;
    UnimodularAffineMap m;
    m.matrix = basis_change(ea.direction, eb.direction);
    const LatticePoint img = m.apply(va[0]);
    m.translation = vb[0] - img;
    return m;
  }
  const std::size_t n = va.size();
  const LatticePoint e0 = va[1] - va[0], e1 = va[n - 1] - va[0];
  const i128 det = cross(e0, e1);
  for (std::size_t k = 0; k < n; ++k) {
    for (int dir : {1, -1}) {
      const LatticePoint f0 = vb[(k + n + dir) % n] - vb[k];
      const LatticePoint f1 = vb[(k + n - dir) % n] - vb[k];
      // M [e0 e1] = [f0 f1]  =>  M = [f0 f1] adj([e0 e1]) / det
      const i128 m00 = i128{f0.x} * e1.y - i128{f1.x} * e0.y;
      const i128 m01 = -i128{f0.x} * e1.x + i128{f1.x} * e0.x;
      const i128 m10 = i128{f0.y} * e1.y - i128{f1.y} * e0.y;
      const i128 m11 = -i128{f0.y} * e1.x + i128{f1.y} * e0.x;
      if (m00 % det || m01 % det || m10 % det || m11 % det) continue;
      UnimodularAffineMap m;
      m.matrix = {static_cast<std::int64_t>(m00 / det), static_cast<std::int64_t>(m01 / det),
                  static_cast<std::int64_t>(m10 / det), static_cast<std::int64_t>(m11 / det)};
      const std::int64_t md = m.determinant();
      if (md != 1 && md != -1) continue;
      m.translation = {0, 0};
      const LatticePoint img = m.apply(va[0]);
      m.translation = vb[k] - img;
      if (apply_map(a, m) == b) return m;
    }
  }
  return std::nullopt;
}

std::int64_t genus(const LatticePolygon& p) {
  if (p.dim() < 2) throw Error(ErrorKind::DegeneratePolygon, "genus needs a two-dimensional polygon");
  const auto c = counts(p);
  if (c.volume2 + 2 - c.total != c.interior) {
    throw Error(ErrorKind::InvariantViolation, "2v(P) + 2 - #(P) != I(P)");
  }
  return c.interior;
}

bool scott_check(const LatticePolygon& p) {
  const auto c = counts(p);
  if (c.interior == 0) throw Error(ErrorKind::NotApplicable, "Scott's inequality needs I(P) > 0");
  return c.total <= 3 * c.interior + 7;
}

std::int64_t canonical_degree(const LatticePolygon& p) {
  const auto c = counts(p);
  return 2 * c.interior - 2 - c.volume2;
}

std::vector<LatticeEdge> edge_multiset(const LatticePolygon& p) {
  auto es = p.edges();
  std::stable_sort(es.begin(), es.end(),
                   [](const LatticeEdge& a, const LatticeEdge& b) { return angle_less(a.direction, b.direction); });
  std::vector<LatticeEdge> out;
  for (const auto& e : es) {
    if (!out.empty() && out.back().direction == e.direction) {
      out.back().length += e.length;
    } else {
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace toric
