#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace toric {

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// |coordinate| bound accepted by every polygon operation; keeps all cross
/// products and shoelace sums exact in 128-bit intermediates.
inline constexpr std::int64_t kCoordinateLimit = std::int64_t{1} << 40;

/// A primitive edge direction together with its lattice length.
struct LatticeEdge {
  LatticePoint direction;  // primitive
  std::int64_t length = 0;

  friend bool operator==(const LatticeEdge&, const LatticeEdge&) = default;
};

/// Lattice polygon data: v(P) as 2·area, #(P), ∂(P), I(P).
struct PolygonCounts {
  std::int64_t volume2 = 0;
  std::int64_t total = 0;
  std::int64_t boundary = 0;
  std::int64_t interior = 0;

  friend bool operator==(const PolygonCounts&, const PolygonCounts&) = default;
};

/// Integral convex polygon, possibly degenerate (a point or a segment).
///
/// Vertices are kept canonical: counterclockwise, no three consecutive
/// collinear, starting at the lexicographically smallest vertex. A segment
/// stores its two endpoints in lexicographic order. Equality is equality of
/// the canonical vertex sequences.
class LatticePolygon {
 public:
  /// Hull of a nonempty point set.
  static LatticePolygon hull(std::span<const LatticePoint> points);
  static LatticePolygon hull(std::initializer_list<LatticePoint> points) {
    return hull(std::span<const LatticePoint>(points.begin(), points.size()));
  }
  static LatticePolygon point(LatticePoint p) { return hull({p}); }
  /// conv{(0,0),(a,0),(0,a)}
  static LatticePolygon standard_triangle(std::int64_t a);
  /// conv{(0,0),(a,0)}
  static LatticePolygon horizontal_segment(std::int64_t a);
  /// [0,w] x [0,h]
  static LatticePolygon rectangle(std::int64_t w, std::int64_t h);

  const std::vector<LatticePoint>& vertices() const { return vertices_; }
  int dim() const { return vertices_.size() >= 3 ? 2 : static_cast<int>(vertices_.size()) - 1; }

  /// Lower-left corner and extent of the bounding box.
  LatticePoint min_corner() const;
  LatticePoint max_corner() const;

  /// Primitive edges in counterclockwise order starting from the edge leaving
  /// the first canonical vertex. A segment yields its two opposite edges; a
  /// point yields none.
  std::vector<LatticeEdge> edges() const;

  bool contains(LatticePoint p) const;
  /// Every vertex of other lies in this polygon.
  bool contains(const LatticePolygon& other) const;

  /// All lattice points, sorted lexicographically by (x, y).
  std::vector<LatticePoint> lattice_points() const;

  LatticePolygon translated(LatticePoint t) const;
  /// Translate so that the first canonical vertex sits at the origin.
  LatticePolygon normalized() const;

  friend bool operator==(const LatticePolygon&, const LatticePolygon&) = default;
  friend auto operator<=>(const LatticePolygon& a, const LatticePolygon& b) {
    return a.vertices_ <=> b.vertices_;
  }

 private:
  std::vector<LatticePoint> vertices_;
};

/// Unimodular integer affine map x -> M x + t.
struct UnimodularAffineMap {
  std::array<std::int64_t, 4> matrix{1, 0, 0, 1};  // row-major {a, b, c, d}
  LatticePoint translation{};

  std::int64_t determinant() const { return matrix[0] * matrix[3] - matrix[1] * matrix[2]; }
  LatticePoint apply(LatticePoint p) const;

  static UnimodularAffineMap identity() { return {}; }
};

LatticePolygon convex_hull(std::span<const LatticePoint> points);

/// Exact counts; Pick's identity is checked on every call.
PolygonCounts counts(const LatticePolygon& p);

/// Edge-sequence merge of the two polygons (any dimensions).
LatticePolygon minkowski_sum(const LatticePolygon& a, const LatticePolygon& b);
LatticePolygon minkowski_sum(std::span<const LatticePolygon> parts);

/// Translation moving P into [0, q-2]^2, or nothing when the bounding box is
/// too wide or too tall. The translation puts the bounding box at the origin.
std::optional<LatticePoint> fits_in_box(const LatticePolygon& p, std::int64_t q);

LatticePolygon apply_map(const LatticePolygon& p, const UnimodularAffineMap& t);

/// A map T with T(a) = b, if the two polygons are lattice equivalent.
std::optional<UnimodularAffineMap> lattice_equivalence(const LatticePolygon& a, const LatticePolygon& b);

/// I(P) for a two-dimensional polygon, cross-checked against 2v(P) + 2 - #(P).
std::int64_t genus(const LatticePolygon& p);

/// #(P) <= 3 I(P) + 7; NotApplicable when I(P) = 0.
bool scott_check(const LatticePolygon& p);

/// D·K = 2I - 2 - 2v for the curve class of P.
std::int64_t canonical_degree(const LatticePolygon& p);

/// Merged multiset of primitive edge directions with summed lengths, sorted
/// by angle starting from direction (1,0).
std::vector<LatticeEdge> edge_multiset(const LatticePolygon& p);

/// Polar-angle ordering on nonzero integer vectors, angle in [0, 2π).
bool angle_less(LatticePoint a, LatticePoint b);

}  // namespace toric
