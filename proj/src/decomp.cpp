#include "toric/decomp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "toric/error.hpp"

namespace toric {

namespace {

constexpr std::uint64_t kMaxEdgeStates = 20'000'000;
constexpr std::size_t kMaxFactorizations = 200'000;

// Zero-sum sub-multisets of a polygon's primitive edge multiset.
class EdgeSystem {
 public:
  explicit EdgeSystem(const LatticePolygon& q) {
    for (const auto& e : edge_multiset(q)) {
      dirs_.push_back(e.direction);
      mult_.push_back(e.length);
    }
    radix_.resize(dirs_.size());
    std::uint64_t states = 1;
    for (std::size_t i = 0; i < dirs_.size(); ++i) {
      radix_[i] = states;
      states *= static_cast<std::uint64_t>(mult_[i] + 1);
      if (states > kMaxEdgeStates) throw Error(ErrorKind::BudgetExceeded, "edge multiset too large to factor");
    }
    full_ = encode(mult_);
    std::vector<std::int64_t> cur(dirs_.size(), 0);
    enumerate(0, cur, 0, 0);
  }

  std::uint64_t full() const { return full_; }
  const std::vector<std::vector<std::int64_t>>& groups() const { return groups_; }
  const std::vector<std::uint64_t>& group_codes() const { return codes_; }

  bool fits(std::uint64_t group_code_index, std::uint64_t state) const {
    const auto& g = groups_[group_code_index];
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] > static_cast<std::int64_t>((state / radix_[i]) % static_cast<std::uint64_t>(mult_[i] + 1))) {
        return false;
      }
    }
    return true;
  }

  LatticePolygon summand(const std::vector<std::int64_t>& g) const {
    std::vector<LatticePoint> pts{{0, 0}};
    LatticePoint cur{0, 0};
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] == 0) continue;
      cur = {cur.x + g[i] * dirs_[i].x, cur.y + g[i] * dirs_[i].y};
      pts.push_back(cur);
    }
    return LatticePolygon::hull(pts).normalized();
  }

  // Largest number of groups partitioning `state`.
  int max_parts(std::uint64_t state) {
    if (state == 0) return 0;
    if (auto it = memo_.find(state); it != memo_.end()) return it->second;
    int best = 0;
    for (std::size_t z = 0; z < codes_.size(); ++z) {
      if (codes_[z] <= state && fits(z, state)) best = std::max(best, 1 + max_parts(state - codes_[z]));
    }
    memo_.emplace(state, best);
    return best;
  }

 private:
  std::uint64_t encode(const std::vector<std::int64_t>& v) const {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < v.size(); ++i) c += static_cast<std::uint64_t>(v[i]) * radix_[i];
    return c;
  }

  void enumerate(std::size_t i, std::vector<std::int64_t>& cur, std::int64_t sx, std::int64_t sy) {
    if (i == dirs_.size()) {
      if (sx == 0 && sy == 0 && std::any_of(cur.begin(), cur.end(), [](std::int64_t c) { return c != 0; })) {
        groups_.push_back(cur);
        codes_.push_back(encode(cur));
      }
      return;
    }
    for (std::int64_t c = 0; c <= mult_[i]; ++c) {
      cur[i] = c;
      enumerate(i + 1, cur, sx + c * dirs_[i].x, sy + c * dirs_[i].y);
    }
    cur[i] = 0;
  }

  std::vector<LatticePoint> dirs_;
  std::vector<std::int64_t> mult_;
  std::vector<std::uint64_t> radix_;
  std::uint64_t full_ = 0;
  std::vector<std::vector<std::int64_t>> groups_;
  std::vector<std::uint64_t> codes_;
  std::unordered_map<std::uint64_t, int> memo_;
};

std::vector<std::vector<LatticePolygon>> to_polygons(const EdgeSystem& sys,
                                                     const std::vector<std::vector<std::size_t>>& parts) {
  std::vector<std::vector<LatticePolygon>> out;
  out.reserve(parts.size());
  for (const auto& part : parts) {
    std::vector<LatticePolygon> summands;
    for (auto z : part) summands.push_back(sys.summand(sys.groups()[z]));
    std::sort(summands.begin(), summands.end());
    out.push_back(std::move(summands));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return out;
}

std::size_t summand_upper_bound(const LatticePolygon& q) {
  std::int64_t primitive_edges = 0;
  for (const auto& e : q.edges()) primitive_edges += e.length;
  return static_cast<std::size_t>(primitive_edges / 2);
}

}  // namespace

void MinkowskiDecomposition::validate() const {
  for (const auto& s : summands) {
    if (s.dim() < 1) throw Error(ErrorKind::InvariantViolation, "trivial (point) summand");
  }
  if (minkowski_sum(summands).normalized() != subpolygon.normalized()) {
    throw Error(ErrorKind::InvariantViolation, "summands do not recompose the subpolygon");
  }
  if (!parent.contains(subpolygon.translated(translation))) {
    throw Error(ErrorKind::InvariantViolation, "subpolygon not contained in parent");
  }
}

std::vector<std::vector<LatticePolygon>> factor_polygon(const LatticePolygon& q, std::size_t max_parts) {
  if (q.dim() == 0) throw Error(ErrorKind::DegeneratePolygon, "a point has no nontrivial summands");
  EdgeSystem sys(q);
  const auto& codes = sys.group_codes();
  std::vector<std::vector<std::size_t>> parts;
  std::vector<std::size_t> cur;
  std::function<void(std::uint64_t, std::size_t)> rec = [&](std::uint64_t state, std::size_t from) {
    if (state == 0) {
      parts.push_back(cur);
      if (parts.size() > kMaxFactorizations) throw Error(ErrorKind::BudgetExceeded, "too many factorizations");
      return;
    }
    if (cur.size() >= max_parts) return;
    for (std::size_t z = from; z < codes.size(); ++z) {
      if (codes[z] <= state && sys.fits(z, state)) {
        cur.push_back(z);
        rec(state - codes[z], z);
        cur.pop_back();
      }
    }
  };
  rec(sys.full(), 0);
  return to_polygons(sys, parts);
}

std::vector<std::vector<LatticePolygon>> maximal_factorizations(const LatticePolygon& q) {
  if (q.dim() == 0) throw Error(ErrorKind::DegeneratePolygon, "a point has no nontrivial summands");
  EdgeSystem sys(q);
  const auto& codes = sys.group_codes();
  std::vector<std::vector<std::size_t>> parts;
  std::vector<std::size_t> cur;
  // Every suffix of a maximal partition is itself maximal for its remainder.
  std::function<void(std::uint64_t, std::size_t)> rec = [&](std::uint64_t state, std::size_t from) {
    if (state == 0) {
      parts.push_back(cur);
      if (parts.size() > kMaxFactorizations) throw Error(ErrorKind::BudgetExceeded, "too many factorizations");
      return;
    }
    const int target = sys.max_parts(state);
    for (std::size_t z = from; z < codes.size(); ++z) {
      if (codes[z] <= state && sys.fits(z, state) && 1 + sys.max_parts(state - codes[z]) == target) {
        cur.push_back(z);
        rec(state - codes[z], z);
        cur.pop_back();
      }
    }
  };
  rec(sys.full(), 0);
  return to_polygons(sys, parts);
}

std::size_t max_summand_count(const LatticePolygon& q) {
  if (q.dim() == 0) return 0;
  EdgeSystem sys(q);
  return static_cast<std::size_t>(sys.max_parts(sys.full()));
}

namespace {

DecompositionSearch decompositions_for(const LatticePolygon& p,
                                       const std::vector<std::pair<LatticePolygon, LatticePoint>>& classes) {
  // classes: normalized subpolygon with a placement inside p
  std::vector<std::size_t> order(classes.size());
  std::vector<std::size_t> bound(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    order[i] = i;
    bound[i] = summand_upper_bound(classes[i].first);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return bound[a] > bound[b]; });

  DecompositionSearch out;
  std::vector<std::size_t> winners;
  for (auto i : order) {
    if (bound[i] == 0 || bound[i] < out.ell) break;
    const std::size_t ell = max_summand_count(classes[i].first);
    if (ell > out.ell) {
      out.ell = ell;
      winners.clear();
    }
    if (ell == out.ell && ell > 0) winners.push_back(i);
  }
  std::sort(winners.begin(), winners.end(),
            [&](std::size_t a, std::size_t b) { return classes[a].first < classes[b].first; });
  for (auto i : winners) {
    for (auto& summands : maximal_factorizations(classes[i].first)) {
      MinkowskiDecomposition d{p, classes[i].first, classes[i].second, std::move(summands)};
      d.validate();
      out.decompositions.push_back(std::move(d));
    }
  }
  return out;
}

// Placement of r inside p (translation applied to r), if any.
std::optional<LatticePoint> placement(const LatticePolygon& p, const std::vector<LatticePoint>& p_points,
                                      const LatticePolygon& r) {
  const LatticePoint anchor = r.vertices().front();
  for (const auto& pt : p_points) {
    const LatticePoint t{pt.x - anchor.x, pt.y - anchor.y};
    if (p.contains(r.translated(t))) return t;
  }
  return std::nullopt;
}

}  // namespace

DecompositionSearch greedy_subpolygon_decomposition(const LatticePolygon& p) {
  const auto pts = p.lattice_points();
  // catalog: primitive segments between lattice points of P, one per direction up to sign
  std::set<LatticePolygon> catalog;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const LatticePolygon seg = LatticePolygon::hull({pts[i], pts[j]});
      if (seg.edges().front().length == 1) catalog.insert(seg.normalized());
    }
  }
  // unit triangles spanned by pairs of catalog directions
  std::vector<LatticePolygon> segments(catalog.begin(), catalog.end());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (std::size_t j = i + 1; j < segments.size(); ++j) {
      const auto a = segments[i].vertices()[1], b = segments[j].vertices()[1];
      const auto det = a.x * b.y - a.y * b.x;
      if (det != 1 && det != -1) continue;
      const auto tri = LatticePolygon::hull({{0, 0}, a, b});
      if (placement(p, pts, tri)) catalog.insert(tri.normalized());
    }
  }
  if (catalog.empty()) {
    if (p.dim() == 0) return DecompositionSearch{{}, 0, false, 0};
    throw Error(ErrorKind::BudgetExceeded, "greedy decomposition has no building blocks");
  }

  std::map<LatticePolygon, std::pair<LatticePoint, std::vector<LatticePolygon>>> finals;
  for (const auto& start : catalog) {
    // second pass stacks copies of the start block first (long segments)
    for (int repeat_first = 0; repeat_first < 2; ++repeat_first) {
      std::vector<LatticePolygon> parts{start};
      LatticePolygon sum = start;
      if (repeat_first) {
        for (;;) {
          const auto cand = minkowski_sum(sum, start).normalized();
          if (!placement(p, pts, cand)) break;
          sum = cand;
          parts.push_back(start);
        }
      }
      bool grown = true;
      while (grown) {
        grown = false;
        for (const auto& t : catalog) {
          const auto cand = minkowski_sum(sum, t).normalized();
          if (placement(p, pts, cand)) {
            sum = cand;
            parts.push_back(t);
            grown = true;
            break;
          }
        }
      }
      const auto t = placement(p, pts, sum);
      if (!finals.contains(sum) || finals[sum].second.size() < parts.size()) finals[sum] = {*t, parts};
    }
  }

  DecompositionSearch out;
  out.exhaustive = false;
  out.candidates = finals.size();
  for (const auto& [sum, v] : finals) out.ell = std::max(out.ell, v.second.size());
  for (auto& [sum, v] : finals) {
    if (v.second.size() != out.ell) continue;
    auto parts = v.second;
    std::sort(parts.begin(), parts.end());
    MinkowskiDecomposition d{p, sum, v.first, std::move(parts)};
    d.validate();
    out.decompositions.push_back(std::move(d));
  }
  return out;
}

DecompositionSearch best_subpolygon_decomposition(const LatticePolygon& p, std::size_t budget) {
  if (budget == 0) throw Error(ErrorKind::BudgetExceeded, "budget must be positive");
  const auto pts = p.lattice_points();

  // Grow hulls one lattice point at a time; every convex lattice subpolygon is
  // reached because adding its vertices in any order stays inside it.
  std::set<LatticePolygon> seen;
  std::vector<LatticePolygon> frontier;
  for (const auto& pt : pts) {
    auto poly = LatticePolygon::point(pt);
    seen.insert(poly);
    frontier.push_back(std::move(poly));
  }
  bool over_budget = seen.size() > budget;
  while (!frontier.empty() && !over_budget) {
    std::vector<LatticePolygon> next;
    for (const auto& q : frontier) {
      for (const auto& pt : pts) {
        if (q.contains(pt)) continue;
        std::vector<LatticePoint> vs = q.vertices();
        vs.push_back(pt);
        auto grown = LatticePolygon::hull(vs);
        if (seen.insert(grown).second) {
          next.push_back(std::move(grown));
          if (seen.size() > budget) {
            over_budget = true;
            break;
          }
        }
      }
      if (over_budget) break;
    }
    frontier = std::move(next);
  }
  if (over_budget) return greedy_subpolygon_decomposition(p);

  // One representative per translation class, first placement in canonical order.
  std::map<LatticePolygon, LatticePoint> classes;
  for (const auto& q : seen) {
    if (q.dim() == 0) continue;
    classes.try_emplace(q.normalized(), q.vertices().front());
  }
  std::vector<std::pair<LatticePolygon, LatticePoint>> list(classes.begin(), classes.end());
  auto out = decompositions_for(p, list);
  out.candidates = seen.size();
  out.exhaustive = true;
  return out;
}

}  // namespace toric
