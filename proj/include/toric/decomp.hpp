#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "toric/polygon.hpp"

namespace toric {

/// A subpolygon P' of a parent polygon written as a Minkowski sum of
/// nontrivial summands.
///
/// `subpolygon` and every summand are normalized (first canonical vertex at the
/// origin); `subpolygon.translated(translation)` lies inside `parent`.
struct MinkowskiDecomposition {
  LatticePolygon parent;
  LatticePolygon subpolygon;
  LatticePoint translation;
  std::vector<LatticePolygon> summands;

  std::size_t ell() const { return summands.size(); }

  /// Throws InvariantViolation if recomposition, nontriviality or containment
  /// fails.
  void validate() const;
};

struct DecompositionSearch {
  std::vector<MinkowskiDecomposition> decompositions;  // all with the maximal ell
  std::size_t ell = 0;
  bool exhaustive = true;
  std::size_t candidates = 0;  // distinct subpolygons enumerated
};

inline constexpr std::size_t kDefaultSubpolygonBudget = 200'000;

/// Factorizations of Q into nontrivial summands, as zero-sum partitions of its
/// primitive edge multiset into at most max_parts groups. Larger part counts
/// first; unique up to reordering and translation; every summand normalized.
std::vector<std::vector<LatticePolygon>> factor_polygon(const LatticePolygon& q, std::size_t max_parts);

/// Only the factorizations with the largest possible number of parts.
std::vector<std::vector<LatticePolygon>> maximal_factorizations(const LatticePolygon& q);

/// Largest number of nontrivial summands of Q (0 for a point).
std::size_t max_summand_count(const LatticePolygon& q);

/// Searches subpolygons P' ⊆ P (hulls of subsets of P ∩ Z^2) for the largest
/// ell and returns every decomposition achieving it. Past `budget` distinct
/// candidates it switches to greedy growth and clears `exhaustive`.
DecompositionSearch best_subpolygon_decomposition(const LatticePolygon& p,
                                                  std::size_t budget = kDefaultSubpolygonBudget);

/// Greedy fallback used by best_subpolygon_decomposition; exposed for tests.
DecompositionSearch greedy_subpolygon_decomposition(const LatticePolygon& p);

}  // namespace toric
