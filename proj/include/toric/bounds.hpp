#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toric/code.hpp"
#include "toric/decomp.hpp"
#include "toric/field.hpp"
#include "toric/polygon.hpp"

namespace toric {

// Closed forms. Each checks that the polygon fits the box [0, q-2]^2.

/// Segment of lattice length a: (q-1)^2 - a(q-1).
std::int64_t d_segment(std::int64_t a, std::int64_t q);
/// conv{(0,0),(a,0),(b,c)} with a >= b + c: (q-1)^2 - a(q-1).
std::int64_t d_triangle(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t q);
/// conv{(0,0),(a,0),(0,a)}.
std::int64_t d_full_triangle(std::int64_t a, std::int64_t q);
/// [0,d] x [0,e]: (q-1)^2 - (d+e)(q-1) + de.
std::int64_t d_rectangle(std::int64_t d, std::int64_t e, std::int64_t q);
/// conv{(0,0),(d,0),(0,e),(d,e+rd)}: (q-1)^2 - (rd+e)(q-1); r = 0 is the rectangle.
std::int64_t d_hirzebruch(std::int64_t d, std::int64_t e, std::int64_t r, std::int64_t q);

LatticePolygon triangle_polygon(std::int64_t a, std::int64_t b, std::int64_t c);
LatticePolygon hirzebruch_polygon(std::int64_t d, std::int64_t e, std::int64_t r);

/// The four pentagon families with three-dimensional Picard group.
enum class Rank3Case { I, II, III, IV };

std::string_view to_string(Rank3Case c);

/// Family member for parameters a, b, c, r >= 1 (case III ignores r and needs
/// b > a). HypothesisViolated otherwise.
LatticePolygon rank3_family_polygon(Rank3Case c, std::int64_t a, std::int64_t b, std::int64_t cc, std::int64_t r);

struct FamilyDistance {
  std::int64_t value = 0;
  LatticePolygon polygon = LatticePolygon::point({0, 0});
};

FamilyDistance rank3_family_distance(Rank3Case c, std::int64_t a, std::int64_t b, std::int64_t cc, std::int64_t r,
                                     std::int64_t q);

/// Sum of summand distances minus (ell-1)(q-1)^2. Valid only if the summand
/// sections can be chosen with pairwise disjoint zeros.
std::int64_t upper_bound_from_decomposition(const MinkowskiDecomposition& dec, std::int64_t q,
                                            std::span<const std::int64_t> component_distances);

inline constexpr std::uint64_t kSectionBudget = 1'000'000;
inline constexpr std::uint64_t kComponentBudget = 50'000'000;

struct ZeroSection {
  SectionPoly section;  // support inside the given polygon
  std::int64_t zeros = 0;
  bool exhaustive = true;  // false: best of a catalog of split forms
};

/// Section with the most torus zeros: exhaustive when q^#(P) <= budget,
/// otherwise products of binomials along one or two lattice directions.
ZeroSection max_zero_section(const LatticePolygon& p, const FieldSpec& f, std::uint64_t budget = kSectionBudget);

/// d(C_P) from a closed form when P is a segment, otherwise by exhaustive
/// search if q^#(P) <= budget; TooLarge beyond that.
std::int64_t component_distance(const LatticePolygon& p, const FieldSpec& f, std::uint64_t budget = kComponentBudget);

struct CertifiedBound {
  std::int64_t value = 0;
  std::int64_t zeros = 0;
  SectionPoly witness;  // NP(witness) inside P, exactly `zeros` torus zeros
  std::optional<MinkowskiDecomposition> decomposition;
};

/// Weight of an explicit product section: per-summand max-zero sections,
/// torus-scaled one at a time to add as many new zeros as possible. P itself
/// is always tried as a single summand.
CertifiedBound certified_upper_bound(const LatticePolygon& p, const FieldSpec& f,
                                     std::span<const MinkowskiDecomposition> decs,
                                     std::uint64_t budget = kSectionBudget);

/// [ceil(1+q-2g sqrt q), floor(1+q+2g sqrt q)] in exact integers, low end
/// clamped at 0.
std::pair<std::int64_t, std::int64_t> hasse_weil_interval(std::int64_t g, std::int64_t q);

struct LowerBound {
  std::int64_t value = 0;
  bool applicable = false;
  std::int64_t threshold = 0;            // (4I+3)^2
  bool rational_summands = false;        // every summand of every decomposition has I = 0
  std::int64_t rational_threshold = 0;   // q must exceed #(P) + ell
  std::size_t ell = 0;
  std::size_t decomposition = 0;         // index attaining the minimum
};

/// min over decs of sum d(C_{P_i}) - (ell-1)(q-1)^2 with its validity
/// condition. NoDecomposition for an empty list or ell = 0; nothing when no
/// decomposition has computable summand distances.
std::optional<LowerBound> mainthm_lower_bound(const LatticePolygon& p, const FieldSpec& f,
                                              std::span<const MinkowskiDecomposition> decs,
                                              std::uint64_t budget = kComponentBudget);

enum class BoundKind { Upper, Lower, ExactFormula };

std::string_view to_string(BoundKind k);

struct BoundEntry {
  std::string name;
  BoundKind kind = BoundKind::Upper;
  std::int64_t value = 0;
  bool applicable = true;
  bool conditional = false;   // reported, not asserted
  bool hypothetical = false;  // rests on an unchecked hypothesis
  std::string provenance;
  std::optional<MinkowskiDecomposition> decomposition;
  std::optional<SectionPoly> section;
  std::string detail;

  bool asserted() const { return applicable && !conditional && !hypothetical; }
};

struct ReportOptions {
  bool exact = false;
  unsigned threads = 1;
  std::optional<std::chrono::duration<double>> deadline;
  std::size_t subpolygon_budget = kDefaultSubpolygonBudget;
  std::uint64_t section_budget = kSectionBudget;
  std::uint64_t component_budget = kComponentBudget;
};

struct BoundReport {
  LatticePolygon polygon = LatticePolygon::point({0, 0});
  FieldSpec field = FieldSpec::make(2, 1);
  PolygonCounts counts;
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t genus = 0;
  std::pair<std::int64_t, std::int64_t> hasse_weil{0, 0};
  DecompositionSearch decompositions;
  std::optional<std::int64_t> exact_d;
  bool exact_complete = false;
  std::vector<BoundEntry> entries;
  /// Formula or theorem values contradicted by another asserted value.
  std::vector<std::string> mismatches;
  /// Internal contradictions (a certified witness below the exact distance).
  std::vector<std::string> violations;
};

/// Closed-form recognition, decomposition search, certified upper bound,
/// lower bound and optional exact search, with consistency checks.
BoundReport full_report(const LatticePolygon& p, const FieldSpec& f, const ReportOptions& options = {});

/// Closed-form entries for polygons lattice equivalent to a known family
/// member (bounded parameter search).
std::vector<BoundEntry> recognize_closed_forms(const LatticePolygon& p, std::int64_t q);

}  // namespace toric
