#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toric/field.hpp"
#include "toric/polygon.hpp"

namespace toric {

/// A Laurent polynomial with nonzero coefficients, evaluated on the torus.
class SectionPoly {
 public:
  SectionPoly() = default;

  /// Adds c to the coefficient of x^m.x y^m.y; zero results are dropped.
  void add_term(const FieldSpec& f, LatticePoint m, FieldElement c);
  void set_term(LatticePoint m, FieldElement c);

  const std::map<LatticePoint, FieldElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Newton polygon; requires a nonzero polynomial.
  LatticePolygon newton_polygon() const;

  SectionPoly multiply(const FieldSpec& f, const SectionPoly& other) const;
  /// s(λx, μy): same Newton polygon, zero set translated by (λ^{-1}, μ^{-1}).
  SectionPoly scaled(const FieldSpec& f, FieldElement lambda, FieldElement mu) const;

  /// Value at (ξ^i, ξ^j).
  FieldElement evaluate(const FieldSpec& f, std::int64_t i, std::int64_t j) const;

  std::string to_string(const FieldSpec& f) const;

  static SectionPoly constant(FieldElement c);
  static SectionPoly monomial(LatticePoint m, FieldElement c);

  friend bool operator==(const SectionPoly&, const SectionPoly&) = default;

 private:
  std::map<LatticePoint, FieldElement> terms_;
};

/// The toric evaluation code C_P(F_q).
///
/// The polygon is translated into [0, q-2]^2 on construction. Row r of the
/// generator evaluates the monomial monomials()[r] (translated coordinates,
/// lexicographic order); column i*(q-1)+j is the torus point (ξ^i, ξ^j).
class ToricCode {
 public:
  /// Fails with PolygonTooLargeForField when P does not fit; verifies that the
  /// generator has rank #(P).
  static ToricCode build(const LatticePolygon& p, const FieldSpec& f);

  const FieldSpec& field() const { return field_; }
  const LatticePolygon& original_polygon() const { return original_; }
  const LatticePolygon& polygon() const { return polygon_; }
  LatticePoint translation() const { return translation_; }
  const std::vector<LatticePoint>& monomials() const { return monomials_; }

  std::size_t n() const { return n_; }
  std::size_t k() const { return monomials_.size(); }

  /// Discrete log of generator entry (row, column).
  std::uint32_t generator_log(std::size_t row, std::size_t column) const { return logs_[row * n_ + column]; }
  FieldElement generator(std::size_t row, std::size_t column) const {
    return field_.exp(generator_log(row, column));
  }

  std::vector<FieldElement> encode(const std::vector<FieldElement>& message) const;

  /// Message whose codeword is the evaluation of s shifted by the recorded
  /// translation. Throws SupportOutsidePolygon unless NP(s) ⊆ original polygon.
  std::vector<FieldElement> message_for_section(const SectionPoly& s) const;

  /// Human-checkable fingerprint (field, modulus, translated vertices).
  std::string fingerprint() const;

 private:
  FieldSpec field_ = FieldSpec::make(2, 1);
  LatticePolygon original_ = LatticePolygon::point({0, 0});
  LatticePolygon polygon_ = LatticePolygon::point({0, 0});
  LatticePoint translation_{};
  std::vector<LatticePoint> monomials_;
  std::size_t n_ = 0;
  std::vector<std::uint32_t> logs_;
};

std::size_t hamming_weight(const std::vector<FieldElement>& word);

/// Rank of a matrix over F_q by Gaussian elimination (rows of codes).
std::size_t matrix_rank(const FieldSpec& f, std::vector<std::vector<FieldElement>> rows);

/// Points of (F_q^*)^2 where s vanishes.
std::int64_t count_torus_zeros(const SectionPoly& s, const FieldSpec& f);

/// (q-1)^2 - zeros, requiring NP(s) ⊆ the code's polygon (original coordinates).
std::int64_t weight_of_section(const SectionPoly& s, const ToricCode& c);

struct MinDistanceOptions {
  unsigned threads = 1;
  std::optional<std::chrono::duration<double>> deadline;
  /// Resumable progress file; empty disables checkpointing.
  std::string checkpoint_path;
  /// Called from one worker with the completed fraction of chunks.
  std::function<void(double)> progress;
};

struct MinDistanceResult {
  std::int64_t distance = 0;
  /// false when the deadline cut the search short; distance is then only an
  /// upper bound (the best weight seen).
  bool exact = true;
  std::vector<FieldElement> witness;  // message of a minimum-weight codeword
  std::uint64_t codewords = 0;        // projective codewords examined
  std::size_t chunks_done = 0;
  std::size_t chunks_total = 0;
};

/// Exact minimum distance by Gray-order enumeration of messages whose leading
/// nonzero coordinate is 1, one row update per codeword.
MinDistanceResult min_distance_exact(const ToricCode& c, const MinDistanceOptions& options = {});

inline constexpr std::uint64_t kWeightDistributionLimit = 100'000'000;

/// Full weight enumerator; TooLarge if q^k exceeds `limit`.
std::map<std::int64_t, std::uint64_t> weight_distribution(const ToricCode& c, unsigned threads = 1,
                                                          std::uint64_t limit = kWeightDistributionLimit);

/// q^k with saturation at UINT64_MAX.
std::uint64_t message_count(const ToricCode& c);

}  // namespace toric
