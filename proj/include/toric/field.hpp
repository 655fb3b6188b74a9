#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace toric {

/// An element of GF(p^e), identified by its integer code.
///
/// The code of c_0 + c_1 u + ... + c_{e-1} u^{e-1} (coefficients in [0, p)) is
/// c_0 + c_1 p + ... + c_{e-1} p^{e-1}, so 0 is the zero element, 1 the unit and
/// p^r the basis monomial u^r.
struct FieldElement {
  std::uint32_t value = 0;

  friend bool operator==(FieldElement, FieldElement) = default;
  friend auto operator<=>(FieldElement, FieldElement) = default;
};

/// GF(q), q = p^e <= 2^16, built from an explicit monic irreducible modulus.
///
/// Multiplication goes through discrete log / exp tables with respect to the
/// primitive element, which is the generator of smallest code. Immutable after
/// construction.
class FieldSpec {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  /// Validates p, e and the modulus. Without a modulus the smallest (by code of
  /// its coefficient vector, i.e. comparing from the top degree down) monic
  /// irreducible polynomial of degree e is used.
  static FieldSpec make(std::uint32_t p, std::uint32_t e,
                        std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  /// Splits q into p^e and forwards to make().
  static FieldSpec from_order(std::uint32_t q,
                              std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }
  /// Ascending-degree coefficients, length e+1, leading coefficient 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  FieldElement primitive_element() const { return FieldElement{exp_[1 % (q_ - 1)]}; }

  FieldElement zero() const { return FieldElement{0}; }
  FieldElement one() const { return FieldElement{1}; }
  FieldElement element(std::uint32_t code) const;
  /// u^r as a field element (the r-th additive basis vector).
  FieldElement basis(std::uint32_t r) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  /// Negative exponents are allowed for nonzero a.
  FieldElement pow(FieldElement a, std::int64_t n) const;

  /// ξ^i, i taken modulo q-1.
  FieldElement exp(std::int64_t i) const;
  /// Discrete log in [0, q-2]; a must be nonzero.
  std::uint32_t log(FieldElement a) const;

  /// Base-p digits of a code (length e).
  std::vector<std::uint32_t> digits(FieldElement a) const;

  std::span<const std::uint32_t> log_table() const { return log_; }
  std::span<const std::uint32_t> exp_table() const { return exp_; }

  /// Multiplicative order of a nonzero element.
  std::uint32_t order(FieldElement a) const;

  /// The (q-1)^2 points (ξ^i, ξ^j), 0 <= i,j <= q-2, row-major in (i, j).
  /// Codeword coordinate i*(q-1)+j corresponds to the point (ξ^i, ξ^j).
  std::vector<std::pair<FieldElement, FieldElement>> torus_points() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.p_ == b.p_ && a.e_ == b.e_ && a.modulus_ == b.modulus_;
  }

 private:
  FieldSpec() = default;

  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^r for r in [0, e]
  std::vector<std::uint32_t> log_;    // size q, log_[0] unused
  std::vector<std::uint32_t> exp_;    // size q-1
};

bool is_prime(std::uint32_t n);

/// True iff the monic polynomial (ascending coefficients over F_p) is
/// irreducible, by trial division against every monic polynomial of degree
/// 1..deg/2.
bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p);

}  // namespace toric
