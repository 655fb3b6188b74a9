#include "toric/field.hpp"

#include <algorithm>
#include <string>

#include "toric/error.hpp"

namespace toric {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::CoordinateOverflow: return "CoordinateOverflow";
    case ErrorKind::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::PolygonTooLargeForField: return "PolygonTooLargeForField";
    case ErrorKind::SupportOutsidePolygon: return "SupportOutsidePolygon";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::FieldTooSmall: return "FieldTooSmall";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NoDecomposition: return "NoDecomposition";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

namespace {

using Poly = std::vector<std::uint32_t>;  // ascending coefficients mod p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + (p - lead) * m[i]) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return r;
}

Poly code_to_poly(std::uint32_t code, std::uint32_t p, std::uint32_t e) {
  Poly r(e, 0);
  for (std::uint32_t i = 0; i < e; ++i) {
    r[i] = code % p;
    code /= p;
  }
  return r;
}

std::uint32_t poly_to_code(const Poly& a, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = a.size(); i-- > 0;) code = code * p + a[i];
  return code;
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p) {
  Poly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    // every monic divisor candidate of degree d: low coefficients enumerate [0,p)^d
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g(d + 1, 0);
      std::uint64_t v = c;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldSpec FieldSpec::make(std::uint32_t p, std::uint32_t e,
                          std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw Error(ErrorKind::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
  if (e < 1) throw Error(ErrorKind::DegreeMismatch, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error(ErrorKind::FieldTooLarge, "p^e exceeds 2^16");
  }

  FieldSpec f;
  f.p_ = p;
  f.e_ = e;
  f.q_ = static_cast<std::uint32_t>(q);
  f.pow_p_.resize(e + 1);
  f.pow_p_[0] = 1;
  for (std::uint32_t i = 1; i <= e; ++i) f.pow_p_[i] = f.pow_p_[i - 1] * p;

  if (modulus) {
    if (modulus->size() != e + 1) {
      throw Error(ErrorKind::DegreeMismatch, "modulus must have e+1 coefficients");
    }
    for (auto c : *modulus) {
      if (c >= p) throw Error(ErrorKind::DegreeMismatch, "modulus coefficient out of range [0,p)");
    }
    if (modulus->back() != 1) throw Error(ErrorKind::DegreeMismatch, "modulus must be monic");
    if (!is_irreducible(*modulus, p)) throw Error(ErrorKind::ReducibleModulus, "modulus is reducible over F_p");
    f.modulus_ = *modulus;
  } else {
    // Smallest code first; x^e + (lower part) with lower part ranging over [0, p^e).
    for (std::uint32_t low = 0; low < f.q_; ++low) {
      Poly cand = code_to_poly(low, p, e);
      cand.push_back(1);
      if (is_irreducible(cand, p)) {
        f.modulus_ = cand;
        break;
      }
    }
  }

  // Tables: find the smallest-code generator of the multiplicative group.
  const std::uint32_t n = f.q_ - 1;
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
    return poly_to_code(poly_mod(poly_mul(code_to_poly(a, p, e), code_to_poly(b, p, e), p), f.modulus_, p), p);
  };
  std::vector<std::uint32_t> powers;
  for (std::uint32_t g = 1; g < f.q_; ++g) {
    powers.assign(1, 1);
    std::uint32_t x = g;
    while (x != 1 && powers.size() <= n) {
      powers.push_back(x);
      x = slow_mul(x, g);
    }
    if (x == 1 && powers.size() == n) break;
    powers.clear();
  }
  if (powers.size() != n) throw Error(ErrorKind::InvariantViolation, "no primitive element found");
  f.exp_ = std::move(powers);
  f.log_.assign(f.q_, 0);
  for (std::uint32_t i = 0; i < n; ++i) f.log_[f.exp_[i]] = i;
  return f;
}

FieldSpec FieldSpec::from_order(std::uint32_t q, std::optional<std::vector<std::uint32_t>> modulus) {
  if (q < 2) throw Error(ErrorKind::NonPrimeCharacteristic, "field order must be >= 2");
  if (q > kMaxOrder) throw Error(ErrorKind::FieldTooLarge, "q exceeds 2^16");
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t e = 0;
  std::uint32_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw Error(ErrorKind::NonPrimeCharacteristic, std::to_string(q) + " is not a prime power");
  return make(p, e, std::move(modulus));
}

FieldElement FieldSpec::element(std::uint32_t code) const {
  if (code >= q_) throw Error(ErrorKind::DegreeMismatch, "element code out of range");
  return FieldElement{code};
}

FieldElement FieldSpec::basis(std::uint32_t r) const {
  if (r >= e_) throw Error(ErrorKind::DegreeMismatch, "basis index out of range");
  return FieldElement{pow_p_[r]};
}

FieldElement FieldSpec::add(FieldElement a, FieldElement b) const {
  if (p_ == 2) return FieldElement{a.value ^ b.value};
  if (e_ == 1) {
    std::uint32_t s = a.value + b.value;
    return FieldElement{s >= p_ ? s - p_ : s};
  }
  std::uint32_t x = a.value, y = b.value, r = 0;
  for (std::uint32_t i = 0; i < e_; ++i) {
    r += ((x % p_ + y % p_) % p_) * pow_p_[i];
    x /= p_;
    y /= p_;
  }
  return FieldElement{r};
}

FieldElement FieldSpec::neg(FieldElement a) const {
  if (p_ == 2) return a;
  std::uint32_t x = a.value, r = 0;
  for (std::uint32_t i = 0; i < e_; ++i) {
    r += ((p_ - x % p_) % p_) * pow_p_[i];
    x /= p_;
  }
  return FieldElement{r};
}

FieldElement FieldSpec::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const {
  if (a.value == 0 || b.value == 0) return zero();
  std::uint32_t s = log_[a.value] + log_[b.value];
  const std::uint32_t n = q_ - 1;
  if (s >= n) s -= n;
  return FieldElement{exp_[s]};
}

FieldElement FieldSpec::inv(FieldElement a) const {
  if (a.value == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  const std::uint32_t n = q_ - 1;
  return FieldElement{exp_[(n - log_[a.value]) % n]};
}

FieldElement FieldSpec::pow(FieldElement a, std::int64_t k) const {
  if (a.value == 0) {
    if (k == 0) return one();
    if (k < 0) throw Error(ErrorKind::DivisionByZero, "negative power of zero");
    return zero();
  }
  const std::int64_t n = q_ - 1;
  std::int64_t l = (static_cast<std::int64_t>(log_[a.value]) * (k % n)) % n;
  if (l < 0) l += n;
  return FieldElement{exp_[static_cast<std::size_t>(l)]};
}

FieldElement FieldSpec::exp(std::int64_t i) const {
  const std::int64_t n = q_ - 1;
  std::int64_t r = i % n;
  if (r < 0) r += n;
  return FieldElement{exp_[static_cast<std::size_t>(r)]};
}

std::uint32_t FieldSpec::log(FieldElement a) const {
  if (a.value == 0) throw Error(ErrorKind::DivisionByZero, "log of zero");
  return log_[a.value];
}

std::vector<std::uint32_t> FieldSpec::digits(FieldElement a) const { return code_to_poly(a.value, p_, e_); }

std::uint32_t FieldSpec::order(FieldElement a) const {
  if (a.value == 0) throw Error(ErrorKind::DivisionByZero, "order of zero");
  const std::uint32_t n = q_ - 1;
  const std::uint32_t l = log_[a.value];
  // order = n / gcd(n, l)
  std::uint32_t x = n, y = l;
  while (y != 0) {
    std::uint32_t t = x % y;
    x = y;
    y = t;
  }
  return n / x;
}

std::vector<std::pair<FieldElement, FieldElement>> FieldSpec::torus_points() const {
  const std::uint32_t n = q_ - 1;
  std::vector<std::pair<FieldElement, FieldElement>> pts;
  pts.reserve(std::size_t{n} * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) pts.emplace_back(FieldElement{exp_[i]}, FieldElement{exp_[j]});
  }
  return pts;
}

}  // namespace toric
