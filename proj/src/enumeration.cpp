#include "enumeration.hpp"

#include <algorithm>
#include <bit>

#include "toric/error.hpp"

namespace toric::detail {

namespace {

constexpr std::uint64_t kMaxChunksPerPivot = std::uint64_t{1} << 24;
constexpr std::uint64_t kMaxChunkSteps = std::uint64_t{1} << 62;

// p^d, or 0 once it exceeds limit.
std::uint64_t bounded_power(std::uint64_t p, std::uint32_t d, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    if (r > limit / p) return 0;
    r *= p;
  }
  return r;
}

}  // namespace

struct Enumerator::Backend {
  std::uint32_t n = 0;
  std::uint32_t p = 0;
  std::uint32_t e = 0;

  // Characteristic 2: e bit-planes of `words` 64-bit words per generator.
  std::size_t words = 0;
  std::uint64_t tail_mask = 0;
  std::vector<std::uint64_t> bits;

  // Odd characteristic: e digit planes of `width` entries per generator.
  std::size_t width = 0;
  std::vector<std::uint8_t> small;
  std::vector<std::uint32_t> wide;

};

Enumerator::Enumerator(const ToricCode& c, std::uint64_t target_chunk_steps) : code_(c) {
  const FieldSpec& f = c.field();
  p_ = f.p();
  e_ = f.e();
  const auto k = static_cast<std::uint32_t>(c.k());
  const std::size_t n = c.n();

  low_digits_ = 1;
  while (bounded_power(p_, low_digits_ + 1, target_chunk_steps) != 0) ++low_digits_;

  chunk_offsets_.assign(1, 0);
  for (std::uint32_t s = 0; s < k; ++s) {
    const std::uint32_t digits = s * e_;
    std::uint32_t low = std::min(digits, low_digits_);
    std::uint32_t high = digits - low;
    while (bounded_power(p_, high, kMaxChunksPerPivot) == 0) {
      --high;
      ++low;
    }
    if (bounded_power(p_, low, kMaxChunkSteps) == 0) {
      throw Error(ErrorKind::TooLarge, "message space too large for exhaustive search");
    }
    chunk_offsets_.push_back(chunk_offsets_.back() + bounded_power(p_, high, kMaxChunksPerPivot));
  }

  auto* b = new Backend;
  backend_ = b;
  b->n = static_cast<std::uint32_t>(n);
  b->p = p_;
  b->e = e_;

  // Generator g = j*e + r is u^r times row j.
  const std::size_t gens = std::size_t{k} * e_;
  std::vector<std::uint32_t> basis_log(e_);
  for (std::uint32_t r = 0; r < e_; ++r) basis_log[r] = f.log(f.basis(r));
  auto entry = [&](std::size_t g, std::size_t t) {
    const std::size_t row = g / e_;
    const std::size_t r = g % e_;
    return f.exp(std::int64_t{basis_log[r]} + c.generator_log(row, t)).value;
  };

  if (p_ == 2) {
    b->words = (n + 63) / 64;
    b->tail_mask = (n % 64 == 0) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (n % 64)) - 1);
    b->bits.assign(gens * e_ * b->words, 0);
    for (std::size_t g = 0; g < gens; ++g) {
      for (std::size_t t = 0; t < n; ++t) {
        const std::uint32_t v = entry(g, t);
        for (std::uint32_t plane = 0; plane < e_; ++plane) {
          if ((v >> plane) & 1u) {
            b->bits[(g * e_ + plane) * b->words + t / 64] |= std::uint64_t{1} << (t % 64);
          }
        }
      }
    }
  } else {
    b->width = (n + 63) / 64 * 64;
    const bool narrow = p_ < 128;
    if (narrow) {
      b->small.assign(gens * e_ * b->width, 0);
    } else {
      b->wide.assign(gens * e_ * b->width, 0);
    }
    for (std::size_t g = 0; g < gens; ++g) {
      for (std::size_t t = 0; t < n; ++t) {
        std::uint32_t v = entry(g, t);
        for (std::uint32_t plane = 0; plane < e_; ++plane) {
          const std::size_t at = (g * e_ + plane) * b->width + t;
          if (narrow) {
            b->small[at] = static_cast<std::uint8_t>(v % p_);
          } else {
            b->wide[at] = v % p_;
          }
          v /= p_;
        }
      }
    }
  }
}

Enumerator::~Enumerator() { delete backend_; }

std::uint64_t Enumerator::total_steps() const {
  std::uint64_t total = 0;
  const auto limit = std::numeric_limits<std::uint64_t>::max();
  for (std::uint32_t s = 0; s < code_.k(); ++s) {
    const std::uint64_t part = bounded_power(p_, s * e_, limit);
    if (part == 0 || total > limit - part) return limit;
    total += part;
  }
  return total;
}

Enumerator::Location Enumerator::locate(std::size_t chunk) const {
  const auto it = std::upper_bound(chunk_offsets_.begin(), chunk_offsets_.end(), chunk);
  const auto pivot = static_cast<std::uint32_t>(it - chunk_offsets_.begin() - 1);
  const std::uint64_t count = chunk_offsets_[pivot + 1] - chunk_offsets_[pivot];
  std::uint32_t high = 0;
  for (std::uint64_t c = 1; c < count; c *= p_) ++high;
  return Location{pivot, pivot * e_ - high, high, chunk - chunk_offsets_[pivot]};
}

namespace {

// kE / kW fix the plane count and words per plane at compile time when
// nonzero, letting the compiler unroll the update for common fields.
template <bool kHistogram, std::uint32_t kE, std::size_t kW>
ChunkOutcome run_binary(const std::uint64_t* gens, std::size_t words_rt, std::uint32_t e_rt, std::uint32_t n,
                        std::uint64_t tail_mask, const std::vector<std::size_t>& setup, std::uint32_t low,
                        std::uint64_t* histogram) {
  const std::uint32_t e = kE ? kE : e_rt;
  const std::size_t words = kW ? kW : words_rt;
  const std::size_t stride = std::size_t{e} * words;
  std::vector<std::uint64_t> buffer(stride, 0);
  std::uint64_t* state = buffer.data();
  for (std::size_t g : setup) {
    for (std::size_t i = 0; i < stride; ++i) state[i] ^= gens[g * stride + i];
  }
  auto weight = [&]() -> std::int64_t {
    std::int64_t zeros = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t any = 0;
      for (std::uint32_t r = 0; r < e; ++r) any |= state[r * words + w];
      if (w + 1 == words) any |= ~tail_mask;
      zeros += std::popcount(~any);
    }
    return std::int64_t{n} - zeros;
  };

  ChunkOutcome out;
  const std::uint64_t steps = std::uint64_t{1} << low;
  for (std::uint64_t t = 0; t < steps; ++t) {
    if (t != 0) {
      const std::uint64_t* src = gens + static_cast<std::size_t>(std::countr_zero(t)) * stride;
      for (std::size_t i = 0; i < stride; ++i) state[i] ^= src[i];
    }
    const std::int64_t w = weight();
    if constexpr (kHistogram) ++histogram[w];
    if (w < out.weight) {
      out.weight = w;
      out.step = t;
    }
  }
  out.steps = steps;
  return out;
}

template <class T, bool kHistogram, std::uint32_t kE>
ChunkOutcome run_digits(const T* gens, std::size_t width, std::uint32_t e_rt, std::uint32_t p, std::uint32_t n,
                        const std::vector<std::size_t>& setup, std::uint32_t low, std::uint64_t* histogram) {
  const std::uint32_t e = kE ? kE : e_rt;
  const std::size_t stride = std::size_t{e} * width;
  std::vector<T> buffer(stride, 0);
  std::vector<T> occupied(width, 0);
  T* state = buffer.data();
  T* any = occupied.data();
  const T modulus = static_cast<T>(p);
  auto add = [&](std::size_t g) {
    const T* src = gens + g * stride;
    for (std::size_t i = 0; i < stride; ++i) {
      const T s = static_cast<T>(state[i] + src[i]);
      state[i] = s >= modulus ? static_cast<T>(s - modulus) : s;
    }
  };
  // Adds generator g and returns the weight of the new state.
  auto add_weight = [&](std::size_t g) -> std::int64_t {
    const T* src = gens + g * stride;
    for (std::size_t t = 0; t < width; ++t) {
      const T s = static_cast<T>(state[t] + src[t]);
      state[t] = s >= modulus ? static_cast<T>(s - modulus) : s;
      any[t] = state[t];
    }
    for (std::uint32_t r = 1; r < e; ++r) {
      T* plane = state + r * width;
      const T* from = src + r * width;
      for (std::size_t t = 0; t < width; ++t) {
        const T s = static_cast<T>(plane[t] + from[t]);
        plane[t] = s >= modulus ? static_cast<T>(s - modulus) : s;
        any[t] |= plane[t];
      }
    }
    std::uint32_t nonzero = 0;
    for (std::size_t t = 0; t < width; ++t) nonzero += any[t] != 0;
    return nonzero;
  };
  for (std::size_t g : setup) add(g);

  ChunkOutcome out;
  std::uint64_t steps = 1;
  for (std::uint32_t i = 0; i < low; ++i) steps *= p;
  std::vector<std::uint32_t> counter(low + 1, 0);
  {
    std::int64_t w = 0;
    for (std::size_t t = 0; t < width; ++t) {
      T v = 0;
      for (std::uint32_t r = 0; r < e; ++r) v |= state[r * width + t];
      w += v != 0;
    }
    if constexpr (kHistogram) ++histogram[w];
    out.weight = w;
    out.step = 0;
  }
  for (std::uint64_t t = 1; t < steps; ++t) {
    std::size_t digit = 0;
    while (counter[digit] == p - 1) counter[digit++] = 0;
    ++counter[digit];
    const std::int64_t w = add_weight(digit);
    if constexpr (kHistogram) ++histogram[w];
    if (w < out.weight) {
      out.weight = w;
      out.step = t;
    }
  }
  (void)n;
  out.steps = steps;
  return out;
}

template <bool kHistogram>
ChunkOutcome dispatch_binary(const std::uint64_t* gens, std::size_t words, std::uint32_t e, std::uint32_t n,
                             std::uint64_t tail_mask, const std::vector<std::size_t>& setup, std::uint32_t low,
                             std::uint64_t* histogram) {
  if (e == 2 && words == 1) return run_binary<kHistogram, 2, 1>(gens, words, e, n, tail_mask, setup, low, histogram);
  if (e == 3 && words == 1) return run_binary<kHistogram, 3, 1>(gens, words, e, n, tail_mask, setup, low, histogram);
  if (e == 4 && words == 4) return run_binary<kHistogram, 4, 4>(gens, words, e, n, tail_mask, setup, low, histogram);
  return run_binary<kHistogram, 0, 0>(gens, words, e, n, tail_mask, setup, low, histogram);
}

template <class T, bool kHistogram>
ChunkOutcome dispatch_digits(const T* gens, std::size_t width, std::uint32_t e, std::uint32_t p, std::uint32_t n,
                             const std::vector<std::size_t>& setup, std::uint32_t low, std::uint64_t* histogram) {
  if (e == 1) return run_digits<T, kHistogram, 1>(gens, width, e, p, n, setup, low, histogram);
  if (e == 2) return run_digits<T, kHistogram, 2>(gens, width, e, p, n, setup, low, histogram);
  return run_digits<T, kHistogram, 0>(gens, width, e, p, n, setup, low, histogram);
}

}  // namespace

ChunkOutcome Enumerator::run(std::size_t chunk, std::vector<std::uint64_t>* histogram) const {
  const Location loc = locate(chunk);
  const Backend& b = *backend_;

  // Start from the pivot row plus the fixed high digits.
  std::vector<std::size_t> setup{std::size_t{loc.pivot} * e_};
  std::uint64_t value = loc.value;
  for (std::uint32_t d = 0; d < loc.high; ++d) {
    const std::uint64_t digit = value % p_;
    value /= p_;
    for (std::uint64_t i = 0; i < digit; ++i) setup.push_back(loc.low + d);
  }

  std::uint64_t* hist = histogram ? histogram->data() : nullptr;
  if (p_ == 2) {
    return hist ? dispatch_binary<true>(b.bits.data(), b.words, e_, b.n, b.tail_mask, setup, loc.low, hist)
                : dispatch_binary<false>(b.bits.data(), b.words, e_, b.n, b.tail_mask, setup, loc.low, hist);
  }
  if (p_ < 128) {
    return hist ? dispatch_digits<std::uint8_t, true>(b.small.data(), b.width, e_, p_, b.n, setup, loc.low, hist)
                : dispatch_digits<std::uint8_t, false>(b.small.data(), b.width, e_, p_, b.n, setup, loc.low, hist);
  }
  return hist ? dispatch_digits<std::uint32_t, true>(b.wide.data(), b.width, e_, p_, b.n, setup, loc.low, hist)
              : dispatch_digits<std::uint32_t, false>(b.wide.data(), b.width, e_, p_, b.n, setup, loc.low, hist);
}

std::vector<FieldElement> Enumerator::message(std::size_t chunk, std::uint64_t step) const {
  const Location loc = locate(chunk);
  const FieldSpec& f = code_.field();
  std::vector<std::vector<std::uint32_t>> digits(code_.k(), std::vector<std::uint32_t>(e_, 0));
  digits[loc.pivot][0] = 1;

  // Digit d of the Gray state after `step` steps is (n_d - n_{d+1}) mod p.
  std::vector<std::uint32_t> base(loc.low + 1, 0);
  std::uint64_t t = step;
  for (std::uint32_t d = 0; d < loc.low; ++d) {
    base[d] = static_cast<std::uint32_t>(t % p_);
    t /= p_;
  }
  auto place = [&](std::uint32_t d, std::uint32_t value) { digits[d / e_][d % e_] = value; };
  for (std::uint32_t d = 0; d < loc.low; ++d) place(d, (base[d] + p_ - base[d + 1]) % p_);
  std::uint64_t value = loc.value;
  for (std::uint32_t d = 0; d < loc.high; ++d) {
    place(loc.low + d, static_cast<std::uint32_t>(value % p_));
    value /= p_;
  }

  std::vector<FieldElement> out(code_.k());
  for (std::size_t j = 0; j < code_.k(); ++j) {
    std::uint32_t code = 0;
    for (std::uint32_t r = e_; r-- > 0;) code = code * p_ + digits[j][r];
    out[j] = f.element(code);
  }
  return out;
}

}  // namespace toric::detail
