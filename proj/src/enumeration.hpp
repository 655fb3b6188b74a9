#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "toric/code.hpp"

namespace toric::detail {

/// Best weight seen inside one chunk and the Gray step where it occurred.
struct ChunkOutcome {
  std::int64_t weight = std::numeric_limits<std::int64_t>::max();
  std::uint64_t step = 0;
  std::uint64_t steps = 0;
};

/// Projective message space split into independent chunks.
///
/// Sub-space s fixes coordinate s to 1, coordinates above s to 0, and runs the
/// s*e base-p digits of coordinates 0..s-1 (digit d belongs to coordinate d/e
/// and multiplies u^(d%e)). The low digits of a chunk follow a p-ary Gray code
/// where step t adds the generator of digit v_p(t); the high digits are fixed
/// by the chunk number.
class Enumerator {
 public:
  explicit Enumerator(const ToricCode& c, std::uint64_t target_chunk_steps = std::uint64_t{1} << 20);
  ~Enumerator();
  Enumerator(const Enumerator&) = delete;
  Enumerator& operator=(const Enumerator&) = delete;

  std::size_t chunk_count() const { return chunk_offsets_.back(); }
  /// Number of projective codewords (saturating).
  std::uint64_t total_steps() const;
  std::uint32_t low_digits() const { return low_digits_; }

  /// Runs one chunk; when histogram is non-null it must have n+1 slots and is
  /// incremented once per codeword weight.
  ChunkOutcome run(std::size_t chunk, std::vector<std::uint64_t>* histogram) const;

  /// Message visited at (chunk, step).
  std::vector<FieldElement> message(std::size_t chunk, std::uint64_t step) const;

 private:
  struct Backend;
  struct Location {
    std::uint32_t pivot;
    std::uint32_t low;   // Gray digits
    std::uint32_t high;  // fixed digits
    std::uint64_t value; // value of the fixed digits
  };
  Location locate(std::size_t chunk) const;

  const ToricCode& code_;
  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
  std::uint32_t low_digits_ = 0;
  std::vector<std::size_t> chunk_offsets_;  // per pivot, prefix sums
  Backend* backend_ = nullptr;
};

}  // namespace toric::detail
