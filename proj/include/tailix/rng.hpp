#ifndef TAILIX_RNG_HPP
#define TAILIX_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace tailix {

// 64-bit mixing finalizer from SplitMix64 (Steele, Lea & Flood / Vigna).
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/**
 * Deterministic seeded random stream.
 *
 * The generator is frozen so sequences can be reproduced in any language:
 *   - engine: MT19937-64 (Matsumoto & Nishimura, as specified by the C++
 *     standard), seeded with mix64(seed ^ mix64(stream_id)) where mix64 is
 *     the SplitMix64 finalizer above;
 *   - uniforms: u = (floor(x / 2^11) + 1/2) * 2^-53 for each 64-bit engine
 *     output x, which lands strictly inside (0, 1).
 *
 * Distinct stream ids under the same seed give statistically independent
 * sequences (one stream per Monte Carlo replication). A stream is cheap to
 * copy but must not be shared between concurrent consumers.
 */
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed),
        stream_id_(stream_id),
        engine_(mix64(seed ^ mix64(stream_id))) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform draw in the open interval (0,1); never exactly 0 or 1, so
  // logarithms of u and 1-u stay finite.
  double next_uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::vector<double> uniforms(std::size_t count) {
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(next_uniform01());
    return out;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace tailix

#endif  // TAILIX_RNG_HPP
