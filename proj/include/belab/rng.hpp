#ifndef BELAB_RNG_HPP
#define BELAB_RNG_HPP

#include <cstdint>

namespace belab {

// Counter-based random bits keyed by (seed, stream, counter).
//
// Each (seed, stream) pair selects an independent splitmix64 sequence and
// `counter` indexes directly into it, so draws are pure functions of their
// key: workers can evaluate any subset of (stream, counter) cells in any
// order and always see the same values.
inline std::uint64_t rng_mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rng_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const std::uint64_t key = rng_mix64(seed + 0x9E3779B97F4A7C15ULL) ^
                            rng_mix64(stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL);
  return rng_mix64(key + (counter + 1) * 0x9E3779B97F4A7C15ULL);
}

// Uniform double in [0, 1) using the top 53 bits.
inline double rng_uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return static_cast<double>(rng_bits(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Random sign, +1 or -1 with equal probability.
inline int rng_sign(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return (rng_bits(seed, stream, counter) >> 63) ? 1 : -1;
}

// Derives a fresh seed for independent sub-experiments (e.g. repetitions).
inline std::uint64_t rng_derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return rng_mix64(seed ^ rng_mix64(tag + 0xA0761D6478BD642FULL));
}

} // namespace belab

#endif
