#pragma once

#include <cstdint>
#include <cmath>

namespace tailcert {

// Counter-based random number generation. Every draw is a pure function of
// (key, counter), so any replication/coordinate pair can be generated in any
// order on any worker and the stream is identical.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Independent stream key for a (seed, stream_id) pair.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream_id) {
  return mix64(mix64(seed ^ 0x5851f42d4c957f2dULL) + stream_id * kGolden);
}

// Uniform in the open interval (0, 1): 53 usable bits, offset away from 0 and 1.
inline double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

struct CounterRng {
  std::uint64_t key = 0;

  std::uint64_t bits(std::uint64_t counter) const {
    return mix64(key + counter * kGolden);
  }
  double uniform(std::uint64_t counter) const { return to_unit(bits(counter)); }
  // Standard exponential via inverse CDF; uniform is strictly inside (0,1).
  double exponential(std::uint64_t counter) const {
    return -std::log(uniform(counter));
  }
};

// Sequential view over a counter stream, for draws whose count is data
// dependent (e.g. Poisson arrival loops). Its consumption never affects
// other streams.
struct StreamCursor {
  CounterRng rng;
  std::uint64_t next = 0;
  double uniform() { return rng.uniform(next++); }
  double exponential() { return -std::log(uniform()); }
};

// Poisson draw by accumulating exponential arrivals up to time lambda.
// Stable for lambda up to ~1e6 (cost is O(lambda)).
inline std::int64_t poisson_draw(StreamCursor& cur, double lambda) {
  std::int64_t n = 0;
  double acc = cur.exponential();
  while (acc <= lambda) {
    ++n;
    acc += cur.exponential();
  }
  return n;
}

}  // namespace tailcert
