#pragma once

#include <cstdint>

namespace riqs {

// Counter-based generator: the k-th output of stream (seed, stream) is
// splitmix64(key + k * GAMMA), with key itself derived from seed and stream
// by the same mixer. Pure integer arithmetic, so sequences are reproducible
// bit-for-bit across platforms, and substreams are independent of the order
// in which they are consumed.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream = 0)
      : key_(mix(mix(seed + GAMMA) ^ mix(stream + 2 * GAMMA))) {}

  uint64_t next_u64() { return mix(key_ + (++counter_) * GAMMA); }

  // uniform in [0,1) with 53 random mantissa bits
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n)
  uint64_t next_below(uint64_t n) {
    // rejection-free is fine here: n is tiny compared to 2^64
    return next_u64() % n;
  }

 private:
  static constexpr uint64_t GAMMA = 0x9E3779B97F4A7C15ull;

  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace riqs
