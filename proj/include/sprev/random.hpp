#pragma once

// Seeded generators with fixed, published output sequences. Everything that
// needs randomness goes through these so results are reproducible across
// platforms and standard library implementations.
//
// splitmix64: http://xorshift.di.unimi.it/splitmix64.c
// xoshiro256**: https://prng.di.unimi.it/xoshiro256starstar.c

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace sprev {

class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += kGamma);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Advance as if next() had been called `steps` times.
  void jump(std::uint64_t steps) noexcept { state_ += steps * kGamma; }

 private:
  std::uint64_t state_;
};

// Seed for an independent stream, e.g. one per dimension or per fold.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  SplitMix64 sm(seed);
  sm.jump(stream);
  return sm.next();
}

class Xoshiro256ss {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256ss(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return next(); }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) from the top 53 bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) by rejection, so no modulo bias.
  std::uint64_t below(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

// Fisher-Yates over the first `count` positions: afterwards items[0..count)
// is a uniform sample without replacement, in selection order.
template <typename T>
void partial_shuffle(std::span<T> items, std::size_t count, Xoshiro256ss& rng) {
  const std::size_t n = items.size();
  if (count > n) count = n;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    using std::swap;
    swap(items[i], items[j]);
  }
}

}  // namespace sprev
