#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace mfw {

/// Counter-based 64-bit generator. Draw i of a stream is a pure function of
/// (key, i), and keys are derived from (seed, tag, indices...), so every
/// stochastic draw in an experiment is attributable to where it was made.
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key = 0) : key_(Mix(key)) {}

  /// Stream keyed by a seed and a path of indices, e.g.
  /// Stream(seed, {kNoiseTag, round}).
  static CounterRng Stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t k = Mix(seed ^ 0x6a09e667f3bcc909ULL);
    for (std::uint64_t p : path) {
      k = Mix(k ^ Mix(p + 0x9e3779b97f4a7c15ULL));
    }
    return CounterRng(k);
  }

  result_type operator()() { return Mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  std::uint64_t counter() const { return counter_; }

 private:
  // splitmix64 finalizer
  static constexpr std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Stream tags used by the algorithms and the harness.
enum StreamTag : std::uint64_t {
  kTagInstance = 1,
  kTagObjective = 2,
  kTagGradientNoise = 3,
  kTagPermutation = 4,
  kTagSphere = 5,
  kTagRoundSample = 6,
  kTagDirections = 7,
};

}  // namespace mfw
