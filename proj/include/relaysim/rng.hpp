#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace relaysim {

/// Seeded generator with pure substream derivation: derive(label) depends
/// only on (seed, label), never on how many numbers were already drawn.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  Rng derive(std::string_view label) const;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) noexcept;

  bool bernoulli(double p) noexcept { return uniform() < p; }

  static std::uint64_t mix(std::uint64_t x) noexcept;

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace relaysim
