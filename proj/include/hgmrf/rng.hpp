#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace hgmrf {

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t splitmix_mix(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Derives an independent stream key from (key, word). Used for sub-streams
// (signal vs noise) and per-trial seeds, so results are independent of
// scheduling and draw order across streams.
constexpr std::uint64_t seed_fold(std::uint64_t key, std::uint64_t word) noexcept {
  return splitmix_mix(key + kSplitMixGamma) ^
         splitmix_mix(word * kSplitMixGamma + 0x632BE59BD9B4E019ull);
}

// Counter-based generator: value i is a pure function of (key, i), so any
// draw sequence is reproducible bit-for-bit from its key alone.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t next_u64() noexcept {
    return splitmix_mix(key_ + ++counter_ * kSplitMixGamma);
  }

  // Uniform in the open interval (0, 1); never 0, so log is safe.
  double next_uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1p-53 + 0x1p-54;
  }

  // Box-Muller pair of independent standard normals.
  std::pair<double, double> next_normal_pair() noexcept {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  double next_normal() noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    auto [a, b] = next_normal_pair();
    spare_ = b;
    have_spare_ = true;
    return a;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Stream ids for decorrelated sub-streams.
inline constexpr std::uint64_t kStreamSignal = 1;
inline constexpr std::uint64_t kStreamNoise = 2;
inline constexpr std::uint64_t kStreamCalibration = 3;
inline constexpr std::uint64_t kStreamEstimateH0 = 4;
inline constexpr std::uint64_t kStreamEstimateH1 = 5;
inline constexpr std::uint64_t kStreamConvergence = 6;

}  // namespace hgmrf
