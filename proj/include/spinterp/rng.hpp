#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string_view>

namespace spinterp {

// 64-bit avalanche (SplitMix64 finalizer).
inline std::uint64_t mix_bits(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) {
  return mix_bits(mix_bits(seed + kGoldenGamma) + kGoldenGamma * (stream + 1));
}

// Derives an independent sub-seed from (master seed, task name, index).
// Adding tasks never perturbs the streams of existing ones.
std::uint64_t derive_seed(std::uint64_t master, std::string_view task,
                          std::uint64_t index = 0);

// Counter-based stream of i.i.d. standard normals keyed by (seed, stream).
// A fresh stream with the same key reproduces the same values bit for bit;
// distinct keys give statistically independent streams.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream)
      : key_(stream_key(seed, stream)) {}

  // Uniform in (0, 1].
  double uniform() { return ((word() >> 11) + 1) * 0x1.0p-53; }

  // Standard normal (Box-Muller, pairs cached).
  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  void fill(std::span<double> out) {
    for (double& v : out) v = next();
  }

 private:
  std::uint64_t word() { return mix_bits(key_ + kGoldenGamma * (++counter_)); }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace spinterp
