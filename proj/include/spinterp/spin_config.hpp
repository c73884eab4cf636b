#pragma once

#include <bit>
#include <cstdint>

#include "spinterp/common.hpp"

namespace spinterp {

// A configuration sigma in {-1,+1}^N, packed into bits (bit set <-> +1).
// Site/bit index 0 is the first spin. N up to 20 at desk scale.
class SpinConfig {
 public:
  SpinConfig(int n, std::uint32_t bits) : n_(n), bits_(bits) {
    if (n < 0 || n > 31) throw TooLarge("spin configurations cap at 31 sites");
    if (n < 31 && (bits >> n) != 0) {
      throw Error("configuration bits exceed the declared size");
    }
  }

  int size() const { return n_; }
  std::uint32_t bits() const { return bits_; }
  int bit(int i) const { return static_cast<int>((bits_ >> i) & 1u); }
  int spin(int i) const { return bit(i) ? +1 : -1; }

  SpinConfig flipped_all() const {
    const std::uint32_t mask =
        n_ == 0 ? 0u : (n_ >= 31 ? ~0u : ((1u << n_) - 1u));
    return SpinConfig(n_, (~bits_) & mask);
  }

  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;

 private:
  int n_;
  std::uint32_t bits_;
};

inline int hamming_count(const SpinConfig& a, const SpinConfig& b) {
  if (a.size() != b.size()) {
    throw LengthMismatch("configurations differ in size");
  }
  return std::popcount(a.bits() ^ b.bits());
}

}  // namespace spinterp
