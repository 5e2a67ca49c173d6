#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace minimax_boundary {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
/// the output block is a pure function of (counter, key).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
};

/// Standard normal draws addressed by (seed, stream, replicate, index).
/// Each Philox block yields two 53-bit uniforms and, by Box-Muller, two normals.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint32_t stream, std::uint64_t replicate)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream),
        replicate_(replicate) {}

  double operator()(std::uint64_t index) {
    const std::uint64_t pair = index / 2;
    if (pair != cached_pair_) {
      fill(pair);
      cached_pair_ = pair;
    }
    return cached_[index % 2];
  }

 private:
  static double uniform53(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;  // open interval (0, 1)
  }

  void fill(std::uint64_t pair) {
    // counter: [pair lo, pair hi ^ stream tag, replicate lo, replicate hi]
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(pair),
                                  static_cast<std::uint32_t>(pair >> 32) ^ (stream_ << 16),
                                  static_cast<std::uint32_t>(replicate_),
                                  static_cast<std::uint32_t>(replicate_ >> 32)};
    const auto out = Philox4x32::block(ctr, key_);
    const double u1 = uniform53(out[0], out[1]);
    const double u2 = uniform53(out[2], out[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_ = {radius * std::cos(angle), radius * std::sin(angle)};
  }

  Philox4x32::Key key_;
  std::uint32_t stream_;
  std::uint64_t replicate_;
  std::uint64_t cached_pair_ = ~std::uint64_t{0};
  std::array<double, 2> cached_{};
};

}  // namespace minimax_boundary
