#pragma once

#include <array>
#include <cstdint>

namespace mianneal {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// Output is a pure function of (key, counter), so any (seed, stream, index)
// triple can be evaluated independently of evaluation order or thread.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      ctr = single_round(ctr, key);
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static Counter single_round(const Counter& c, const Key& k) noexcept {
    const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

// Purpose tags keep the initialization and update streams disjoint.
enum class StreamPurpose : std::uint32_t { kInit = 0, kUpdate = 1 };

// One random draw for a single flip attempt.
struct AttemptDraw {
  std::uint32_t site;
  double uniform;  // in [0, 1)
};

// Random numbers keyed by (seed, stream, index). A stream is one layer (or
// one SA chain); index counts attempts or initialization blocks within it.
class StreamRng {
 public:
  explicit StreamRng(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  Philox4x32::Counter block(StreamPurpose purpose, std::uint32_t stream,
                            std::uint64_t index) const noexcept {
    return Philox4x32::generate({static_cast<std::uint32_t>(index),
                                 static_cast<std::uint32_t>(index >> 32), stream,
                                 static_cast<std::uint32_t>(purpose)},
                                key_);
  }

  // Site uniform on [0, n_sites) by multiply-shift; uniform from 53 bits.
  AttemptDraw attempt(std::uint32_t stream, std::uint64_t index,
                      std::uint32_t n_sites) const noexcept {
    const auto b = block(StreamPurpose::kUpdate, stream, index);
    const auto site = static_cast<std::uint32_t>((std::uint64_t{b[0]} * n_sites) >> 32);
    const std::uint64_t bits = (std::uint64_t{b[1]} << 21) ^ (std::uint64_t{b[2]} >> 11);
    return {site, static_cast<double>(bits & ((std::uint64_t{1} << 53) - 1)) * 0x1.0p-53};
  }

 private:
  Philox4x32::Key key_;
};

}  // namespace mianneal
