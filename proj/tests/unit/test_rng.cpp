#include <cmath>
#include <set>

#include "doctest.h"
#include "mianneal/rng.hpp"

using mianneal::Philox4x32;
using mianneal::StreamPurpose;
using mianneal::StreamRng;

TEST_CASE("philox4x32-10 known-answer vectors") {
  CHECK(Philox4x32::generate({0, 0, 0, 0}, {0, 0}) ==
        Philox4x32::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                             {0xffffffff, 0xffffffff}) ==
        Philox4x32::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                             {0xa4093822, 0x299f31d0}) ==
        Philox4x32::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("stream draws are pure functions of seed, stream and index") {
  const StreamRng a(42), b(42), c(43);
  CHECK(a.block(StreamPurpose::kUpdate, 3, 99) == b.block(StreamPurpose::kUpdate, 3, 99));
  CHECK(a.block(StreamPurpose::kUpdate, 3, 99) != c.block(StreamPurpose::kUpdate, 3, 99));
  CHECK(a.block(StreamPurpose::kUpdate, 3, 99) != a.block(StreamPurpose::kUpdate, 4, 99));
  CHECK(a.block(StreamPurpose::kUpdate, 3, 99) != a.block(StreamPurpose::kInit, 3, 99));
  CHECK(a.block(StreamPurpose::kUpdate, 0, 1) != a.block(StreamPurpose::kUpdate, 0, std::uint64_t{1} << 32 | 1));
}

TEST_CASE("attempt draws cover sites uniformly with uniforms in [0, 1)") {
  const StreamRng rng(7);
  constexpr std::uint32_t n = 10;
  constexpr int draws = 100000;
  std::array<int, n> counts{};
  double sum = 0.0;
  for (int i = 0; i < draws; ++i) {
    const auto d = rng.attempt(5, i, n);
    REQUIRE(d.site < n);
    REQUIRE(d.uniform >= 0.0);
    REQUIRE(d.uniform < 1.0);
    ++counts[d.site];
    sum += d.uniform;
  }
  for (int c : counts) CHECK(std::abs(c - draws / 10) < 500);
  CHECK(std::abs(sum / draws - 0.5) < 0.005);
}

TEST_CASE("single-site attempts always pick site zero") {
  const StreamRng rng(1);
  for (int i = 0; i < 100; ++i) CHECK(rng.attempt(0, i, 1).site == 0);
}
