#include <gtest/gtest.h>

#include <cmath>

#include "wiregrid/philox.hpp"

namespace wiregrid {
namespace {

using C = Philox4x32::Counter;
using K = Philox4x32::Key;

// Reference outputs of philox4x32-10 from the Random123 distribution.
TEST(Philox, KnownAnswerZero) {
  constexpr C out = Philox4x32::generate({0, 0, 0, 0}, {0, 0});
  static_assert(out[0] == 0x6627e8d5u);
  EXPECT_EQ(out, (C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
  const C out = Philox4x32::generate({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u});
  EXPECT_EQ(out, (C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
  const C out = Philox4x32::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out, (C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Philox, SeedSplitsIntoKeyWords) {
  EXPECT_EQ(Philox4x32::key_from_seed(0x0123456789abcdefull), (K{0x89abcdefu, 0x01234567u}));
}

TEST(Philox, UniformRangeAndMoments) {
  double sum = 0, sq = 0;
  constexpr int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = Philox4x32::uniform(42, static_cast<std::uint64_t>(i));
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sq / n - (sum / n) * (sum / n), 1.0 / 12, 1e-3);
}

TEST(Philox, DifferentSeedsDiffer) {
  int same = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) same += Philox4x32::uniform(1, i) == Philox4x32::uniform(2, i);
  EXPECT_EQ(same, 0);
  EXPECT_EQ(Philox4x32::uniform(9, 12345), Philox4x32::uniform(9, 12345));
}

}  // namespace
}  // namespace wiregrid
