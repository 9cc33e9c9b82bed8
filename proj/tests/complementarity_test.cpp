#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "wiregrid/complementarity.hpp"

namespace wiregrid {
namespace {

TEST(Visibility, FromIntensities) {
  EXPECT_DOUBLE_EQ(visibility_from_intensities({3.0, 1.0}), 0.5);
  EXPECT_DOUBLE_EQ(visibility_from_intensities({1.0, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(visibility_from_intensities({2.0, 2.0}), 0.0);
  EXPECT_THROW(visibility_from_intensities({1.0, 2.0}), DomainError);
  EXPECT_THROW(visibility_from_intensities({0.0, 0.0}), DomainError);
  EXPECT_THROW(visibility_from_intensities({1.0, -1.0}), DomainError);
}

TEST(Visibility, NominalLowerBound) {
  const double x = 0.0012401, y = 6 * 32e-6 / 2.55e-3;
  EXPECT_NEAR(visibility_lower_bound(x, y), 0.96996, 5e-5);
  const auto in = square_profile_intensities(0.00124, y, 1e6, 1.0);
  EXPECT_NEAR(in.i_min, 1240 / 0.0752941, 1.0);
  EXPECT_NEAR(in.i_max, 998760 / (1 - 0.0752941), 1.0);
}

TEST(Visibility, LimitsAndDomain) {
  EXPECT_DOUBLE_EQ(visibility_lower_bound(0.0, 0.2), 1.0);
  EXPECT_NEAR(visibility_lower_bound(0.2, 0.2), 0.0, 1e-15);  // uniform share
  EXPECT_THROW(visibility_lower_bound(0.3, 0.2), DomainError);
  EXPECT_THROW(visibility_lower_bound(0.1, 0.0), DomainError);
  EXPECT_THROW(visibility_lower_bound(0.1, 1.0), DomainError);
  EXPECT_THROW(visibility_lower_bound(-0.1, 0.5), DomainError);
}

TEST(Visibility, RoundTripThroughIntensities) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uy(0.01, 0.99), u(0, 1);
  for (int i = 0; i < 5000; ++i) {
    const double y = uy(rng);
    const double x = u(rng) * y;
    const double scale = 1 + 1e6 * u(rng), area = 1e-6 + u(rng);
    const double v = visibility_from_intensities(square_profile_intensities(x, y, scale, area));
    EXPECT_NEAR(v, visibility_lower_bound(x, y), 1e-12);
  }
}

TEST(Visibility, SlopeMatchesFiniteDifference) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> uy(0.05, 0.95), u(0.05, 0.9);
  for (int i = 0; i < 500; ++i) {
    const double y = uy(rng), x = u(rng) * y, h = 1e-7;
    const double fd = (visibility_lower_bound(x + h, y) - visibility_lower_bound(x - h, y)) / (2 * h);
    EXPECT_NEAR(visibility_lower_bound_slope(x, y), fd, 1e-5 * std::abs(fd) + 1e-8);
    EXPECT_LT(visibility_lower_bound_slope(x, y), 0.0);
  }
}

TEST(WhichWay, ClassicalBound) {
  EXPECT_DOUBLE_EQ(classical_whichway(0.0), 1.0);
  EXPECT_NEAR(classical_whichway(0.0012401), 0.9975198, 1e-7);
  EXPECT_DOUBLE_EQ(classical_whichway(0.5), 0.0);
  EXPECT_THROW(classical_whichway(0.51), DomainError);
  EXPECT_EQ(quantum_whichway(true), 0.0);
  EXPECT_EQ(quantum_whichway(false), 0.0);
}

TEST(Report, NominalNumbers) {
  const ComplementarityReport r = grid_report(validate_config({}));
  EXPECT_EQ(r.quantum_whichway, 0.0);
  EXPECT_NEAR(r.visibility_lower, 0.96996, 5e-5);
  EXPECT_NEAR(r.quantum_sum, r.visibility_lower * r.visibility_lower, 1e-15);
  EXPECT_NEAR(r.classical_sum, 0.99504 + 0.94082, 5e-4);
  EXPECT_TRUE(r.quantum_inequality_satisfied);
  EXPECT_TRUE(r.classical_sum_below_two);
}

TEST(Report, InequalityFlags) {
  const auto r = complementarity_report(1.0, 1.0, 1.0);
  EXPECT_FALSE(r.quantum_inequality_satisfied);
  EXPECT_FALSE(r.classical_sum_below_two);
  EXPECT_THROW(complementarity_report(1.1, 0.0, 0.0), DomainError);
  EXPECT_THROW(complementarity_report(0.0, 0.0, -0.1), DomainError);
}

TEST(Sweep, RowsInAndOutOfDomain) {
  const ValidConfig vc = validate_config({});
  // Sweep values straddle b = d, where validation must fail.
  const std::vector<double> bs{1e-6, 32e-6, 150e-6, 318e-6, 319e-6, 400e-6};
  const auto rows = sweep_thickness(vc, bs);
  ASSERT_EQ(rows.size(), bs.size());
  EXPECT_TRUE(rows[0].status.empty());
  EXPECT_NEAR(*rows[0].visibility_lower, 1.0, 1e-4);
  EXPECT_NEAR(*rows[1].quantum_sum, 0.94082, 1e-4);
  double last_v = 1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    ASSERT_TRUE(rows[i].visibility_lower.has_value()) << rows[i].status;
    EXPECT_LT(*rows[i].visibility_lower, last_v);
    last_v = *rows[i].visibility_lower;
    EXPECT_LT(*rows[i].classical_sum, 2.0);
    EXPECT_LE(*rows[i].quantum_sum, 1.0);
  }
  EXPECT_NE(rows[4].status.find("invalid config"), std::string::npos);
  EXPECT_FALSE(rows[5].visibility_lower.has_value());
  EXPECT_THROW(sweep_thickness(vc, {2e-6, 1e-6}), DomainError);
}

}  // namespace
}  // namespace wiregrid
