#include <gtest/gtest.h>

#include <random>

#include "dronecell/geometry.hpp"
#include "support/oracles.hpp"

using namespace dronecell;

TEST(EnclosingCircle, SinglePointHasZeroRadius)
{
    const std::vector<UserLocation> pts{{3.0, -4.0}};
    const auto c = minimum_enclosing_circle(pts);
    EXPECT_EQ(c.center, pts[0]);
    EXPECT_EQ(c.radius, 0.0);
}

TEST(EnclosingCircle, CoincidentPoints)
{
    const std::vector<UserLocation> pts(5, UserLocation{1.5, 2.5});
    const auto c = minimum_enclosing_circle(pts);
    EXPECT_EQ(c.radius, 0.0);
}

TEST(EnclosingCircle, ThreePointsOnACircle)
{
    // Acute triangle inscribed in the circle of radius 5 about (2, 1).
    std::vector<UserLocation> pts;
    for (double deg : {10.0, 130.0, 250.0})
        pts.push_back({2.0 + 5.0 * std::cos(deg * M_PI / 180), 1.0 + 5.0 * std::sin(deg * M_PI / 180)});
    const auto c = minimum_enclosing_circle(pts);
    EXPECT_NEAR(c.center.x, 2.0, 1e-9);
    EXPECT_NEAR(c.center.y, 1.0, 1e-9);
    EXPECT_NEAR(c.radius, 5.0, 1e-9);
}

TEST(EnclosingCircle, CollinearPointsUseTheExtremes)
{
    const std::vector<UserLocation> pts{{0, 0}, {1, 1}, {4, 4}, {2, 2}, {-2, -2}};
    const auto c = minimum_enclosing_circle(pts);
    EXPECT_NEAR(c.center.x, 1.0, 1e-12);
    EXPECT_NEAR(c.center.y, 1.0, 1e-12);
    EXPECT_NEAR(c.radius, 3.0 * std::sqrt(2.0), 1e-12);
}

TEST(EnclosingCircle, MatchesBruteForceOnRandomSets)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-1000.0, 1000.0);
    std::uniform_int_distribution<int> size(1, 14);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<UserLocation> pts(size(rng));
        for (auto& p : pts)
            p = {coord(rng), coord(rng)};
        const auto fast = minimum_enclosing_circle(pts);
        const auto slow = oracle::brute_force_enclosing_circle(pts);
        EXPECT_NEAR(fast.radius, slow.radius, 1e-7);
        for (const auto& p : pts)
            EXPECT_LE(distance(fast.center, p), fast.radius + 1e-9);
    }
}
