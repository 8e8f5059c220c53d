#include "polygeom/constructors.hpp"
#include "polygeom/geom_counters.hpp"

#include <gtest/gtest.h>

using namespace polygeom;

namespace {

std::uint64_t brute_index_oracle(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t a = 1; a < n; ++a)
        for (std::uint64_t b = a + 1; b < n; ++b)
            for (std::uint64_t d = b + 1; d < n; ++d)
                for (std::uint64_t e = d + 1; e < n; ++e)
                    if ((a + b + d + e) % n == 0) ++c;
    return c;
}

}  // namespace

TEST(ApGrid, AdditiveSmall) {
    const auto g = ap_grid(GridKind::additive, 3);
    EXPECT_EQ(g.sets.sets[0], integer_range(1, 3));
    EXPECT_EQ(g.sets.sets[3], integer_range(-9, -3));
    EXPECT_EQ(g.expected_count, 27u);
    EXPECT_EQ(count_naive(g.poly, g.sets).count, 27u);
    EXPECT_EQ(ap_grid(GridKind::additive, 1).expected_count, 1u);
    EXPECT_EQ(count_naive(ap_grid(GridKind::additive, 1).poly, ap_grid(GridKind::additive, 1).sets).count, 1u);
}

TEST(ApGrid, MultiplicativeMatchesNaive) {
    for (std::int64_t n : {1, 2, 3, 5}) {
        const auto g = ap_grid(GridKind::multiplicative, n);
        EXPECT_EQ(g.poly.to_string(), "x*y*s*t - 1");
        EXPECT_EQ(g.expected_count, static_cast<std::uint64_t>(n * n * n));
        EXPECT_EQ(count_naive(g.poly, g.sets).count, g.expected_count) << n;
        EXPECT_EQ(count_fiber(g.poly, g.sets).count, g.expected_count) << n;
    }
    const auto g = ap_grid(GridKind::multiplicative, 2);
    EXPECT_EQ(g.sets.sets[0], (std::vector<Rational>{2, 4}));
    EXPECT_EQ(g.sets.sets[3].front(), Rational(1, 64));
    EXPECT_EQ(g.sets.sets[3].back(), Rational(1, 8));
}

TEST(ApGrid, RejectsEmpty) {
    EXPECT_THROW(ap_grid(GridKind::additive, 0), Error);
}

TEST(IndexOracle, SmallValues) {
    EXPECT_EQ(coplanar_index_oracle(5), 1u);
    EXPECT_EQ(coplanar_index_oracle(6), 1u);  // {1,2,4,5}
    EXPECT_THROW(coplanar_index_oracle(4), Error);
}

TEST(IndexOracle, MatchesBruteForce) {
    for (std::uint64_t n = 5; n <= 40; ++n) EXPECT_EQ(coplanar_index_oracle(n), brute_index_oracle(n)) << n;
}

TEST(MomentCurve, Points) {
    const auto pts = moment_curve_points(3, Rational(1, 2));
    ASSERT_EQ(pts.size(), 3u);
    EXPECT_EQ(pts[2], (Point<Rational, 3>{Rational(3, 2), Rational(9, 4), Rational(27, 8)}));
}

TEST(MomentCurve, NoCoplanarQuadruplesOrCollinearTriples) {
    EXPECT_EQ(coplanar_naive(moment_curve_points(4)).count, 0u);
    EXPECT_EQ(coplanar_naive(moment_curve_points(10)).count, 0u);
    const auto big = coplanar_fast(moment_curve_points(100));
    EXPECT_EQ(big.count, 0u);
    EXPECT_EQ(big.max_per_line, 2u);
    EXPECT_EQ(big.max_per_plane, 3u);
}

TEST(EllipticConfiguration, FloatCountMatchesOracle) {
    const auto cfg = EllipticConfig::make();
    for (std::size_t n : {8, 12, 16, 24, 32}) {
        const auto pts = elliptic_configuration(cfg, n);
        EXPECT_EQ(coplanar_naive(pts).count, coplanar_index_oracle(n)) << n;
    }
}
