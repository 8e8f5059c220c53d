#include "polygeom/elliptic.hpp"

#include <gtest/gtest.h>

using namespace polygeom;

namespace {

const EllipticConfig& curve() {
    static const EllipticConfig c = EllipticConfig::make();
    return c;
}

}  // namespace

TEST(EllipticConfig, RootAndPeriod) {
    const auto& c = curve();
    EXPECT_NEAR(c.cubic(c.real_root()), 0.0, 1e-15);
    EXPECT_NEAR(c.real_root(), -0.6823278038280193, 1e-14);
    EXPECT_NEAR(c.period(), 7.4998859561886857, 1e-12);  // 30-digit reference quadrature
    // Period by an independent method: Simpson on the t = e + s^2 form, s in [0, 40]
    // plus the analytic tail 2 * 2/s beyond.
    const double e = c.real_root();
    auto g = [&](double s) {
        const double t = e + s * s;
        return 2.0 / std::sqrt(t * t + e * t + e * e + 1.0);
    };
    const int N = 400000;
    const double L = 2000.0, h = L / N;
    double acc = g(0) + g(L);
    for (int i = 1; i < N; ++i) acc += (i % 2 ? 4 : 2) * g(i * h);
    const double approx = 2.0 * (acc * h / 3.0 + 2.0 / L);
    EXPECT_NEAR(c.period(), approx, 1e-6);
}

TEST(EllipticConfig, RejectsSingularAndTwoComponentCurves) {
    EXPECT_THROW(EllipticConfig::make(Rational(-3), Rational(2)), Error);  // (x-1)^2 (x+2)
    EXPECT_THROW(EllipticConfig::make(Rational(-1), Rational(0)), Error);  // three real roots
    EXPECT_NO_THROW(EllipticConfig::make(Rational(-1), Rational(3)));
}

TEST(GroupLaw, IdentityAndInverse) {
    const auto& c = curve();
    const auto p = CurvePoint::affine(0, 1);
    EXPECT_TRUE(c.on_curve(p));
    const auto q = group_add(c, p, CurvePoint::identity());
    EXPECT_EQ(q.x, 0.0);
    EXPECT_EQ(q.y, 1.0);
    EXPECT_TRUE(group_add(c, p, negate(p)).infinity);
}

TEST(GroupLaw, KnownDoubling) {
    // On y^2 = x^3 + x + 1, 2*(0,1) = (1/4, -9/8).
    const auto& c = curve();
    const auto d = group_add(c, CurvePoint::affine(0, 1), CurvePoint::affine(0, 1));
    EXPECT_NEAR(d.x, 0.25, 1e-15);
    EXPECT_NEAR(d.y, -1.125, 1e-15);
    const auto m = multiply(c, CurvePoint::affine(0, 1), 2);
    EXPECT_NEAR(m.x, 0.25, 1e-15);
}

TEST(GroupLaw, OffCurveRejected) {
    try {
        group_add(curve(), CurvePoint::affine(0, 2), CurvePoint::affine(0, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "off-curve");
    }
}

TEST(GroupLaw, Associativity) {
    const auto& c = curve();
    Rng rng(11);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const auto p = random_curve_point(c, rng), q = random_curve_point(c, rng), r = random_curve_point(c, rng);
        const auto l = group_add(c, group_add(c, p, q), r);
        const auto rr = group_add(c, p, group_add(c, q, r));
        worst = std::max(worst, point_distance(l, rr));
    }
    EXPECT_LT(worst, 1e-7);
}

TEST(Angle, SymmetryAndIdentity) {
    const auto& c = curve();
    EXPECT_EQ(angle(c, CurvePoint::identity()), 0.0);
    EXPECT_EQ(angle(c, CurvePoint::affine(c.real_root(), 0.0)), 0.5);
    const auto p = CurvePoint::affine(0, 1);
    EXPECT_NEAR(angle(c, negate(p)), 1.0 - angle(c, p), 1e-15);
    EXPECT_GT(angle(c, p), 0.0);
    EXPECT_LT(angle(c, p), 0.5);
}

TEST(Angle, AdditivityOverRandomPairs) {
    const auto& c = curve();
    Rng rng(42);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        const auto p = random_curve_point(c, rng), q = random_curve_point(c, rng);
        worst = std::max(worst, angle_distance(angle(c, group_add(c, p, q)), angle(c, p) + angle(c, q)));
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(Angle, FarPointsNearIdentity) {
    const auto& c = curve();
    const double x = 1e12;
    const auto p = CurvePoint::affine(x, std::sqrt(c.cubic(x)));
    // Tail ~ 2 / sqrt(x) for large x.
    EXPECT_NEAR(angle(c, p) * c.period(), 2.0 / std::sqrt(x), 1e-12);
}

TEST(Torsion, SmallOrders) {
    const auto& c = curve();
    const auto t2 = torsion_points(c, 2);
    ASSERT_EQ(t2.size(), 2u);
    EXPECT_TRUE(t2[0].infinity);
    EXPECT_EQ(t2[1].x, c.real_root());
    EXPECT_EQ(t2[1].y, 0.0);
    const auto t4 = torsion_points(c, 4);
    EXPECT_EQ(t4[2].x, c.real_root());
    EXPECT_EQ(t4[2].y, 0.0);
    EXPECT_NEAR(t4[3].x, t4[1].x, 0.0);
    EXPECT_EQ(t4[3].y, -t4[1].y);
    EXPECT_THROW(torsion_points(c, 1), Error);
}

TEST(Torsion, FivePointsEquallySpaced) {
    const auto& c = curve();
    const auto t = torsion_points(c, 5);
    ASSERT_EQ(t.size(), 5u);
    for (std::size_t k = 1; k < 5; ++k)
        EXPECT_NEAR(angle_distance(angle(c, t[k]), angle(c, t[k - 1])), 0.2, 1e-6);
}

TEST(Torsion, RepeatedAdditionReturnsToIdentity) {
    const auto& c = curve();
    double worst = 0;
    for (std::size_t n : {3, 7, 16, 31, 64, 100, 128}) {
        const auto t = torsion_points(c, n);
        CurvePoint acc = CurvePoint::identity();
        for (std::size_t k = 1; k <= n; ++k) {
            acc = group_add(c, acc, t[1]);
            if (k < n) {
                EXPECT_LT(angle_distance(angle(c, acc), angle(c, t[k])), 1e-6) << n << " " << k;
            }
        }
        worst = std::max(worst, angle_distance(angle(c, acc), 0.0));
    }
    EXPECT_LT(worst, 1e-5);
}

TEST(Embedding, KnownPoint) {
    const auto c = EllipticConfig::make(Rational(-1), Rational(3));
    const auto pts = embed_quartic(c, {CurvePoint::affine(2, 3)});
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts[0], (Point<double, 3>{2, 3, 4}));
    EXPECT_THROW(embed_quartic(c, {CurvePoint::identity()}), Error);
    EXPECT_THROW(embed_quartic(c, {CurvePoint::affine(2, 4)}), Error);
}

TEST(Embedding, TorsionOnBothQuadrics) {
    const auto& c = curve();
    const auto pts = elliptic_configuration(c, 16);
    ASSERT_EQ(pts.size(), 15u);
    for (const auto& p : pts) {
        const auto r = quadric_residuals(c, p);
        EXPECT_LT(r[0], 1e-8);
        EXPECT_LT(r[1], 1e-8);
    }
}

TEST(Embedding, CoplanarExactlyWhenSumIsIdentity) {
    const auto& c = curve();
    const std::size_t n = 9;
    const auto pts = elliptic_configuration(c, n);  // index i -> multiple i + 1
    auto det = [&](std::size_t a, std::size_t b, std::size_t d, std::size_t e) {
        double m[3][3];
        for (int j = 0; j < 3; ++j) {
            m[0][j] = pts[b][j] - pts[a][j];
            m[1][j] = pts[d][j] - pts[a][j];
            m[2][j] = pts[e][j] - pts[a][j];
        }
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
            for (std::size_t d = b + 1; d < pts.size(); ++d)
                for (std::size_t e = d + 1; e < pts.size(); ++e) {
                    const bool sum_zero = (a + b + d + e + 4) % n == 0;
                    const double v = std::abs(det(a, b, d, e));
                    if (sum_zero) {
                        EXPECT_LT(v, 1e-9);
                    } else {
                        EXPECT_GT(v, 1e-6);
                    }
                }
}
