#pragma once
// Real elliptic curves y^2 = x^3 + a x + b with one real component, their
// chord-tangent group law, the angle map E(R) -> R/Z, torsion subgroups and
// the embedding into the quartic space curve w = x^2, y^2 = x w + a x + b.
//
// On that quartic the functions 1, x, y, x^2 span the plane sections, all
// with poles only at the identity O (of order <= 4). Four affine points are
// therefore coplanar exactly when they sum to O in the group.

#include "polygeom/error.hpp"
#include "polygeom/geometry.hpp"
#include "polygeom/rational.hpp"
#include "polygeom/rng.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace polygeom {

struct CurvePoint {
    bool infinity = true;
    double x = 0.0;
    double y = 0.0;

    static CurvePoint identity() { return {}; }
    static CurvePoint affine(double x, double y) { return {false, x, y}; }
};

class EllipticConfig {
public:
    /// Validates 4a^3 + 27b^2 > 0: nonsingular with exactly one real root,
    /// so E(R) is a single circle. Computes the real root and the real period.
    static EllipticConfig make(const Rational& a = Rational(1), const Rational& b = Rational(1)) {
        const Rational disc = Rational(4) * a * a * a + Rational(27) * b * b;
        if (disc.is_zero()) throw Error("degenerate", "singular curve: 4a^3 + 27b^2 = 0");
        if (disc.sign() < 0)
            throw Error("degenerate", "x^3 + ax + b has three real roots; E(R) has two components");
        EllipticConfig c;
        c.a_ = a;
        c.b_ = b;
        c.ad_ = a.to_double();
        c.bd_ = b.to_double();
        c.root_ = c.find_real_root();
        c.period_ = 2.0 * c.tail_integral(0.0);
        return c;
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    double a_double() const { return ad_; }
    double b_double() const { return bd_; }
    /// The real root e of x^3 + a x + b.
    double real_root() const { return root_; }
    /// Integral of dt / sqrt(t^3 + a t + b) around the real circle.
    double period() const { return period_; }

    double cubic(double x) const { return (x * x + ad_) * x + bd_; }

    double curve_residual(const CurvePoint& p) const {
        if (p.infinity) return 0.0;
        return std::abs(p.y * p.y - cubic(p.x)) / (1.0 + std::abs(p.x) * std::abs(p.x) * std::abs(p.x));
    }

    bool on_curve(const CurvePoint& p, double tol = 1e-9) const { return curve_residual(p) < tol; }

    /// Integral of dt / sqrt(t^3 + a t + b) from x = e + s^2 to infinity.
    ///
    /// With t = e + r^2 the cubic factors as r^2 q(e + r^2) where
    /// q(t) = t^2 + e t + e^2 + a > 0, removing the endpoint singularity;
    /// r = s + k u / (1 - u) with k = max(1, s) then maps the infinite range
    /// onto [0, 1) at a scale matched to s.
    double tail_integral(double s) const {
        const double e = root_;
        const double c = e * e + ad_;
        const double k = std::max(1.0, s);
        // Multiplying through by (1 - u)^4 keeps the integrand polynomial in u.
        auto integrand = [&](double u) {
            const double w = 1.0 - u;
            const double w2 = w * w;
            const double v = s * w + k * u;
            const double A = w2 * e + v * v;
            return 2.0 * k / std::sqrt(A * A + e * w2 * A + c * w2 * w2);
        };
        double err = 0.0;
        const double val = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, 1.0, 15,
                                                                                         1e-12, &err);
        if (!std::isfinite(val) || err > 1e-10 * std::max(1.0, std::abs(val)))
            throw Error("quadrature", "elliptic integral did not converge at s = " + format_double(s) + " (error estimate " + format_double(err) + ")");
        return val;
    }

private:
    double find_real_root() const {
        // The cubic is increasing through its single real root; bracket, then bisect.
        double lo = -1.0, hi = 1.0;
        while (cubic(lo) > 0) lo *= 2.0;
        while (cubic(hi) < 0) hi *= 2.0;
        for (int i = 0; i < 200 && hi - lo > 0; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            (cubic(mid) < 0 ? lo : hi) = mid;
        }
        return std::abs(cubic(lo)) < std::abs(cubic(hi)) ? lo : hi;
    }

    Rational a_, b_;
    double ad_ = 0.0, bd_ = 0.0;
    double root_ = 0.0;
    double period_ = 0.0;
};

inline CurvePoint negate(const CurvePoint& p) {
    if (p.infinity) return p;
    return CurvePoint::affine(p.x, -p.y);
}

inline void require_on_curve(const EllipticConfig& cfg, const CurvePoint& p) {
    if (!cfg.on_curve(p))
        throw Error("off-curve", "point (" + format_double(p.x) + ", " + format_double(p.y) +
                                     ") is not on the curve (residual " + format_double(cfg.curve_residual(p)) + ")");
}

/// Chord-tangent addition.
inline CurvePoint group_add(const EllipticConfig& cfg, const CurvePoint& p, const CurvePoint& q) {
    require_on_curve(cfg, p);
    require_on_curve(cfg, q);
    if (p.infinity) return q;
    if (q.infinity) return p;
    double lambda;
    if (std::abs(p.x - q.x) <= 1e-12 * (1.0 + std::abs(p.x))) {
        if (std::abs(p.y + q.y) <= 1e-12 * (1.0 + std::abs(p.y))) return CurvePoint::identity();
        const double y = 0.5 * (p.y + q.y);
        lambda = (3.0 * p.x * p.x + cfg.a_double()) / (2.0 * y);
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
    }
    const double x3 = lambda * lambda - p.x - q.x;
    double y3 = lambda * (p.x - x3) - p.y;
    // Project back onto the curve so chained sums do not drift.
    const double f3 = cfg.cubic(x3);
    if (f3 > 0 && std::abs(y3) > 1e-6 * std::sqrt(f3)) y3 = std::copysign(std::sqrt(f3), y3);
    return CurvePoint::affine(x3, y3);
}

/// k * p by double-and-add.
inline CurvePoint multiply(const EllipticConfig& cfg, CurvePoint p, std::uint64_t k) {
    CurvePoint acc = CurvePoint::identity();
    while (k != 0) {
        if (k & 1) acc = group_add(cfg, acc, p);
        k >>= 1;
        if (k != 0) p = group_add(cfg, p, p);
    }
    return acc;
}

/// Position on E(R) = R/Z: theta(O) = 0, points with y >= 0 map to (0, 1/2]
/// and -P maps to 1 - theta(P). This is the normalized elliptic logarithm,
/// so theta(P + Q) = theta(P) + theta(Q) mod 1.
inline double angle(const EllipticConfig& cfg, const CurvePoint& p) {
    require_on_curve(cfg, p);
    if (p.infinity) return 0.0;
    if (p.y == 0.0) return 0.5;
    const double s = std::sqrt(std::max(0.0, p.x - cfg.real_root()));
    const double half = cfg.tail_integral(s) / cfg.period();
    return p.y > 0 ? half : 1.0 - half;
}

/// Euclidean distance in the affine chart, relative to 1 + the larger norm.
/// Zero between two copies of O, infinite between O and an affine point.
inline double point_distance(const CurvePoint& p, const CurvePoint& q) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity ? 0.0 : INFINITY;
    const double scale = 1.0 + std::max(std::hypot(p.x, p.y), std::hypot(q.x, q.y));
    return std::hypot(p.x - q.x, p.y - q.y) / scale;
}

/// Circular distance between two angles in R/Z.
inline double angle_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), 1.0);
    return std::min(d, 1.0 - d);
}

/// Inverse of `angle` on the upper branch, by bisection in s = sqrt(x - e);
/// the tail integral is strictly decreasing in s.
inline CurvePoint point_at_angle(const EllipticConfig& cfg, double theta) {
    theta -= std::floor(theta);
    if (theta == 0.0) return CurvePoint::identity();
    if (theta > 0.5) return negate(point_at_angle(cfg, 1.0 - theta));
    const double e = cfg.real_root();
    if (theta == 0.5) return CurvePoint::affine(e, 0.0);
    const double target = theta * cfg.period();
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (cfg.tail_integral(hi) > target) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 200) throw Error("bisection", "could not bracket angle " + format_double(theta));
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (cfg.tail_integral(mid) > target ? lo : hi) = mid;
    }
    const double s = 0.5 * (lo + hi);
    const double x = e + s * s;
    const double y = std::sqrt(std::max(0.0, cfg.cubic(x)));
    const CurvePoint p = CurvePoint::affine(x, y);
    if (!cfg.on_curve(p)) throw Error("bisection", "angle inversion left the curve");
    return p;
}

/// The cyclic subgroup of order n: points at angles k/n, k = 0..n-1, with
/// O first.
inline std::vector<CurvePoint> torsion_points(const EllipticConfig& cfg, std::size_t n) {
    if (n < 2) throw Error("invalid-argument", "torsion subgroup needs n >= 2");
    std::vector<CurvePoint> pts;
    pts.reserve(n);
    pts.push_back(CurvePoint::identity());
    for (std::size_t k = 1; k < n; ++k) {
        if (2 * k == n) {
            pts.push_back(CurvePoint::affine(cfg.real_root(), 0.0));
        } else if (2 * k > n) {
            pts.push_back(negate(pts[n - k]));
        } else {
            pts.push_back(point_at_angle(cfg, static_cast<double>(k) / static_cast<double>(n)));
        }
    }
    return pts;
}

/// Uniform x in [e, e + span] with a random sign for y.
inline CurvePoint random_curve_point(const EllipticConfig& cfg, Rng& rng, double span = 4.0) {
    const double x = cfg.real_root() + rng.uniform(0.0, span);
    const double y = std::sqrt(std::max(0.0, cfg.cubic(x)));
    return CurvePoint::affine(x, rng.uniform() < 0.5 ? y : -y);
}

/// (x, y) -> (x, y, x^2). The identity must be removed by the caller.
inline FloatPoints3 embed_quartic(const EllipticConfig& cfg, const std::vector<CurvePoint>& pts) {
    FloatPoints3 out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        if (p.infinity) throw Error("point-at-infinity", "remove the identity before embedding");
        require_on_curve(cfg, p);
        out.push_back({p.x, p.y, p.x * p.x});
    }
    return out;
}

/// Relative residuals of an embedded point on w = x^2 and y^2 = x w + a x + b.
inline std::array<double, 2> quadric_residuals(const EllipticConfig& cfg, const Point<double, 3>& p) {
    const double x = p[0], y = p[1], w = p[2];
    const double r1 = std::abs(w - x * x) / (1.0 + std::abs(w) + x * x);
    const double r2 = std::abs(y * y - x * w - cfg.a_double() * x - cfg.b_double()) /
                      (1.0 + y * y + std::abs(x * w) + std::abs(cfg.a_double() * x) + std::abs(cfg.b_double()));
    return {r1, r2};
}

/// Torsion subgroup of order n with O removed, embedded in R^3 (n - 1 points).
inline FloatPoints3 elliptic_configuration(const EllipticConfig& cfg, std::size_t n) {
    auto pts = torsion_points(cfg, n);
    pts.erase(pts.begin());
    return embed_quartic(cfg, pts);
}

}  // namespace polygeom
