#pragma once
// Configurations with known counts: progression grids for the additive and
// multiplicative special forms, the elliptic-quartic subgroup, and points on
// the twisted cubic as a control.

#include "polygeom/elliptic.hpp"
#include "polygeom/error.hpp"
#include "polygeom/geometry.hpp"
#include "polygeom/polynomial.hpp"
#include "polygeom/zero_counter.hpp"

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

namespace polygeom {

enum class GridKind { additive, multiplicative };

inline std::string to_string(GridKind k) { return k == GridKind::additive ? "ap-additive" : "ap-multiplicative"; }

struct ApGrid {
    Polynomial poly;
    GridSets sets;
    std::uint64_t expected_count = 0;
};

/// Number of (i, j, k, l) in I x I x I x L with i + j + k + l = 0.
inline std::uint64_t index_sum_count(std::int64_t lo, std::int64_t hi, std::int64_t llo, std::int64_t lhi) {
    std::uint64_t c = 0;
    for (std::int64_t i = lo; i <= hi; ++i)
        for (std::int64_t j = lo; j <= hi; ++j)
            for (std::int64_t k = lo; k <= hi; ++k) {
                const std::int64_t l = -(i + j + k);
                if (l >= llo && l <= lhi) ++c;
            }
    return c;
}

/// additive:       x + y + s + t,  A = B = C = {1..n},         D = {-3n..-3}
/// multiplicative: x y s t - 1,    A = B = C = {2^1..2^n},     D = {2^-3n..2^-3}
/// Both are the exponent grid {1..n}^3 x {-3n..-3} under i + j + k + l = 0.
inline ApGrid ap_grid(GridKind kind, std::int64_t n) {
    if (n < 1) throw Error("invalid-argument", "progression length must be >= 1");
    if (kind == GridKind::multiplicative && 3 * n > 1000)
        throw Error("invalid-argument", "multiplicative grid limited to n <= 333");
    const std::vector<std::string> vars{"x", "y", "s", "t"};
    ApGrid g{Polynomial(vars), {}, index_sum_count(1, n, -3 * n, -3)};
    if (kind == GridKind::additive) {
        for (std::size_t v = 0; v < 4; ++v) g.poly = g.poly + Polynomial::variable(vars, v);
        for (std::size_t i = 0; i < 3; ++i) g.sets.sets[i] = integer_range(1, n);
        g.sets.sets[3] = integer_range(-3 * n, -3);
    } else {
        g.poly.add_term({1, 1, 1, 1}, Rational(1));
        g.poly.add_term({0, 0, 0, 0}, Rational(-1));
        auto pow2 = [](std::int64_t e) {
            Rational r(1);
            const Rational base = e >= 0 ? Rational(2) : Rational(1, 2);
            for (std::int64_t k = 0; k < (e >= 0 ? e : -e); ++k) r *= base;
            return r;
        };
        for (std::size_t i = 0; i < 3; ++i)
            for (std::int64_t e = 1; e <= n; ++e) g.sets.sets[i].push_back(pow2(e));
        for (std::int64_t e = -3 * n; e <= -3; ++e) g.sets.sets[3].push_back(pow2(e));
    }
    return g;
}

/// Unordered 4-subsets of {1..n-1} with sum = 0 mod n. For a < b < c the
/// fourth index is forced, so this is a single pass over triples.
inline std::uint64_t coplanar_index_oracle(std::uint64_t n) {
    if (n < 5) throw Error("invalid-argument", "index oracle needs n >= 5");
    std::uint64_t count = 0;
    for (std::uint64_t a = 1; a < n; ++a)
        for (std::uint64_t b = a + 1; b < n; ++b)
            for (std::uint64_t c = b + 1; c < n; ++c) {
                const std::uint64_t d = (3 * n - a - b - c) % n;
                if (d > c) ++count;
            }
    return count;
}

/// (t, t^2, t^3) for t = spacing, 2 spacing, ..., n spacing.
inline ExactPoints3 moment_curve_points(std::int64_t n, const Rational& spacing = Rational(1)) {
    if (n < 1) throw Error("invalid-argument", "need n >= 1");
    if (spacing.is_zero()) throw Error("invalid-argument", "spacing must be nonzero");
    ExactPoints3 pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (std::int64_t k = 1; k <= n; ++k) {
        const Rational t = spacing * Rational(k);
        pts.push_back({t, t * t, t * t * t});
    }
    return pts;
}

}  // namespace polygeom
