#pragma once
// Random instance generators shared by the unit and acceptance suites.

#include "polygeom/polynomial.hpp"
#include "polygeom/rng.hpp"

#include <string>
#include <vector>

namespace polygeom::testing {

inline Polynomial random_poly(Rng& rng, const std::vector<std::string>& vars, int max_degree, int max_terms,
                              std::int64_t coeff_range = 5, bool rational_coeffs = true) {
    Polynomial p(vars);
    const int terms = static_cast<int>(rng.uniform_int(1, max_terms));
    for (int i = 0; i < terms; ++i) {
        Exponents e(vars.size(), 0);
        int budget = static_cast<int>(rng.uniform_int(0, max_degree));
        for (auto& x : e) {
            const int k = static_cast<int>(rng.uniform_int(0, budget));
            x = static_cast<std::uint32_t>(k);
            budget -= k;
        }
        std::int64_t n = rng.uniform_int(-coeff_range, coeff_range);
        if (n == 0) n = 1;
        const std::int64_t d = rational_coeffs ? rng.uniform_int(1, 4) : 1;
        p.add_term(e, Rational(n, d));
    }
    return p;
}

inline std::vector<Rational> random_point(Rng& rng, std::size_t n, std::int64_t range = 6) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(rng.uniform_int(-range, range), rng.uniform_int(1, 3));
    return v;
}

}  // namespace polygeom::testing

#include "polygeom/parser.hpp"
#include "polygeom/zero_counter.hpp"

#include <utility>

namespace polygeom::testing {

/// Random four-variable polynomial (degree <= 4) with sets of size <= 8.
/// Half of the instances plant a low-degree relation so counts are nonzero.
inline std::pair<Polynomial, GridSets> random_zero_instance(Rng& rng) {
    const auto& vars = polygeom::default_vars();
    Polynomial f(vars);
    if (rng.uniform_int(0, 1) == 0) {
        f = random_poly(rng, vars, 4, 5, 2, false);
    } else {
        // a*m1 + b*m2 - c*m3 with small monomials and unit-ish coefficients
        for (int k = 0; k < 3; ++k) {
            Exponents e(4, 0);
            const int deg = static_cast<int>(rng.uniform_int(1, 2));
            for (int j = 0; j < deg; ++j) ++e[static_cast<std::size_t>(rng.uniform_int(0, 3))];
            f.add_term(e, Rational(rng.uniform_int(0, 1) == 0 ? 1 : -1));
        }
        f.add_term(Exponents(4, 0), Rational(rng.uniform_int(-2, 2)));
    }
    if (f.is_zero()) f = Polynomial::variable(vars, 0);
    GridSets g;
    for (auto& s : g.sets) {
        const auto size = rng.uniform_int(1, 8);
        std::unordered_set<Rational> seen;
        while (static_cast<std::int64_t>(s.size()) < size) {
            Rational v = rng.uniform_int(0, 4) == 0 ? Rational(rng.uniform_int(-6, 6), 2) : Rational(rng.uniform_int(-4, 4));
            if (seen.insert(v).second) s.push_back(v);
        }
    }
    return {f, g};
}

}  // namespace polygeom::testing

#include "polygeom/geometry.hpp"

#include <unordered_set>

namespace polygeom::testing {

using P3 = Point<Rational, 3>;
using P2 = Point<Rational, 2>;

inline P3 p3(std::int64_t x, std::int64_t y, std::int64_t z) { return {Rational(x), Rational(y), Rational(z)}; }
inline P2 p2(std::int64_t x, std::int64_t y) { return {Rational(x), Rational(y)}; }

/// Points drawn from a mixture of generic, coplanar-cluster and collinear-cluster sources.
inline ExactPoints3 mixed_instance(Rng& rng, std::size_t n) {
    ExactPoints3 pts;
    std::unordered_set<P3, KeyHash> seen;
    const auto mode = rng.uniform_int(0, 2);
    const P3 base = p3(rng.uniform_int(-2, 2), rng.uniform_int(-2, 2), rng.uniform_int(-2, 2));
    const P3 u = p3(rng.uniform_int(-2, 2), rng.uniform_int(-2, 2), 1);
    const P3 v = p3(1, rng.uniform_int(-2, 2), rng.uniform_int(-2, 2));
    int guard = 0;
    while (pts.size() < n && ++guard < 10000) {
        P3 p;
        const auto pick = rng.uniform_int(0, 3);
        if (mode == 0 || pick == 0) {
            p = p3(rng.uniform_int(-3, 3), rng.uniform_int(-3, 3), rng.uniform_int(-3, 3));
        } else if (mode == 1) {
            const Rational a(rng.uniform_int(-3, 3)), b(rng.uniform_int(-3, 3));
            p = {base[0] + a * u[0] + b * v[0], base[1] + a * u[1] + b * v[1], base[2] + a * u[2] + b * v[2]};
        } else {
            const Rational a(rng.uniform_int(-4, 4), rng.uniform_int(1, 2));
            p = {base[0] + a * u[0], base[1] + a * u[1], base[2] + a * u[2]};
        }
        if (seen.insert(p).second) pts.push_back(p);
    }
    return pts;
}

inline Rational concyclic_det(const P2& a, const P2& b, const P2& c, const P2& d) {
    // Rows (x^2 + y^2, x, y, 1), reduced by subtracting row a.
    auto row = [&](const P2& p) {
        return P3{p[0] * p[0] + p[1] * p[1] - a[0] * a[0] - a[1] * a[1], p[0] - a[0], p[1] - a[1]};
    };
    return dot(cross(row(b), row(c)), row(d));
}

inline bool collinear(const P2& a, const P2& b, const P2& c) {
    return ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])).is_zero();
}

inline std::uint64_t concyclic_oracle(const ExactPoints2& pts) {
    std::uint64_t c = 0;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l)
                    if (concyclic_det(pts[i], pts[j], pts[k], pts[l]).is_zero() &&
                        !(collinear(pts[i], pts[j], pts[k]) && collinear(pts[i], pts[j], pts[l])))
                        ++c;
    return c;
}

inline ExactPoints2 random_planar(Rng& rng, std::size_t n) {
    // Lattice points on a few circles and lines to force coincidences.
    static const std::vector<P2> ring{p2(5, 0), p2(3, 4), p2(4, 3), p2(0, 5), p2(-3, 4), p2(-5, 0), p2(-4, -3), p2(0, -5)};
    ExactPoints2 pts;
    std::unordered_set<P2, KeyHash> seen;
    while (pts.size() < n) {
        P2 p = rng.uniform_int(0, 1) == 0 ? ring[static_cast<std::size_t>(rng.uniform_int(0, 7))]
                                          : p2(rng.uniform_int(-5, 5), rng.uniform_int(-5, 5));
        if (seen.insert(p).second) pts.push_back(p);
    }
    return pts;
}

}  // namespace polygeom::testing
