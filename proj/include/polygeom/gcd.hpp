#pragma once
// Exact division and bivariate gcd.
//
// The gcd treats a polynomial in (u, v) as an element of Q[v][u] and runs a
// primitive pseudo-remainder sequence in u. That is Euclid over Q(v) with
// the denominators cleared at every step; the content in Q[v] is handled
// separately with univariate gcds.

#include "polygeom/error.hpp"
#include "polygeom/polynomial.hpp"

#include <optional>
#include <vector>

namespace polygeom {

/// Scales `p` to integer coefficients with gcd 1 and a positive graded-lex
/// leading coefficient. The zero polynomial is returned unchanged.
inline Polynomial primitive_part(const Polynomial& p) {
    if (p.is_zero()) return p;
    Rational den(1);
    for (const auto& [e, c] : p.terms()) den = lcm_int(den, c.denominator());
    Rational g(0);
    for (const auto& [e, c] : p.terms()) g = gcd_int(g, (c * den).numerator());
    Rational scale = den / g;
    if (p.leading_coefficient().sign() < 0) scale = -scale;
    return scale * p;
}

/// Returns a / b when b divides a exactly, otherwise nullopt.
inline std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw Error("degenerate", "division by the zero polynomial");
    if (a.vars() != b.vars()) throw Error("arity", "polynomials are over different variable lists");
    Polynomial rem = a;
    Polynomial quot(a.vars());
    const Exponents& lb = b.leading_exponents();
    const Rational inv = Rational(1) / b.leading_coefficient();
    while (!rem.is_zero()) {
        const Exponents& lr = rem.leading_exponents();
        Exponents q(lr.size());
        for (std::size_t i = 0; i < lr.size(); ++i) {
            if (lr[i] < lb[i]) return std::nullopt;  // leading term lands in the remainder
            q[i] = lr[i] - lb[i];
        }
        Polynomial mono(a.vars());
        mono.add_term(q, rem.leading_coefficient() * inv);
        quot = quot + mono;
        rem = rem - mono * b;
    }
    return quot;
}

namespace detail {

// Q[v][u]: index = power of u, entry = coefficient polynomial in v.
using RecPoly = std::vector<UniPoly>;

inline void trim(RecPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline RecPoly to_rec(const Polynomial& p) {
    RecPoly out(static_cast<std::size_t>(std::max(p.degree_in(0), 0)) + 1);
    std::vector<std::vector<Rational>> dense(out.size());
    for (const auto& [e, c] : p.terms()) {
        auto& row = dense[e[0]];
        if (row.size() <= e[1]) row.resize(e[1] + 1);
        row[e[1]] += c;
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = UniPoly(std::move(dense[i]));
    trim(out);
    return out;
}

inline Polynomial from_rec(const RecPoly& p, const std::vector<std::string>& vars) {
    Polynomial out(vars);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p[i].coeffs().size(); ++j)
            out.add_term({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)}, p[i].coeffs()[j]);
    return out;
}

inline UniPoly content(const RecPoly& p) {
    UniPoly g;
    for (const auto& c : p) g = uni_gcd(g, c);
    return g;
}

inline RecPoly divide_by(const RecPoly& p, const UniPoly& c) {
    RecPoly out;
    out.reserve(p.size());
    for (const auto& x : p) out.push_back(x.divmod(c).first);
    return out;
}

inline RecPoly prim(const RecPoly& p) {
    if (p.empty()) return p;
    return divide_by(p, content(p));
}

// Pseudo-remainder of a by b in u.
inline RecPoly prem(RecPoly a, const RecPoly& b) {
    const UniPoly& lb = b.back();
    const std::size_t db = b.size() - 1;
    while (!a.empty() && a.size() - 1 >= db) {
        const std::size_t shift = a.size() - 1 - db;
        const UniPoly la = a.back();
        for (auto& x : a) x = lb * x;
        for (std::size_t i = 0; i <= db; ++i) a[i + shift] = a[i + shift] - la * b[i];
        trim(a);
    }
    return a;
}

}  // namespace detail

/// gcd of two nonzero polynomials in exactly two variables, normalized by
/// `primitive_part`. Coprime inputs give the constant 1.
inline Polynomial bivariate_gcd(const Polynomial& g1, const Polynomial& g2) {
    if (g1.arity() != 2 || g2.arity() != 2) throw Error("arity", "bivariate_gcd needs two-variable polynomials");
    if (g1.vars() != g2.vars()) throw Error("arity", "polynomials are over different variable lists");
    if (g1.is_zero() || g2.is_zero()) throw Error("degenerate", "bivariate_gcd of the zero polynomial");

    using namespace detail;
    RecPoly a = to_rec(g1), b = to_rec(g2);
    const UniPoly cont = uni_gcd(content(a), content(b));
    a = prim(a);
    b = prim(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        RecPoly r = prem(a, b);
        a = std::move(b);
        b = prim(r);
    }
    RecPoly g = prim(a);
    for (auto& x : g) x = cont * x;
    return primitive_part(from_rec(g, g1.vars()));
}

}  // namespace polygeom
