#pragma once
// Point sets, exact canonical keys for planes and lines, and the point CSV
// format shared by the constructors, the counters and the CLI.

#include "polygeom/error.hpp"
#include "polygeom/rational.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace polygeom {

template <class T, std::size_t D>
using Point = std::array<T, D>;

using ExactPoints3 = std::vector<Point<Rational, 3>>;
using FloatPoints3 = std::vector<Point<double, 3>>;
using ExactPoints2 = std::vector<Point<Rational, 2>>;
using FloatPoints2 = std::vector<Point<double, 2>>;

/// Scales a rational vector to coprime integers whose first nonzero entry
/// is positive. The zero vector is returned unchanged.
inline void make_primitive(std::span<Rational> v) {
    Rational den(1);
    for (const auto& x : v) den = lcm_int(den, x.denominator());
    Rational g(0);
    for (const auto& x : v) g = gcd_int(g, (x * den).numerator());
    if (g.is_zero()) return;
    Rational scale = den / g;
    for (const auto& x : v)
        if (!x.is_zero()) {
            if (x.sign() < 0) scale = -scale;
            break;
        }
    for (auto& x : v) x *= scale;
}

inline Point<Rational, 3> sub(const Point<Rational, 3>& a, const Point<Rational, 3>& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Point<Rational, 3> cross(const Point<Rational, 3>& a, const Point<Rational, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Rational dot(const Point<Rational, 3>& a, const Point<Rational, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline bool is_zero(const Point<Rational, 3>& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

/// Plane n1 x + n2 y + n3 z = n0 in primitive integer form.
struct PlaneKey {
    std::array<Rational, 4> coeffs;  // n1, n2, n3, n0

    friend bool operator==(const PlaneKey&, const PlaneKey&) = default;

    bool vertical() const { return coeffs[2].is_zero(); }

    bool contains(const Point<Rational, 3>& p) const {
        return coeffs[0] * p[0] + coeffs[1] * p[1] + coeffs[2] * p[2] == coeffs[3];
    }

    /// Plane through three non-collinear points; nullopt if collinear.
    static std::optional<PlaneKey> through(const Point<Rational, 3>& a, const Point<Rational, 3>& b,
                                           const Point<Rational, 3>& c) {
        const auto n = cross(sub(b, a), sub(c, a));
        if (is_zero(n)) return std::nullopt;
        PlaneKey k{{n[0], n[1], n[2], dot(n, a)}};
        make_primitive(k.coeffs);
        return k;
    }
};

/// Line through two distinct points as (primitive direction, moment p x d).
/// The moment is fixed once the direction is, so the pair is canonical.
struct LineKey {
    std::array<Rational, 6> coords;

    friend bool operator==(const LineKey&, const LineKey&) = default;

    static LineKey through(const Point<Rational, 3>& a, const Point<Rational, 3>& b) {
        Point<Rational, 3> d = sub(b, a);
        if (is_zero(d)) throw Error("duplicate-points", "line through coincident points");
        make_primitive(d);
        const auto m = cross(a, d);
        return LineKey{{d[0], d[1], d[2], m[0], m[1], m[2]}};
    }

    static LineKey through(const Point<Rational, 2>& a, const Point<Rational, 2>& b) {
        return through(Point<Rational, 3>{a[0], a[1], Rational(0)}, Point<Rational, 3>{b[0], b[1], Rational(0)});
    }
};

struct KeyHash {
    template <std::size_t N>
    std::size_t operator()(const std::array<Rational, N>& a) const {
        std::size_t h = 0x84222325CBF29CE4ULL;
        for (const auto& x : a) h = (h ^ x.hash()) * 0x100000001B3ULL;
        return h;
    }
    std::size_t operator()(const PlaneKey& k) const { return (*this)(k.coeffs); }
    std::size_t operator()(const LineKey& k) const { return (*this)(k.coords); }
};

// ---- point CSV: one comma-separated row per point ----

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <std::size_t D>
std::string to_points_csv(const std::vector<Point<Rational, D>>& pts) {
    std::string out;
    for (const auto& p : pts) {
        for (std::size_t i = 0; i < D; ++i) {
            if (i) out += ",";
            out += p[i].to_string();
        }
        out += "\n";
    }
    return out;
}

template <std::size_t D>
std::string to_points_csv(const std::vector<Point<double, D>>& pts) {
    std::string out;
    for (const auto& p : pts) {
        for (std::size_t i = 0; i < D; ++i) {
            if (i) out += ",";
            out += format_double(p[i]);
        }
        out += "\n";
    }
    return out;
}

/// Reads points exactly: integers, decimals, exponent notation and p/q all
/// become rationals. Blank lines and '#' comments are skipped.
template <std::size_t D>
std::vector<Point<Rational, D>> parse_points_csv(std::string_view text) {
    std::vector<Point<Rational, D>> pts;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        std::string field;
        std::vector<Rational> row;
        while (std::getline(fields, field, ',')) {
            try {
                row.push_back(Rational::parse(field));
            } catch (const std::exception& e) {
                throw Error("syntax", "points line " + std::to_string(lineno) + ": " + e.what());
            }
        }
        if (row.size() != D)
            throw Error("syntax", "points line " + std::to_string(lineno) + " has " + std::to_string(row.size()) +
                                      " fields, expected " + std::to_string(D));
        Point<Rational, D> p;
        for (std::size_t i = 0; i < D; ++i) p[i] = row[i];
        pts.push_back(p);
    }
    return pts;
}

template <std::size_t D>
std::vector<Point<double, D>> to_float(const std::vector<Point<Rational, D>>& pts) {
    std::vector<Point<double, D>> out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        Point<double, D> q;
        for (std::size_t i = 0; i < D; ++i) q[i] = p[i].to_double();
        out.push_back(q);
    }
    return out;
}

}  // namespace polygeom
