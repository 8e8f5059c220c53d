#pragma once
// Proper coplanar quadruples in R^3, collinear triples in R^2 and
// four-point circles in R^2 (through the paraboloid lift).
//
// All counts are unordered; `ordered` multiplies by 4! or 3!.

#include "polygeom/error.hpp"
#include "polygeom/geometry.hpp"
#include "polygeom/parallel.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace polygeom {

struct CountReport {
    std::string kind;    // coplanar-quadruples | collinear-triples | four-point-circles
    std::string method;  // naive | fast | hash
    std::uint64_t count = 0;
    std::uint64_t ordered = 0;
    std::optional<std::uint64_t> circles;  // four-point circles only
    std::size_t max_per_plane = 0;         // for circles: max points on one circle
    std::size_t max_per_line = 0;
    double elapsed_ms = 0.0;
};

inline std::uint64_t choose(std::uint64_t n, unsigned k) {
    if (n < k) return 0;
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace detail {

inline CountReport make_report(std::string kind, std::string method, std::uint64_t count, std::uint64_t arrangements) {
    CountReport r;
    r.kind = std::move(kind);
    r.method = std::move(method);
    r.count = count;
    r.ordered = count * arrangements;
    return r;
}

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <class T, std::size_t D>
void require_distinct(const std::vector<Point<T, D>>& pts) {
    if constexpr (std::is_same_v<T, Rational>) {
        std::unordered_set<Point<Rational, D>, KeyHash> seen;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (!seen.insert(pts[i]).second)
                throw Error("duplicate-points", "point " + std::to_string(i) + " repeats an earlier point");
    } else {
        auto sorted = pts;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error("duplicate-points", "input repeats a point");
    }
}

using IndexSets = std::unordered_map<PlaneKey, std::vector<std::uint32_t>, KeyHash>;

inline void merge_index_sets(IndexSets& into, IndexSets&& from) {
    for (auto& [k, v] : from) {
        auto& dst = into[k];
        dst.insert(dst.end(), v.begin(), v.end());
    }
}

inline std::size_t dedupe(std::vector<std::uint32_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v.size();
}

/// Every plane through a non-collinear triple, with the points it holds.
/// Vertical planes are dropped when `skip_vertical` is set.
inline IndexSets hash_planes(const ExactPoints3& pts, unsigned threads, bool skip_vertical) {
    const std::size_t n = pts.size();
    threads = std::max(1u, threads);
    std::vector<IndexSets> local(threads);
    run_workers(threads, [&](unsigned w) {
        auto& map = local[w];
        for (std::size_t i = w; i < n; i += threads)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k) {
                    auto key = PlaneKey::through(pts[i], pts[j], pts[k]);
                    if (!key || (skip_vertical && key->vertical())) continue;
                    auto& v = map[*key];
                    v.push_back(static_cast<std::uint32_t>(i));
                    v.push_back(static_cast<std::uint32_t>(j));
                    v.push_back(static_cast<std::uint32_t>(k));
                }
    });
    IndexSets all = std::move(local[0]);
    for (unsigned w = 1; w < threads; ++w) merge_index_sets(all, std::move(local[w]));
    for (auto& [k, v] : all) dedupe(v);
    return all;
}

/// Maximal lines holding at least `min_points` points.
template <std::size_t D>
std::vector<std::vector<std::uint32_t>> hash_lines(const std::vector<Point<Rational, D>>& pts, std::size_t min_points) {
    std::unordered_map<LineKey, std::vector<std::uint32_t>, KeyHash> lines;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            auto& v = lines[LineKey::through(pts[i], pts[j])];
            v.push_back(static_cast<std::uint32_t>(i));
            v.push_back(static_cast<std::uint32_t>(j));
        }
    std::vector<std::vector<std::uint32_t>> out;
    for (auto& [k, v] : lines)
        if (dedupe(v) >= min_points) out.push_back(std::move(v));
    return out;
}

/// det of the 4x4 matrix with rows (1, p) and the sum of the absolute
/// values of its 24 Leibniz terms.
inline std::pair<double, double> det4_with_bound(std::array<const Point<double, 3>*, 4> p) {
    double det = 0.0, bound = 0.0;
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
        // perm[r] is the column taken from row r; column 0 is the constant 1.
        double term = 1.0;
        for (int r = 0; r < 4; ++r)
            if (perm[r] != 0) term *= (*p[r])[perm[r] - 1];
        int inversions = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) inversions += perm[a] > perm[b];
        det += inversions % 2 ? -term : term;
        bound += std::abs(term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {det, bound};
}

}  // namespace detail

/// Exact determinant test over all C(n, 4) subsets.
inline CountReport coplanar_naive(const ExactPoints3& pts, unsigned threads = 1) {
    const auto t0 = detail::Clock::now();
    detail::require_distinct(pts);
    const std::size_t n = pts.size();
    const std::uint64_t count = parallel_sum(n, threads, [&](std::size_t i) {
        std::uint64_t c = 0;
        std::vector<Point<Rational, 3>> rel(n);
        for (std::size_t j = i + 1; j < n; ++j) rel[j] = sub(pts[j], pts[i]);
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const auto normal = cross(rel[j], rel[k]);
                for (std::size_t l = k + 1; l < n; ++l)
                    if (dot(normal, rel[l]).is_zero()) ++c;
            }
        return c;
    });
    auto r = detail::make_report("coplanar-quadruples", "naive", count, 24);
    r.elapsed_ms = detail::ms_since(t0);
    return r;
}

/// Float determinant test on rows (1, x, y, z): coplanar when
/// |det| <= tol * (sum of |terms| of its Leibniz expansion), i.e. the
/// determinant vanishes under a relative perturbation of the coordinates of
/// size about tol. Scale invariant.
inline CountReport coplanar_naive(const FloatPoints3& pts, double tol = 1e-7, unsigned threads = 1) {
    const auto t0 = detail::Clock::now();
    detail::require_distinct(pts);
    const std::size_t n = pts.size();
    const std::uint64_t count = parallel_sum(n, threads, [&](std::size_t i) {
        std::uint64_t c = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l) {
                    const auto [det, bound] = detail::det4_with_bound({&pts[i], &pts[j], &pts[k], &pts[l]});
                    if (std::abs(det) <= tol * bound) ++c;
                }
        return c;
    });
    auto r = detail::make_report("coplanar-quadruples", "naive", count, 24);
    r.elapsed_ms = detail::ms_since(t0);
    return r;
}

/// Plane hashing over triples with a correction for collinear quadruples.
///
/// A coplanar 4-set that is not collinear spans exactly one hashed plane.
/// A collinear 4-set on line L lies in every hashed plane through L, pi_L
/// of them, and in none when the whole input lies on L.
inline CountReport coplanar_fast(const ExactPoints3& pts, unsigned threads = 1) {
    const auto t0 = detail::Clock::now();
    detail::require_distinct(pts);
    const auto planes = detail::hash_planes(pts, threads, false);
    std::uint64_t total = 0;
    std::size_t max_plane = 0;
    for (const auto& [key, idx] : planes) {
        total += choose(idx.size(), 4);
        max_plane = std::max(max_plane, idx.size());
    }
    const auto lines = detail::hash_lines(pts, 3);
    std::size_t max_line = pts.size() >= 2 ? 2 : pts.size();
    std::int64_t correction = 0;
    for (const auto& line : lines) {
        max_line = std::max(max_line, line.size());
        if (line.size() < 4) continue;
        std::vector<bool> on(pts.size(), false);
        for (auto i : line) on[i] = true;
        std::unordered_set<PlaneKey, KeyHash> through;
        for (std::size_t p = 0; p < pts.size(); ++p)
            if (!on[p]) through.insert(*PlaneKey::through(pts[line[0]], pts[line[1]], pts[p]));
        const auto q = static_cast<std::int64_t>(choose(line.size(), 4));
        const auto pi = static_cast<std::int64_t>(through.size());
        correction += pi == 0 ? q : -(pi - 1) * q;
    }
    const auto count = static_cast<std::uint64_t>(static_cast<std::int64_t>(total) + correction);
    auto r = detail::make_report("coplanar-quadruples", "fast", count, 24);
    r.max_per_plane = max_plane;
    r.max_per_line = max_line;
    r.elapsed_ms = detail::ms_since(t0);
    return r;
}

/// Sum over maximal lines of C(l, 3).
inline CountReport collinear_triples(const ExactPoints2& pts) {
    const auto t0 = detail::Clock::now();
    detail::require_distinct(pts);
    std::uint64_t count = 0;
    std::size_t max_line = pts.size() >= 2 ? 2 : pts.size();
    for (const auto& line : detail::hash_lines(pts, 3)) {
        count += choose(line.size(), 3);
        max_line = std::max(max_line, line.size());
    }
    auto r = detail::make_report("collinear-triples", "hash", count, 6);
    r.max_per_line = max_line;
    r.elapsed_ms = detail::ms_since(t0);
    return r;
}

/// (x, y) -> (x, y, x^2 + y^2).
inline ExactPoints3 paraboloid_lift(const ExactPoints2& pts) {
    ExactPoints3 out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back({p[0], p[1], p[0] * p[0] + p[1] * p[1]});
    return out;
}

/// Circles through at least four input points (`circles`) and concyclic
/// 4-sets (`count`). Vertical planes of the lift are lines, not circles.
inline CountReport four_point_circles(const ExactPoints2& pts, unsigned threads = 1) {
    const auto t0 = detail::Clock::now();
    detail::require_distinct(pts);
    const auto planes = detail::hash_planes(paraboloid_lift(pts), threads, true);
    std::uint64_t quads = 0, circles = 0;
    std::size_t max_circle = 0;
    for (const auto& [key, idx] : planes) {
        if (idx.size() >= 4) ++circles;
        quads += choose(idx.size(), 4);
        max_circle = std::max(max_circle, idx.size());
    }
    auto r = detail::make_report("four-point-circles", "hash", quads, 24);
    r.circles = circles;
    r.max_per_plane = max_circle;
    r.elapsed_ms = detail::ms_since(t0);
    return r;
}

}  // namespace polygeom
