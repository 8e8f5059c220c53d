#pragma once
// Growth experiments: build a configuration for each n, count, and fit
// log(count) against log(n) by least squares.

#include "polygeom/constructors.hpp"
#include "polygeom/elliptic.hpp"
#include "polygeom/error.hpp"
#include "polygeom/geom_counters.hpp"
#include "polygeom/parser.hpp"
#include "polygeom/rng.hpp"
#include "polygeom/zero_counter.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace polygeom {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS of the log residuals
    std::size_t points = 0;
};

/// OLS on (ln n, ln count) over the points with count > 0.
inline SlopeFit fit_slope(const std::vector<std::pair<double, double>>& data) {
    std::vector<std::pair<double, double>> logs;
    for (const auto& [n, c] : data) {
        if (n <= 0) throw Error("invalid-argument", "fit needs n > 0");
        if (c > 0) logs.emplace_back(std::log(n), std::log(c));
    }
    if (logs.size() < 2) throw Error("degenerate", "fit needs at least two points with count > 0");
    const double k = static_cast<double>(logs.size());
    double mx = 0, my = 0;
    for (const auto& [x, y] : logs) {
        mx += x;
        my += y;
    }
    mx /= k;
    my /= k;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : logs) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx <= 0) throw Error("degenerate", "all n are equal");
    SlopeFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (const auto& [x, y] : logs) {
        const double r = y - (f.intercept + f.slope * x);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / k);
    f.points = logs.size();
    return f;
}

// ---- generators and counters ----

/// What a generator hands to a counter.
struct GridInstance {
    Polynomial poly;
    GridSets sets;
};
struct ExactPointsInstance {
    ExactPoints3 points;
};
struct FloatPointsInstance {
    FloatPoints3 points;
    std::size_t group_order = 0;  // elliptic: the subgroup order n
};
using Instance = std::variant<GridInstance, ExactPointsInstance, FloatPointsInstance>;

enum class GeneratorKind {
    ap_additive,       // grid
    ap_multiplicative, // grid
    balanced_grid,     // grid: `poly` on {1..n}^4
    elliptic,          // float points, n - 1 embedded torsion points
    moment,            // exact points on the twisted cubic
    random_cube,       // exact: n distinct random lattice points in [0, n)^3
};

enum class CounterKind {
    zeros_naive,     // grid
    zeros_fiber,     // grid
    coplanar_naive,  // exact or float points
    coplanar_fast,   // exact points
    index_oracle,    // elliptic only
};

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::ap_additive;
    std::optional<Polynomial> poly = std::nullopt;  // balanced_grid
    Rational a{1}, b{1};                            // elliptic
};

struct CounterSpec {
    CounterKind kind = CounterKind::zeros_fiber;
    double tol = 1e-7;
    unsigned threads = 1;
};

inline std::string to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::ap_additive: return "ap-additive";
        case GeneratorKind::ap_multiplicative: return "ap-multiplicative";
        case GeneratorKind::balanced_grid: return "balanced-grid";
        case GeneratorKind::elliptic: return "elliptic";
        case GeneratorKind::moment: return "moment";
        default: return "random-cube";
    }
}

inline std::string to_string(CounterKind k) {
    switch (k) {
        case CounterKind::zeros_naive: return "zeros-naive";
        case CounterKind::zeros_fiber: return "zeros-fiber";
        case CounterKind::coplanar_naive: return "coplanar-naive";
        case CounterKind::coplanar_fast: return "coplanar-fast";
        default: return "index-oracle";
    }
}

inline Instance generate(const GeneratorSpec& g, std::int64_t n, Rng& rng) {
    switch (g.kind) {
        case GeneratorKind::ap_additive:
        case GeneratorKind::ap_multiplicative: {
            auto grid = ap_grid(g.kind == GeneratorKind::ap_additive ? GridKind::additive : GridKind::multiplicative, n);
            return GridInstance{std::move(grid.poly), std::move(grid.sets)};
        }
        case GeneratorKind::balanced_grid: {
            if (!g.poly) throw Error("invalid-argument", "balanced grid needs a polynomial");
            if (n < 1) throw Error("invalid-argument", "need n >= 1");
            GridSets s;
            for (auto& v : s.sets) v = integer_range(1, n);
            return GridInstance{*g.poly, std::move(s)};
        }
        case GeneratorKind::elliptic: {
            if (n < 5) throw Error("invalid-argument", "elliptic configuration needs n >= 5");
            const auto cfg = EllipticConfig::make(g.a, g.b);
            return FloatPointsInstance{elliptic_configuration(cfg, static_cast<std::size_t>(n)),
                                       static_cast<std::size_t>(n)};
        }
        case GeneratorKind::moment:
            return ExactPointsInstance{moment_curve_points(n)};
        case GeneratorKind::random_cube: {
            if (n < 1) throw Error("invalid-argument", "need n >= 1");
            Rng local = rng.split(static_cast<std::uint64_t>(n));
            ExactPoints3 pts;
            std::unordered_set<Point<Rational, 3>, KeyHash> seen;
            while (static_cast<std::int64_t>(pts.size()) < n) {
                Point<Rational, 3> p{Rational(local.uniform_int(0, n - 1)), Rational(local.uniform_int(0, n - 1)),
                                     Rational(local.uniform_int(0, n - 1))};
                if (seen.insert(p).second) pts.push_back(p);
            }
            return ExactPointsInstance{std::move(pts)};
        }
    }
    throw Error("invalid-argument", "unknown generator");
}

inline std::uint64_t count_instance(const CounterSpec& c, const Instance& inst) {
    auto mismatch = [&](const char* needs) {
        return Error("arity-mismatch", "counter " + to_string(c.kind) + " needs " + needs);
    };
    switch (c.kind) {
        case CounterKind::zeros_naive:
        case CounterKind::zeros_fiber: {
            const auto* g = std::get_if<GridInstance>(&inst);
            if (!g) throw mismatch("a polynomial with four sets");
            return c.kind == CounterKind::zeros_naive ? count_naive(g->poly, g->sets, c.threads).count
                                                      : count_fiber(g->poly, g->sets, 3, c.threads).count;
        }
        case CounterKind::coplanar_naive:
            if (const auto* e = std::get_if<ExactPointsInstance>(&inst)) return coplanar_naive(e->points, c.threads).count;
            if (const auto* f = std::get_if<FloatPointsInstance>(&inst))
                return coplanar_naive(f->points, c.tol, c.threads).count;
            throw mismatch("a 3D point set");
        case CounterKind::coplanar_fast: {
            const auto* e = std::get_if<ExactPointsInstance>(&inst);
            if (!e) throw mismatch("an exact 3D point set");
            return coplanar_fast(e->points, c.threads).count;
        }
        case CounterKind::index_oracle: {
            const auto* f = std::get_if<FloatPointsInstance>(&inst);
            if (!f || f->group_order == 0) throw mismatch("an elliptic subgroup");
            return coplanar_index_oracle(f->group_order);
        }
    }
    throw Error("invalid-argument", "unknown counter");
}

// ---- series ----

struct SeriesRow {
    std::int64_t n = 0;
    std::uint64_t count = 0;
    double elapsed_ms = 0.0;
};

struct ExperimentSeries {
    std::string id;
    std::uint64_t seed = kDefaultSeed;
    std::vector<SeriesRow> rows;
    std::optional<SlopeFit> fit;  // empty when fewer than two counts are positive
    std::string note;
};

inline ExperimentSeries run_series(const std::string& id, const GeneratorSpec& gen, const CounterSpec& counter,
                                   const std::vector<std::int64_t>& ns, std::uint64_t seed = kDefaultSeed,
                                   std::size_t burn_in = 0) {
    if (ns.size() < 3) throw Error("invalid-argument", "a series needs at least three values of n");
    for (std::size_t i = 1; i < ns.size(); ++i)
        if (ns[i] <= ns[i - 1]) throw Error("invalid-argument", "n values must be strictly increasing");
    ExperimentSeries s;
    s.id = id;
    s.seed = seed;
    Rng rng(seed);
    for (auto n : ns) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto inst = generate(gen, n, rng);
        const auto count = count_instance(counter, inst);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        s.rows.push_back({n, count, ms});
    }
    std::vector<std::pair<double, double>> data;
    for (std::size_t i = burn_in; i < s.rows.size(); ++i)
        data.emplace_back(static_cast<double>(s.rows[i].n), static_cast<double>(s.rows[i].count));
    std::size_t positive = 0;
    for (const auto& [n, c] : data) positive += c > 0;
    if (positive >= 2) {
        s.fit = fit_slope(data);
    } else {
        s.note = "slope undefined: fewer than two positive counts";
    }
    return s;
}

struct NamedExperiment {
    std::string name;
    std::string description;
    GeneratorSpec generator;
    CounterSpec counter;
};

inline std::vector<NamedExperiment> named_experiments() {
    const auto nonspecial = parse_poly("t - (x + y*s)", default_vars());
    return {
        {"ap-additive", "x+y+s+t zeros on the additive progression grid", {GeneratorKind::ap_additive}, {CounterKind::zeros_fiber}},
        {"ap-multiplicative", "xyst-1 zeros on the geometric progression grid", {GeneratorKind::ap_multiplicative}, {CounterKind::zeros_fiber}},
        {"nonspecial-zeros", "t-(x+ys) zeros on {1..n}^4", {GeneratorKind::balanced_grid, nonspecial}, {CounterKind::zeros_fiber}},
        {"elliptic-oracle", "index-sum count for the order-n subgroup", {GeneratorKind::elliptic}, {CounterKind::index_oracle}},
        {"elliptic-geometric", "float coplanar count on the embedded subgroup", {GeneratorKind::elliptic}, {CounterKind::coplanar_naive}},
        {"moment-coplanar", "coplanar count on the twisted cubic", {GeneratorKind::moment}, {CounterKind::coplanar_fast}},
        {"random-coplanar", "coplanar count on random lattice points in [0,n)^3", {GeneratorKind::random_cube}, {CounterKind::coplanar_fast}},
    };
}

inline NamedExperiment find_experiment(const std::string& name) {
    for (auto& e : named_experiments())
        if (e.name == name) return e;
    std::string known;
    for (const auto& e : named_experiments()) known += (known.empty() ? "" : ", ") + e.name;
    throw Error("unknown-experiment", "no experiment '" + name + "' (known: " + known + ")");
}

inline ExperimentSeries run_named(const std::string& name, const std::vector<std::int64_t>& ns,
                                  std::uint64_t seed = kDefaultSeed, unsigned threads = 1, std::size_t burn_in = 0) {
    auto e = find_experiment(name);
    e.counter.threads = threads;
    return run_series(name, e.generator, e.counter, ns, seed, burn_in);
}

/// n,count,elapsed_ms rows and a final `slope,<slope>,<residual>` row
/// (`slope,undefined,` when no fit).
inline std::string to_csv(const ExperimentSeries& s) {
    std::string out = "n,count,elapsed_ms\n";
    for (const auto& r : s.rows)
        out += std::to_string(r.n) + "," + std::to_string(r.count) + "," + format_double(r.elapsed_ms) + "\n";
    if (s.fit) {
        out += "slope," + format_double(s.fit->slope) + "," + format_double(s.fit->residual) + "\n";
    } else {
        out += "slope,undefined,\n";
    }
    return out;
}

}  // namespace polygeom
