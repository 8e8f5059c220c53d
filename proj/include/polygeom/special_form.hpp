#pragma once
// Heuristic detection of the additive special form
//     phi1(x) + phi2(y) + phi3(s) + phi4(t) = 0
// of a surface F(x, y, s, t) = 0.
//
// Near a regular point, solve F = 0 for y = y(x, s, t). The form is present
// exactly when the implicit-derivative ratios
//     y_s / y_t   (independent of x)
//     y_s / y_x   (independent of t)
//     y_t / y_x   (independent of s)
// hold. Since y_v = -F_v / F_y, each ratio is F_a / F_b evaluated on the
// surface, and the tests walk one free variable along a fiber of Z(F) while
// the other two stay frozen. Floating point sampling cannot certify the
// form; the verdict carries every evidence number so callers can judge.

#include "polygeom/error.hpp"
#include "polygeom/gcd.hpp"
#include "polygeom/polynomial.hpp"
#include "polygeom/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polygeom {

/// Fixed detector constants; the CLI exposes each as a flag.
struct DetectorConfig {
    double box = 2.0;               // samples drawn from [-box, box]
    double pass_threshold = 1e-6;   // ratio spread below this: independence holds
    double fail_threshold = 1e-2;   // ratio spread above this: decisive failure
    double gradient_floor = 1e-8;   // every |F_v| must exceed this at a sample
    double residual_tol = 1e-12;    // |F| relative to the size of its terms
    double g_threshold = 1e-8;      // normalized |G| below this counts as vanishing
    int trials = 50;
    int positions = 7;              // fiber positions per ratio trial (>= 5)
    int popular_params = 8;         // random (c, d) slices for the popular-curve check
    int retries_per_sample = 200;
};

struct SurfaceSample {
    std::array<double, 4> point{};
    double residual = 0.0;
    std::array<double, 4> gradient{};
};

enum class FormClass { special, non_special, inconclusive };

inline std::string to_string(FormClass c) {
    switch (c) {
        case FormClass::special: return "special";
        case FormClass::non_special: return "non-special";
        default: return "inconclusive";
    }
}

struct PopularComponent {
    Polynomial factor;
    std::size_t multiplicity = 0;
    bool popular = false;
};

struct PopularReport {
    std::vector<PopularComponent> components;
    std::vector<std::size_t> exceptional;  // indices of parameters whose slice vanishes identically
    std::size_t threshold = 0;             // delta^2
};

struct FormVerdict {
    FormClass classification = FormClass::inconclusive;
    // Max relative spread of F_s/F_t, F_s/F_x, F_t/F_x; NaN when the test could not run.
    std::array<double, 3> ratio_spread{};
    double g_max = std::numeric_limits<double>::quiet_NaN();
    std::optional<PopularReport> popular;
    std::vector<std::string> diagnostics;
};

namespace detail {

inline constexpr std::size_t kSolveVar = 1;  // y

/// Polynomial with double coefficients and precompiled gradient.
class FloatSurface {
public:
    explicit FloatSurface(const Polynomial& f) {
        if (f.arity() != 4) throw Error("arity", "the detector needs a polynomial in 4 variables");
        if (f.is_zero()) throw Error("degenerate", "the zero polynomial has no regular points");
        f_ = compile(f);
        for (std::size_t v = 0; v < 4; ++v) grad_[v] = compile(f.partial(v));
        deg_y_ = std::max(f.degree_in(kSolveVar), 0);
    }

    double eval(const std::array<double, 4>& p) const { return eval(f_, p); }

    /// Sum of absolute term values at p; the natural scale for a residual.
    double magnitude(const std::array<double, 4>& p) const {
        double m = 0.0;
        for (const auto& t : f_) m += std::abs(term_value(t, p));
        return m;
    }

    std::array<double, 4> gradient(const std::array<double, 4>& p) const {
        std::array<double, 4> g{};
        for (std::size_t v = 0; v < 4; ++v) g[v] = eval(grad_[v], p);
        return g;
    }

    int degree_in_y() const { return deg_y_; }

    /// Coefficients (constant term first) of F as a polynomial in y at fixed x, s, t.
    std::vector<double> y_slice(const std::array<double, 4>& p) const {
        std::vector<double> c(static_cast<std::size_t>(deg_y_) + 1, 0.0);
        for (const auto& t : f_) {
            double m = t.coeff;
            for (std::size_t v = 0; v < 4; ++v)
                if (v != kSolveVar) m *= std::pow(p[v], static_cast<double>(t.exps[v]));
            c[t.exps[kSolveVar]] += m;
        }
        return c;
    }

private:
    struct Term {
        double coeff;
        std::array<std::uint32_t, 4> exps;
    };

    static std::vector<Term> compile(const Polynomial& p) {
        std::vector<Term> out;
        for (const auto& [e, c] : p.terms()) out.push_back({c.to_double(), {e[0], e[1], e[2], e[3]}});
        return out;
    }

    static double term_value(const Term& t, const std::array<double, 4>& p) {
        double m = t.coeff;
        for (std::size_t v = 0; v < 4; ++v)
            for (std::uint32_t k = 0; k < t.exps[v]; ++k) m *= p[v];
        return m;
    }

    static double eval(const std::vector<Term>& terms, const std::array<double, 4>& p) {
        double s = 0.0;
        for (const auto& t : terms) s += term_value(t, p);
        return s;
    }

    std::vector<Term> f_;
    std::array<std::vector<Term>, 4> grad_;
    int deg_y_ = 0;
};

inline double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// Real roots of a dense polynomial by sign-change bracketing on the Cauchy
/// interval, bisection, then Newton polishing. Even-multiplicity roots are
/// not found, which only costs the sampler a redraw.
inline std::vector<double> real_roots(std::vector<double> c) {
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    std::vector<double> roots;
    if (c.size() < 2) return roots;
    if (c.size() == 2) {
        roots.push_back(-c[0] / c[1]);
        return roots;
    }
    const std::size_t n = c.size() - 1;
    double bound = 0.0;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i] / c[n]));
    bound += 1.0;
    std::vector<double> dc(n);
    for (std::size_t i = 1; i <= n; ++i) dc[i - 1] = c[i] * static_cast<double>(i);

    const std::size_t steps = 256 * n;
    double a = -bound;
    double fa = horner(c, a);
    for (std::size_t k = 1; k <= steps; ++k) {
        const double b = -bound + 2.0 * bound * static_cast<double>(k) / static_cast<double>(steps);
        const double fb = horner(c, b);
        if (fa == 0.0) {
            roots.push_back(a);
        } else if ((fa < 0) != (fb < 0) && fb != 0.0) {
            double lo = a, hi = b, flo = fa;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = horner(c, mid);
                if ((fm < 0) == (flo < 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            double r = 0.5 * (lo + hi);
            for (int it = 0; it < 3; ++it) {
                const double d = horner(dc, r);
                if (d == 0.0) break;
                const double next = r - horner(c, r) / d;
                if (!(next >= a && next <= b)) break;
                r = next;
            }
            roots.push_back(r);
        }
        a = b;
        fa = fb;
    }
    if (fa == 0.0) roots.push_back(a);
    return roots;
}

/// A regular surface point over (x, s, t) taken from `base`, with y solved.
/// With `near`, the root closest to it is used (branch continuation);
/// otherwise a root is chosen at random.
inline std::optional<SurfaceSample> solve_point(const FloatSurface& f, std::array<double, 4> base,
                                                std::optional<double> near, Rng& rng, const DetectorConfig& cfg) {
    const auto roots = real_roots(f.y_slice(base));
    if (roots.empty()) return std::nullopt;
    std::size_t pick = 0;
    if (near) {
        for (std::size_t i = 1; i < roots.size(); ++i)
            if (std::abs(roots[i] - *near) < std::abs(roots[pick] - *near)) pick = i;
    } else {
        pick = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(roots.size()) - 1));
    }
    base[kSolveVar] = roots[pick];
    SurfaceSample s;
    s.point = base;
    s.residual = std::abs(f.eval(base));
    if (!(s.residual <= cfg.residual_tol * std::max(1.0, f.magnitude(base)))) return std::nullopt;
    s.gradient = f.gradient(base);
    for (double g : s.gradient)
        if (!(std::abs(g) >= cfg.gradient_floor)) return std::nullopt;
    return s;
}

inline void require_y_dependence(const FloatSurface& f) {
    if (f.degree_in_y() < 1) throw Error("degenerate", "F does not depend on y, so no fiber can be solved for y");
}

inline double relative_spread(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    const double median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    return (values.back() - values.front()) / (std::abs(median) + 1e-12);
}

}  // namespace detail

/// Draws (x, s, t) uniformly from the box and solves for y. Points that miss
/// the residual tolerance or the gradient floor are redrawn.
inline std::vector<SurfaceSample> sample_surface(const Polynomial& f, std::size_t count,
                                                 std::uint64_t seed = kDefaultSeed, const DetectorConfig& cfg = {}) {
    const detail::FloatSurface surf(f);
    detail::require_y_dependence(surf);
    Rng rng(seed);
    std::vector<SurfaceSample> out;
    const std::size_t budget = count * static_cast<std::size_t>(cfg.retries_per_sample);
    for (std::size_t attempt = 0; out.size() < count; ++attempt) {
        if (attempt >= budget)
            throw Error("degenerate", "found only " + std::to_string(out.size()) + " of " + std::to_string(count) +
                                          " regular surface points");
        std::array<double, 4> p{rng.uniform(-cfg.box, cfg.box), 0.0, rng.uniform(-cfg.box, cfg.box),
                                rng.uniform(-cfg.box, cfg.box)};
        if (auto s = detail::solve_point(surf, p, std::nullopt, rng, cfg)) out.push_back(*s);
    }
    return out;
}

/// Max relative spread of F_num / F_den while `free_var` moves along a fiber
/// of Z(F) with the remaining two variables (other than y) frozen.
inline double ratio_test(const Polynomial& f, std::size_t num_var, std::size_t den_var, std::size_t free_var,
                         std::uint64_t seed = kDefaultSeed, const DetectorConfig& cfg = {}) {
    if (free_var == detail::kSolveVar || free_var >= 4 || num_var >= 4 || den_var >= 4)
        throw Error("arity", "ratio_test variables must be indices of x, s or t");
    const detail::FloatSurface surf(f);
    detail::require_y_dependence(surf);
    const Rng master(seed);
    const int positions = std::max(cfg.positions, 5);
    double worst = 0.0;
    int completed = 0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = master.split(static_cast<std::uint64_t>(trial));
        for (int attempt = 0; attempt < cfg.retries_per_sample; ++attempt) {
            std::array<double, 4> base{};
            for (std::size_t v = 0; v < 4; ++v) base[v] = rng.uniform(-cfg.box, cfg.box);
            std::vector<double> free_vals(static_cast<std::size_t>(positions));
            for (auto& x : free_vals) x = rng.uniform(-cfg.box, cfg.box);
            std::sort(free_vals.begin(), free_vals.end());

            std::vector<double> ratios;
            std::optional<double> prev_y;
            for (double fv : free_vals) {
                base[free_var] = fv;
                const auto s = detail::solve_point(surf, base, prev_y, rng, cfg);
                if (!s) break;
                prev_y = s->point[detail::kSolveVar];
                ratios.push_back(s->gradient[num_var] / s->gradient[den_var]);
            }
            if (ratios.size() != free_vals.size()) continue;
            worst = std::max(worst, detail::relative_spread(ratios));
            ++completed;
            break;
        }
    }
    if (completed == 0) throw Error("sampler", "no ratio trial found a regular fiber inside the box");
    return worst;
}

/// Max over trials of |G| / (|grad_st(p)| |grad_st(p')|), where p and p' are
/// two surface points over the same (s, t) and
///     G = F_s(p) F_t(p') - F_s(p') F_t(p).
inline double g_sample(const Polynomial& f, std::uint64_t seed = kDefaultSeed, const DetectorConfig& cfg = {}) {
    const detail::FloatSurface surf(f);
    detail::require_y_dependence(surf);
    const Rng master(seed);
    double worst = 0.0;
    int completed = 0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = master.split(static_cast<std::uint64_t>(trial));
        for (int attempt = 0; attempt < cfg.retries_per_sample; ++attempt) {
            std::array<double, 4> base{rng.uniform(-cfg.box, cfg.box), 0.0, rng.uniform(-cfg.box, cfg.box),
                                       rng.uniform(-cfg.box, cfg.box)};
            const auto p = detail::solve_point(surf, base, std::nullopt, rng, cfg);
            if (!p) continue;
            base[0] = rng.uniform(-cfg.box, cfg.box);
            if (base[0] == p->point[0]) continue;
            const auto q = detail::solve_point(surf, base, p->point[detail::kSolveVar], rng, cfg);
            if (!q) continue;
            const double fs1 = p->gradient[2], ft1 = p->gradient[3];
            const double fs2 = q->gradient[2], ft2 = q->gradient[3];
            const double g = fs1 * ft2 - fs2 * ft1;
            const double norm = std::hypot(fs1, ft1) * std::hypot(fs2, ft2);
            worst = std::max(worst, std::abs(g) / norm);
            ++completed;
            break;
        }
    }
    if (completed == 0) throw Error("sampler", "no slice had two solvable x-fibers inside the box");
    return worst;
}

/// Common components of the slice curves F(x, y, c, d) = 0 over the given
/// parameters, found through pairwise gcds. A component dividing more than
/// delta^2 slices is popular.
inline PopularReport popular_components(const Polynomial& f, const std::vector<std::pair<Rational, Rational>>& params) {
    if (f.arity() != 4) throw Error("arity", "popular_components needs a polynomial in 4 variables");
    PopularReport rep;
    rep.threshold = static_cast<std::size_t>(f.degree()) * static_cast<std::size_t>(f.degree());
    std::vector<Polynomial> slices;
    for (std::size_t i = 0; i < params.size(); ++i) {
        Polynomial g = f.specialize(std::vector<std::optional<Rational>>{std::nullopt, std::nullopt, params[i].first,
                                                                         params[i].second});
        if (g.is_zero()) {
            rep.exceptional.push_back(i);
        } else {
            slices.push_back(std::move(g));
        }
    }
    if (slices.size() < 2) throw Error("degenerate", "fewer than 2 slices outside the exceptional set");

    std::vector<Polynomial> candidates;
    auto add_candidate = [&](Polynomial g) {
        if (g.degree() <= 0) return false;
        if (std::find(candidates.begin(), candidates.end(), g) != candidates.end()) return false;
        candidates.push_back(std::move(g));
        return true;
    };
    for (std::size_t i = 0; i < slices.size(); ++i)
        for (std::size_t j = i + 1; j < slices.size(); ++j) add_candidate(bivariate_gcd(slices[i], slices[j]));
    // Split overlapping candidates into their common parts.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < candidates.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < candidates.size() && !changed; ++j)
                changed = add_candidate(bivariate_gcd(candidates[i], candidates[j]));
    }

    for (auto& c : candidates) {
        PopularComponent pc;
        for (const auto& s : slices)
            if (divide_exact(s, c)) ++pc.multiplicity;
        pc.popular = pc.multiplicity > rep.threshold;
        pc.factor = std::move(c);
        rep.components.push_back(std::move(pc));
    }
    std::sort(rep.components.begin(), rep.components.end(), [](const auto& a, const auto& b) {
        if (a.multiplicity != b.multiplicity) return a.multiplicity > b.multiplicity;
        return a.factor.to_string() < b.factor.to_string();
    });
    return rep;
}

/// Runs the three ratio tests, the G sampler and a popular-curve scan on
/// random integer slices, and combines them:
///   special      all three spreads < pass_threshold and max |G| < g_threshold
///   non-special  some spread > fail_threshold
///   inconclusive otherwise, including sampler failures
inline FormVerdict classify(const Polynomial& f, std::uint64_t seed = kDefaultSeed, const DetectorConfig& cfg = {}) {
    if (f.arity() != 4) throw Error("arity", "classify needs a polynomial in 4 variables");
    FormVerdict v;
    const Rng master(seed);
    // (numerator, denominator, free variable) for y_s/y_t, y_s/y_x, y_t/y_x.
    constexpr std::array<std::array<std::size_t, 3>, 3> kSplits{{{2, 3, 0}, {2, 0, 3}, {3, 0, 2}}};
    constexpr std::array<const char*, 3> kNames{"F_s/F_t along x", "F_s/F_x along t", "F_t/F_x along s"};
    bool all_ran = true;
    for (std::size_t k = 0; k < 3; ++k) {
        try {
            v.ratio_spread[k] =
                ratio_test(f, kSplits[k][0], kSplits[k][1], kSplits[k][2], master.split(k).next(), cfg);
        } catch (const Error& e) {
            v.ratio_spread[k] = std::numeric_limits<double>::quiet_NaN();
            v.diagnostics.push_back(std::string(kNames[k]) + ": " + e.what());
            all_ran = false;
        }
    }
    try {
        v.g_max = g_sample(f, master.split(3).next(), cfg);
    } catch (const Error& e) {
        v.diagnostics.push_back(std::string("G sampler: ") + e.what());
    }
    try {
        Rng prng = master.split(4);
        std::vector<std::pair<Rational, Rational>> params;
        for (int i = 0; i < cfg.popular_params; ++i)
            params.emplace_back(Rational(prng.uniform_int(-5, 5)), Rational(prng.uniform_int(-5, 5)));
        v.popular = popular_components(f, params);
    } catch (const Error& e) {
        v.diagnostics.push_back(std::string("popular components: ") + e.what());
    }

    const bool decisive_fail = std::any_of(v.ratio_spread.begin(), v.ratio_spread.end(),
                                           [&](double s) { return s > cfg.fail_threshold; });
    const bool all_pass = all_ran && std::all_of(v.ratio_spread.begin(), v.ratio_spread.end(),
                                                 [&](double s) { return s < cfg.pass_threshold; });
    if (decisive_fail) {
        v.classification = FormClass::non_special;
    } else if (all_pass && v.g_max < cfg.g_threshold) {
        v.classification = FormClass::special;
    } else {
        v.classification = FormClass::inconclusive;
    }
    return v;
}

}  // namespace polygeom
