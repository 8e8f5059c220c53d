#pragma once
// Counting zeros of a four-variable polynomial on a Cartesian product
// A x B x C x D.

#include "polygeom/error.hpp"
#include "polygeom/parallel.hpp"
#include "polygeom/polynomial.hpp"
#include "polygeom/rational.hpp"

#include <array>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace polygeom {

/// Four finite sets; set i is bound to variable i of the polynomial.
struct GridSets {
    std::array<std::vector<Rational>, 4> sets;

    std::uint64_t product_size() const {
        std::uint64_t p = 1;
        for (const auto& s : sets) p *= s.size();
        return p;
    }

    void validate() const {
        for (std::size_t i = 0; i < 4; ++i) {
            std::unordered_set<Rational> seen;
            for (const auto& v : sets[i])
                if (!seen.insert(v).second)
                    throw Error("invalid-sets", "set " + std::string(1, static_cast<char>('A' + i)) +
                                                    " repeats the value " + v.to_string());
        }
    }
};

inline std::vector<Rational> integer_range(std::int64_t lo, std::int64_t hi) {
    std::vector<Rational> v;
    for (std::int64_t k = lo; k <= hi; ++k) v.emplace_back(k);
    return v;
}

/// Reads the four-line sets format:
///   A: 1,2,3
///   B: 1/2, 0.25
///   ...
/// Blank lines and lines starting with '#' are skipped. Missing sets are empty.
inline GridSets parse_sets_csv(std::string_view text) {
    GridSets g;
    std::array<bool, 4> seen{};
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("syntax", "sets line " + std::to_string(lineno) + " has no ':'", first);
        std::string name = line.substr(first, colon - first);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
        if (name.size() != 1 || name[0] < 'A' || name[0] > 'D')
            throw ParseError("syntax", "sets line " + std::to_string(lineno) + " must start with A:, B:, C: or D:",
                             first);
        const std::size_t idx = static_cast<std::size_t>(name[0] - 'A');
        if (seen[idx]) throw Error("invalid-sets", "set " + name + " given twice");
        seen[idx] = true;
        std::string body = line.substr(colon + 1);
        std::istringstream items(body);
        std::string item;
        while (std::getline(items, item, ',')) {
            if (item.find_first_not_of(" \t\r") == std::string::npos) continue;
            try {
                g.sets[idx].push_back(Rational::parse(item));
            } catch (const std::exception& e) {
                throw Error("syntax", "sets line " + std::to_string(lineno) + ": " + e.what());
            }
        }
    }
    g.validate();
    return g;
}

inline std::string to_sets_csv(const GridSets& g) {
    std::string out;
    for (std::size_t i = 0; i < 4; ++i) {
        out += static_cast<char>('A' + i);
        out += ":";
        for (std::size_t k = 0; k < g.sets[i].size(); ++k) {
            out += k == 0 ? " " : ",";
            out += g.sets[i][k].to_string();
        }
        out += "\n";
    }
    return out;
}

enum class ZeroMethod { naive, fiber };

inline std::string to_string(ZeroMethod m) { return m == ZeroMethod::naive ? "naive" : "fiber"; }

struct ZeroCountReport {
    std::uint64_t count = 0;
    ZeroMethod method = ZeroMethod::naive;
    std::uint64_t degenerate_fibers = 0;  // identically-zero slices (fiber method)
    double elapsed_ms = 0.0;
};

namespace detail {

struct SparseTerm {
    Rational coeff;
    std::array<std::uint32_t, 4> exps{};
    std::vector<std::pair<std::uint8_t, std::uint32_t>> factors;  // (var, exp) with exp > 0
};

inline std::vector<SparseTerm> flatten(const Polynomial& f) {
    std::vector<SparseTerm> out;
    for (const auto& [e, c] : f.terms()) {
        SparseTerm t{c, {}, {}};
        for (std::size_t v = 0; v < 4; ++v) {
            t.exps[v] = e[v];
            if (e[v] != 0) t.factors.emplace_back(static_cast<std::uint8_t>(v), e[v]);
        }
        out.push_back(std::move(t));
    }
    return out;
}

// table[v][i][k] = sets[v][i]^k, k up to the degree of f in variable v.
inline std::array<std::vector<std::vector<Rational>>, 4> power_tables(const Polynomial& f, const GridSets& g) {
    std::array<std::vector<std::vector<Rational>>, 4> table;
    for (std::size_t v = 0; v < 4; ++v) {
        const int dv = std::max(f.degree_in(v), 0);
        for (const auto& x : g.sets[v]) {
            std::vector<Rational> p{Rational(1)};
            for (int k = 1; k <= dv; ++k) p.push_back(p.back() * x);
            table[v].push_back(std::move(p));
        }
    }
    return table;
}

inline void check_four(const Polynomial& f) {
    if (f.arity() != 4)
        throw Error("arity", "zero counting needs a polynomial in 4 variables, got " + std::to_string(f.arity()));
}

}  // namespace detail

/// Evaluates F at every point of A x B x C x D.
inline ZeroCountReport count_naive(const Polynomial& f, const GridSets& g, unsigned threads = 1) {
    detail::check_four(f);
    const auto start = std::chrono::steady_clock::now();
    ZeroCountReport rep;
    rep.method = ZeroMethod::naive;
    if (g.product_size() != 0) {
        const auto terms = detail::flatten(f);
        const auto pw = detail::power_tables(f, g);
        const auto& S = g.sets;
        rep.count = parallel_sum(S[0].size(), threads, [&](std::size_t i) {
            std::uint64_t local = 0;
            std::array<std::size_t, 4> idx{i, 0, 0, 0};
            for (idx[1] = 0; idx[1] < S[1].size(); ++idx[1])
                for (idx[2] = 0; idx[2] < S[2].size(); ++idx[2])
                    for (idx[3] = 0; idx[3] < S[3].size(); ++idx[3]) {
                        Rational sum;
                        for (const auto& t : terms) {
                            Rational m = t.coeff;
                            for (const auto& [v, e] : t.factors) m *= pw[v][idx[v]][e];
                            sum += m;
                        }
                        if (sum.is_zero()) ++local;
                    }
            return local;
        });
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

/// For each assignment of the three other variables, solves the univariate
/// slice in `solve_var` against a hash index of its set. Identically-zero
/// slices contribute the whole set.
inline ZeroCountReport count_fiber(const Polynomial& f, const GridSets& g, std::size_t solve_var = 3,
                                   unsigned threads = 1) {
    detail::check_four(f);
    if (solve_var >= 4) throw Error("arity", "solve variable index out of range");
    const auto start = std::chrono::steady_clock::now();
    ZeroCountReport rep;
    rep.method = ZeroMethod::fiber;

    std::array<std::size_t, 3> other{};
    for (std::size_t v = 0, k = 0; v < 4; ++v)
        if (v != solve_var) other[k++] = v;
    const auto& S = g.sets;
    const auto& target = S[solve_var];

    if (g.product_size() != 0) {
        const auto terms = detail::flatten(f);
        const auto pw = detail::power_tables(f, g);
        const std::unordered_set<Rational> index(target.begin(), target.end());
        const std::size_t deg = static_cast<std::size_t>(std::max(f.degree_in(solve_var), 0));
        std::atomic<std::uint64_t> degenerate{0};

        auto solve_one = [&](const std::array<std::size_t, 4>& idx, std::vector<Rational>& coeffs) -> std::uint64_t {
            std::fill(coeffs.begin(), coeffs.end(), Rational(0));
            for (const auto& t : terms) {
                Rational m = t.coeff;
                for (const auto& [v, e] : t.factors)
                    if (v != solve_var) m *= pw[v][idx[v]][e];
                coeffs[t.exps[solve_var]] += m;
            }
            std::size_t d = deg + 1;
            while (d > 0 && coeffs[d - 1].is_zero()) --d;
            if (d == 0) {
                degenerate.fetch_add(1, std::memory_order_relaxed);
                return target.size();
            }
            const int degree = static_cast<int>(d) - 1;
            if (degree == 0) return 0;
            if (degree == 1) return index.contains(-coeffs[0] / coeffs[1]) ? 1 : 0;
            if (degree == 2) {
                const Rational disc = coeffs[1] * coeffs[1] - Rational(4) * coeffs[2] * coeffs[0];
                const auto root = exact_sqrt(disc);
                if (!root) return 0;
                const Rational two_a = Rational(2) * coeffs[2];
                const Rational r1 = (-coeffs[1] + *root) / two_a;
                const Rational r2 = (-coeffs[1] - *root) / two_a;
                std::uint64_t n = index.contains(r1) ? 1 : 0;
                if (r2 != r1 && index.contains(r2)) ++n;
                return n;
            }
            std::vector<Rational> c(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(d));
            return uni_roots_in(UniPoly(std::move(c)), target).size();
        };

        rep.count = parallel_sum(S[other[0]].size(), threads, [&](std::size_t i) {
            std::vector<Rational> coeffs(deg + 1);
            std::uint64_t local = 0;
            std::array<std::size_t, 4> idx{};
            idx[other[0]] = i;
            for (std::size_t j = 0; j < S[other[1]].size(); ++j) {
                idx[other[1]] = j;
                for (std::size_t k = 0; k < S[other[2]].size(); ++k) {
                    idx[other[2]] = k;
                    local += solve_one(idx, coeffs);
                }
            }
            return local;
        });
        rep.degenerate_fibers = degenerate.load();
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace polygeom
