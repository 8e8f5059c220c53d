#pragma once
// Sparse multivariate polynomials over Q in an ordered list of named
// variables, plus dense univariate polynomials for slice computations.

#include "polygeom/error.hpp"
#include "polygeom/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace polygeom {

using Exponents = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

/// Strict "greater than" in graded lexicographic order: higher total degree
/// first, ties broken by the exponent of the earliest variable.
struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const {
        const auto da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

class Polynomial {
public:
    using TermMap = std::map<Exponents, Rational, GrlexGreater>;

    Polynomial() = default;
    explicit Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Polynomial constant(std::vector<std::string> vars, const Rational& c) {
        Polynomial p(std::move(vars));
        p.add_term(Exponents(p.arity(), 0), c);
        return p;
    }

    static Polynomial variable(std::vector<std::string> vars, std::size_t index) {
        Polynomial p(std::move(vars));
        Exponents e(p.arity(), 0);
        e.at(index) = 1;
        p.add_term(e, Rational(1));
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t arity() const { return vars_.size(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Total degree; -1 for the zero polynomial.
    int degree() const { return degree_; }

    int degree_in(std::size_t var) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
        return d;
    }

    bool is_constant() const { return degree_ <= 0; }

    std::size_t var_index(std::string_view name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        throw Error("undeclared-variable", "variable '" + std::string(name) + "' is not declared");
    }

    /// Leading term under graded-lex order. Precondition: nonzero.
    const Exponents& leading_exponents() const { return terms_.begin()->first; }
    const Rational& leading_coefficient() const { return terms_.begin()->second; }

    void add_term(const Exponents& e, const Rational& c) {
        if (e.size() != arity()) throw Error("arity", "exponent vector length does not match variable count");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
                recompute_degree();
                return;
            }
        }
        degree_ = std::max(degree_, static_cast<int>(total_degree(e)));
    }

    Rational coefficient(const Exponents& e) const {
        const auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Exact evaluation through per-variable power tables.
    Rational eval(std::span<const Rational> point) const {
        if (point.size() != arity())
            throw Error("arity", "point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                                     std::to_string(arity()) + " variables");
        std::vector<std::vector<Rational>> powers(arity());
        for (std::size_t v = 0; v < arity(); ++v) {
            const int dv = degree_in(v);
            powers[v].reserve(static_cast<std::size_t>(std::max(dv, 0)) + 1);
            powers[v].emplace_back(1);
            for (int k = 1; k <= dv; ++k) powers[v].push_back(powers[v].back() * point[v]);
        }
        Rational sum;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t v = 0; v < arity(); ++v)
                if (e[v] != 0) t *= powers[v][e[v]];
            sum += t;
        }
        return sum;
    }

    Rational eval(std::initializer_list<Rational> point) const {
        return eval(std::span<const Rational>(point.begin(), point.size()));
    }

    /// Float evaluation; used by the analytic detector only.
    double eval_double(std::span<const double> point) const {
        double sum = 0.0;
        for (const auto& [e, c] : terms_) {
            double t = c.to_double();
            for (std::size_t v = 0; v < arity(); ++v)
                for (std::uint32_t k = 0; k < e[v]; ++k) t *= point[v];
            sum += t;
        }
        return sum;
    }

    Polynomial partial(std::size_t var) const {
        Polynomial out(vars_);
        for (const auto& [e, c] : terms_) {
            if (e.at(var) == 0) continue;
            Exponents d = e;
            --d[var];
            out.add_term(d, c * Rational(static_cast<std::int64_t>(e[var])));
        }
        return out;
    }

    Polynomial partial(std::string_view var) const { return partial(var_index(var)); }

    /// Substitutes values for some variables; the result lives in the
    /// remaining variables (original order). A zero result means every
    /// coefficient vanished at the binding.
    Polynomial specialize(const std::vector<std::optional<Rational>>& binding) const {
        if (binding.size() != arity()) throw Error("arity", "binding length does not match variable count");
        std::vector<std::string> rest;
        std::vector<std::size_t> keep;
        for (std::size_t v = 0; v < arity(); ++v)
            if (!binding[v]) {
                rest.push_back(vars_[v]);
                keep.push_back(v);
            }
        std::vector<std::vector<Rational>> powers(arity());
        for (std::size_t v = 0; v < arity(); ++v) {
            if (!binding[v]) continue;
            powers[v].emplace_back(1);
            for (int k = 1; k <= degree_in(v); ++k) powers[v].push_back(powers[v].back() * *binding[v]);
        }
        Polynomial out(std::move(rest));
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            Exponents r;
            r.reserve(keep.size());
            for (std::size_t v = 0; v < arity(); ++v) {
                if (binding[v]) {
                    if (e[v] != 0) t *= powers[v][e[v]];
                } else {
                    r.push_back(e[v]);
                }
            }
            out.add_term(r, t);
        }
        return out;
    }

    Polynomial specialize(const std::map<std::string, Rational>& bindings) const {
        std::vector<std::optional<Rational>> b(arity());
        for (const auto& [name, value] : bindings) b[var_index(name)] = value;
        return specialize(b);
    }

    Polynomial operator-() const {
        Polynomial out(vars_);
        for (const auto& [e, c] : terms_) out.add_term(e, -c);
        return out;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        check_same_vars(a, b);
        Polynomial out = a;
        for (const auto& [e, c] : b.terms_) out.add_term(e, c);
        return out;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        check_same_vars(a, b);
        Polynomial out = a;
        for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
        return out;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check_same_vars(a, b);
        Polynomial out(a.vars_);
        Exponents e(a.arity());
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    friend Polynomial operator*(const Rational& s, const Polynomial& p) {
        Polynomial out(p.vars_);
        for (const auto& [e, c] : p.terms_) out.add_term(e, s * c);
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    /// Canonical text: graded-lex order, explicit `*` and `^`.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            const bool neg = c.sign() < 0;
            const Rational mag = neg ? -c : c;
            if (first) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            first = false;
            std::string mono;
            for (std::size_t v = 0; v < arity(); ++v) {
                if (e[v] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_[v];
                if (e[v] > 1) mono += "^" + std::to_string(e[v]);
            }
            if (mono.empty()) {
                out += mag.to_string();
            } else if (mag.is_one()) {
                out += mono;
            } else {
                out += mag.to_string() + "*" + mono;
            }
        }
        return out;
    }

private:
    static void check_same_vars(const Polynomial& a, const Polynomial& b) {
        if (a.vars_ != b.vars_) throw Error("arity", "polynomials are over different variable lists");
    }

    void recompute_degree() {
        degree_ = -1;
        for (const auto& [e, c] : terms_) degree_ = std::max(degree_, static_cast<int>(total_degree(e)));
    }

    std::vector<std::string> vars_;
    TermMap terms_;
    int degree_ = -1;
};

/// Dense univariate polynomial, coefficients from the constant term up.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly monomial(const Rational& c, std::size_t k) {
        std::vector<Rational> v(k + 1);
        v[k] = c;
        return UniPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    const Rational& leading() const { return c_.back(); }

    Rational eval(const Rational& x) const {
        Rational acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return UniPoly(std::move(v));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
        return UniPoly(std::move(v));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(v));
    }
    friend UniPoly operator*(const Rational& s, const UniPoly& p) {
        std::vector<Rational> v = p.c_;
        for (auto& x : v) x *= s;
        return UniPoly(std::move(v));
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    /// Euclidean division over Q: returns (quotient, remainder).
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<Rational> r = c_;
        const int dd = d.degree();
        const int qd = degree() - dd;
        if (qd < 0) return {UniPoly{}, *this};
        std::vector<Rational> q(static_cast<std::size_t>(qd) + 1);
        const Rational inv = Rational(1) / d.leading();
        for (int k = qd; k >= 0; --k) {
            const Rational f = r[static_cast<std::size_t>(k + dd)] * inv;
            q[static_cast<std::size_t>(k)] = f;
            if (f.is_zero()) continue;
            for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k + j)] -= f * d.c_[static_cast<std::size_t>(j)];
        }
        return {UniPoly(std::move(q)), UniPoly(std::move(r))};
    }

    UniPoly monic() const {
        if (is_zero()) return {};
        return (Rational(1) / leading()) * *this;
    }

    std::string to_string(std::string_view var = "t") const {
        Polynomial p({std::string(var)});
        for (std::size_t k = 0; k < c_.size(); ++k) p.add_term({static_cast<std::uint32_t>(k)}, c_[k]);
        return p.to_string();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Monic gcd over Q; gcd(0, 0) = 0.
inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Converts a polynomial that involves at most one variable into a dense
/// univariate polynomial in variable `var`.
inline UniPoly to_uni(const Polynomial& p, std::size_t var = 0) {
    std::vector<Rational> v(static_cast<std::size_t>(std::max(p.degree_in(var), 0)) + 1);
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != var && e[i] != 0)
                throw Error("arity", "polynomial is not univariate in '" + p.vars()[var] + "'");
        v[e[var]] += c;
    }
    return UniPoly(std::move(v));
}

/// Candidates at which `g` vanishes, in candidate order without repeats.
/// Rejects the zero polynomial: an identically-zero fiber must be handled
/// by the caller.
inline std::vector<Rational> uni_roots_in(const UniPoly& g, std::span<const Rational> candidates) {
    if (g.is_zero()) throw Error("degenerate", "uni_roots_in called on the zero polynomial");
    std::vector<Rational> out;
    std::unordered_set<Rational> seen;
    for (const auto& c : candidates)
        if (g.eval(c).is_zero() && seen.insert(c).second) out.push_back(c);
    return out;
}

}  // namespace polygeom
