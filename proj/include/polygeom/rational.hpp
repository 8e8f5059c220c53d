#pragma once
// Exact rational scalar with an int64 fast path.
//
// Values whose reduced numerator and denominator fit in int64 are stored
// inline; anything larger is promoted to a shared GMP rational. The
// representation is canonical: a value that fits inline is never stored as
// a big rational, so equality and hashing can trust the active form.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polygeom {

class Rational {
public:
    Rational() = default;

    template <std::signed_integral I>
    Rational(I v) {  // NOLINT(google-explicit-constructor)
        set_from_i128(static_cast<__int128>(v), 1);
    }
    template <std::unsigned_integral I>
    Rational(I v) {  // NOLINT(google-explicit-constructor)
        set_from_i128(static_cast<__int128>(v), 1);
    }

    Rational(std::int64_t num, std::int64_t den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        normalize_i128(num, den);
    }

    explicit Rational(const mpq_class& q) { set_from_mpq(q); }

    /// Parses `12`, `-3/4`, `0.125`, `1.5e-3`. Decimals are read exactly.
    static Rational parse(std::string_view text);

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
    int sign() const {
        if (big_) return sgn(*big_);
        return (num_ > 0) - (num_ < 0);
    }
    bool is_small() const { return !big_; }

    Rational numerator() const {
        if (!big_) return Rational(num_);
        return Rational(mpq_class(big_->get_num()));
    }
    Rational denominator() const {
        if (!big_) return Rational(den_);
        return Rational(mpq_class(big_->get_den()));
    }

    mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class q{mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_))};
        return q;
    }

    double to_double() const {
        if (big_) return big_->get_d();
        if (den_ == 1) return static_cast<double>(num_);
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string to_string() const {
        if (big_) return big_->get_str();
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    std::size_t hash() const {
        if (big_) return std::hash<std::string>{}(big_->get_str());
        std::uint64_t h = static_cast<std::uint64_t>(num_) * 0x9E3779B97F4A7C15ULL;
        h ^= static_cast<std::uint64_t>(den_) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }

    Rational operator-() const {
        Rational r;
        if (!big_) {
            r.num_ = -num_;  // INT64_MIN is never stored inline
            r.den_ = den_;
        } else {
            r.set_from_mpq(-*big_);
        }
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            Rational r;
            if (a.den_ == 1 && b.den_ == 1) {
                r.set_from_i128(static_cast<__int128>(a.num_) + b.num_, 1);
                return r;
            }
            const __int128 n = static_cast<__int128>(a.num_) * b.den_ +
                               static_cast<__int128>(b.num_) * a.den_;
            const __int128 d = static_cast<__int128>(a.den_) * b.den_;
            r.normalize_i128(n, d);
            return r;
        }
        return Rational(a.to_mpq() + b.to_mpq());
    }

    friend Rational operator-(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            Rational r;
            if (a.den_ == 1 && b.den_ == 1) {
                r.set_from_i128(static_cast<__int128>(a.num_) - b.num_, 1);
                return r;
            }
            const __int128 n = static_cast<__int128>(a.num_) * b.den_ -
                               static_cast<__int128>(b.num_) * a.den_;
            const __int128 d = static_cast<__int128>(a.den_) * b.den_;
            r.normalize_i128(n, d);
            return r;
        }
        return Rational(a.to_mpq() - b.to_mpq());
    }

    friend Rational operator*(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            Rational r;
            const __int128 n = static_cast<__int128>(a.num_) * b.num_;
            if (a.den_ == 1 && b.den_ == 1) {
                r.set_from_i128(n, 1);
                return r;
            }
            r.normalize_i128(n, static_cast<__int128>(a.den_) * b.den_);
            return r;
        }
        return Rational(a.to_mpq() * b.to_mpq());
    }

    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("division by zero");
        if (!a.big_ && !b.big_) {
            Rational r;
            r.normalize_i128(static_cast<__int128>(a.num_) * b.den_,
                             static_cast<__int128>(a.den_) * b.num_);
            return r;
        }
        return Rational(a.to_mpq() / b.to_mpq());
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // canonical forms differ in kind
    }

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            const __int128 l = static_cast<__int128>(a.num_) * b.den_;
            const __int128 r = static_cast<__int128>(b.num_) * a.den_;
            return l <=> r;
        }
        const int c = cmp(a.to_mpq(), b.to_mpq());
        return c <=> 0;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

private:
    static constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static mpz_class mpz_from_i128(__int128 v) {
        const bool neg = v < 0;
        unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
        mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
        mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
        mpz_class z = (hi << 64) + lo;
        return neg ? mpz_class(-z) : z;
    }

    void set_from_i128(__int128 n, __int128 d) {
        if (n >= -kMax && n <= kMax && d <= kMax) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            big_.reset();
            return;
        }
        mpq_class q{mpz_from_i128(n), mpz_from_i128(d)};
        q.canonicalize();
        big_ = std::make_shared<const mpq_class>(std::move(q));
        num_ = 0;
        den_ = 1;
    }

    // n/d with d != 0, arbitrary sign and common factors.
    void normalize_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("division by zero");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) {
            set_from_i128(0, 1);
            return;
        }
        const __int128 g = gcd128(n, d);
        set_from_i128(n / g, d / g);
    }

    void set_from_mpq(const mpq_class& q) {
        const mpz_class& n = q.get_num();
        const mpz_class& d = q.get_den();
        if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != std::numeric_limits<long>::min()) {
            num_ = n.get_si();
            den_ = d.get_si();
            big_.reset();
            return;
        }
        big_ = std::make_shared<const mpq_class>(q);
        num_ = 0;
        den_ = 1;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// gcd of two integer-valued rationals (non-negative result).
inline Rational gcd_int(const Rational& a, const Rational& b) {
    if (!a.is_integer() || !b.is_integer()) throw std::invalid_argument("gcd_int on non-integers");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.to_mpq().get_num().get_mpz_t(), b.to_mpq().get_num().get_mpz_t());
    return Rational(mpq_class(g));
}

inline Rational lcm_int(const Rational& a, const Rational& b) {
    if (!a.is_integer() || !b.is_integer()) throw std::invalid_argument("lcm_int on non-integers");
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.to_mpq().get_num().get_mpz_t(), b.to_mpq().get_num().get_mpz_t());
    return Rational(mpq_class(l));
}

/// Exact square root when the value is the square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r.sign() < 0) return std::nullopt;
    const mpq_class q = r.to_mpq();
    if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) || !mpz_perfect_square_p(q.get_den().get_mpz_t()))
        return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
    return Rational(mpq_class(n, d));
}

inline Rational Rational::parse(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    };
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    std::string_view s = text.substr(b, e - b);
    if (s.empty()) return fail();

    std::string sign;
    if (s.front() == '+' || s.front() == '-') {
        if (s.front() == '-') sign = "-";
        s.remove_prefix(1);
    }
    auto all_digits = [](std::string_view v) {
        if (v.empty()) return false;
        for (char c : v)
            if (c < '0' || c > '9') return false;
        return true;
    };

    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = s.substr(0, slash);
        const auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return fail();
        mpz_class d(std::string(den), 10);
        if (d == 0) throw std::domain_error("zero denominator in '" + std::string(text) + "'");
        mpq_class q{mpz_class(sign + std::string(num), 10), d};
        q.canonicalize();
        return Rational(q);
    }

    std::string_view mant = s;
    long exp10 = 0;
    if (const auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
        mant = s.substr(0, epos);
        std::string_view ex = s.substr(epos + 1);
        bool neg = false;
        if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
            neg = ex.front() == '-';
            ex.remove_prefix(1);
        }
        if (!all_digits(ex) || ex.size() > 6) return fail();
        exp10 = std::stol(std::string(ex));
        if (neg) exp10 = -exp10;
    }
    std::string digits;
    if (const auto dot = mant.find('.'); dot != std::string_view::npos) {
        const auto ip = mant.substr(0, dot);
        const auto fp = mant.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            return fail();
        digits = std::string(ip) + std::string(fp);
        exp10 -= static_cast<long>(fp.size());
    } else {
        if (!all_digits(mant)) return fail();
        digits = std::string(mant);
    }
        mpz_class n(sign + digits, 10);
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    mpq_class q = exp10 < 0 ? mpq_class(n, p) : mpq_class(n * p);
    q.canonicalize();
    return Rational(q);
}

}  // namespace polygeom

template <>
struct std::hash<polygeom::Rational> {
    std::size_t operator()(const polygeom::Rational& r) const noexcept { return r.hash(); }
};
