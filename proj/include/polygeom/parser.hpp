#pragma once
// Recursive-descent parser for polynomial text.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' INTEGER)?
//   primary := INTEGER ('/' INTEGER)? | IDENT | '(' expr ')'
//
// Whitespace is ignored. Identifiers must be declared variables.

#include "polygeom/error.hpp"
#include "polygeom/polynomial.hpp"
#include "polygeom/rational.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace polygeom {

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("syntax", std::string("unexpected '") + text_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& code, const std::string& msg) const {
        throw ParseError(code, msg, pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (accept('+')) {
                acc = acc + term();
            } else if (accept('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        while (accept('*')) acc = acc * unary();
        return acc;
    }

    Polynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = primary();
        if (!accept('^')) return base;
        skip_ws();
        if (peek() == '-') fail("negative-exponent", "negative exponent");
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("syntax", "expected exponent");
        const std::string digits = integer_digits();
        if (digits.size() > 4) fail("syntax", "exponent too large");
        const int k = std::stoi(digits);
        Polynomial out = Polynomial::constant(vars_, Rational(1));
        for (int i = 0; i < k; ++i) out = out * base;
        return out;
    }

    Polynomial primary() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!accept(')')) fail("syntax", "expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::string num = integer_digits();
            std::string lit = num;
            const std::size_t save = pos_;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                skip_ws();
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("syntax", "expected denominator");
                const std::string den = integer_digits();
                if (den.find_first_not_of('0') == std::string::npos) fail("syntax", "zero denominator");
                lit += "/" + den;
            } else {
                pos_ = save;
            }
            return Polynomial::constant(vars_, Rational::parse(lit));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == name) return Polynomial::variable(vars_, i);
            pos_ = start;
            fail("undeclared-variable", "undeclared variable '" + name + "'");
        }
        if (c == '\0') fail("syntax", "unexpected end of input");
        fail("syntax", std::string("unexpected '") + c + "'");
    }

    std::string integer_digits() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string_view text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_poly(std::string_view text, const std::vector<std::string>& vars) {
    return detail::PolyParser(text, vars).parse();
}

inline const std::vector<std::string>& default_vars() {
    static const std::vector<std::string> v{"x", "y", "s", "t"};
    return v;
}

}  // namespace polygeom
