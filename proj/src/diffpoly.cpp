#include "agd/diffpoly.hpp"

#include <cctype>
#include <sstream>

namespace agd {

Rational binom(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

Rational factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

namespace {

std::string mono_str(const Monomial& m) {
    std::string s;
    for (auto& [v, e] : m) {
        if (!s.empty()) s += "*";
        s += v.name();
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

// "(a + b*alpha)" with the sign of b folded in
std::string quad_paren(const QuadScalar& c) {
    std::string a = rational_str(c.a());
    Rational b = c.b();
    if (b < 0) return "(" + a + " - " + rational_str(Rational(-b)) + "*alpha)";
    return "(" + a + " + " + rational_str(b) + "*alpha)";
}

}  // namespace

std::string to_string(const DiffPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    // descending canonical order, leading term first
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const Monomial& m = it->first;
        const QuadScalar& c = it->second;
        std::string coef;
        bool joined_minus = false;
        if (c.is_rational()) {
            Rational q = c.a();
            if (q < 0 && !out.empty()) {
                joined_minus = true;
                q = -q;
            }
            if (q == 1 && !m.empty())
                coef = "";
            else
                coef = rational_str(q);
        } else {
            coef = quad_paren(c);
        }
        std::string term = coef;
        if (!m.empty()) {
            if (!term.empty()) term += "*";
            term += mono_str(m);
        }
        if (out.empty())
            out = term;
        else
            out += (joined_minus ? " - " : " + ") + term;
    }
    return out;
}

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;
    int rank;

    explicit Parser(const std::string& str, int r) : s(str), rank(r) {}

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse_diffpoly: " + what + " near position " +
                                    std::to_string(i) + " in '" + s + "'");
    }

    DiffPoly parse() {
        DiffPoly p = parse_expr();
        skip();
        if (i != s.size()) fail("trailing input");
        return p;
    }

    DiffPoly parse_expr() {
        skip();
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        DiffPoly p = parse_term();
        if (neg) p = -p;
        while (true) {
            skip();
            if (eat('+')) {
                p += parse_term();
            } else if (eat('-')) {
                p -= parse_term();
            } else {
                break;
            }
        }
        return p;
    }

    DiffPoly parse_term() {
        DiffPoly p = parse_factor();
        while (eat('*')) p = p * parse_factor();
        return p;
    }

    DiffPoly parse_factor() {
        skip();
        if (i >= s.size()) fail("unexpected end");
        DiffPoly base;
        if (s[i] == '(') {
            // parenthesized scalar "(a + b*alpha)"
            size_t close = s.find(')', i);
            if (close == std::string::npos) fail("unbalanced parenthesis");
            std::string inner = s.substr(i + 1, close - i - 1);
            i = close + 1;
            base = DiffPoly::constant(parse_quad(inner, rank));
        } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/'))
                ++j;
            base = DiffPoly::constant(QuadScalar(parse_rational(s.substr(i, j - i))));
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(s[i]))) {
            size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            base = DiffPoly::var(parse_jetvar(s.substr(i, j - i)));
            i = j;
        } else {
            fail("unexpected character");
        }
        if (eat('^')) {
            skip();
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i) fail("missing exponent");
            int e = std::stoi(s.substr(i, j - i));
            i = j;
            base = base.pow(e);
        }
        return base;
    }
};

}  // namespace

DiffPoly parse_diffpoly(const std::string& text, int rank) {
    size_t a = text.find_first_not_of(" \t\n");
    if (a == std::string::npos) return DiffPoly();
    size_t b = text.find_last_not_of(" \t\n");
    if (text.substr(a, b - a + 1) == "0") return DiffPoly();
    Parser p(text, rank);
    return p.parse();
}

}  // namespace agd
