#include "fdo/textio.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <vector>

#include "fdo/fractional.hpp"
#include "fdo/psdo.hpp"
#include "fdo/ratpoly2.hpp"
#include "fdo/scalar.hpp"
#include "fdo/xseries.hpp"
#include "fdo/zseries.hpp"

namespace fdo::textio {

namespace {

void append_signed(std::ostringstream& os, bool first, const Scalar& coef, const std::string& sym) {
    Scalar mag = coef.sign() < 0 ? -coef : coef;
    if (first) {
        if (coef.sign() < 0) os << "-";
    } else {
        os << (coef.sign() < 0 ? " - " : " + ");
    }
    if (sym.empty()) {
        os << mag.str();
    } else if (mag.is_one()) {
        os << sym;
    } else {
        os << mag.str() << "*" << sym;
    }
}

std::string x_power(int deg) {
    if (deg == 0) return "";
    if (deg == 1) return "x";
    return "x^" + std::to_string(deg);
}

std::string z_power(int deg) {
    if (deg == 0) return "";
    if (deg == 1) return "z";
    return "z^" + std::to_string(deg);
}

// --- parsing ------------------------------------------------------------

struct Lexer {
    std::string_view s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool accept_word(std::string_view w) {
        skip_ws();
        if (s.substr(pos, w.size()) == w) {
            pos += w.size();
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c))
            raise(ErrorCode::ParseError,
                  std::string("expected '") + c + "' in " + what + " near position " +
                      std::to_string(pos));
    }
    int integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) raise(ErrorCode::ParseError, "expected integer");
        return std::stoi(std::string(s.substr(start, pos - start)));
    }
    Scalar rational() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) raise(ErrorCode::ParseError, "expected number");
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            size_t dstart = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == dstart) raise(ErrorCode::ParseError, "expected denominator");
        }
        return Scalar::parse(std::string(s.substr(start, pos - start)));
    }
    bool digit_next() {
        skip_ws();
        return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }
};

// Power of the given variable, e.g. "x", "x^3", "z^-2"; returns the exponent.
int parse_power(Lexer& lx, char var) {
    if (!lx.accept(var)) raise(ErrorCode::ParseError, std::string("expected ") + var);
    if (lx.accept('^')) return lx.integer();
    return 1;
}

struct SeriesAccum {
    std::map<int, Scalar> terms;
    bool has_o = false;
    int o_mark = 0; // first untrusted degree/exponent

    void add(int deg, const Scalar& c) {
        auto it = terms.find(deg);
        if (it == terms.end())
            terms.emplace(deg, c);
        else
            it->second += c;
    }
};

// Shared term grammar for x- and z-series: [coef [*]] [var[^k]] | O(var^k).
SeriesAccum parse_series(Lexer& lx, char var) {
    SeriesAccum acc;
    bool first = true;
    for (;;) {
        if (lx.eof()) break;
        char c = lx.peek();
        if (!first && c != '+' && c != '-') break;
        Scalar sign(1);
        if (lx.accept('+')) {
        } else if (lx.accept('-')) {
            sign = Scalar(-1);
        } else if (!first) {
            break;
        }
        first = false;
        if (lx.accept_word("O(")) {
            int mark = parse_power(lx, var);
            lx.expect(')', "O-term");
            acc.has_o = true;
            acc.o_mark = mark;
            continue;
        }
        Scalar coef(1);
        bool have_coef = false;
        if (lx.digit_next()) {
            coef = lx.rational();
            have_coef = true;
        }
        int deg = 0;
        bool have_var = false;
        if (have_coef) {
            if (lx.accept('*')) {
                deg = parse_power(lx, var);
                have_var = true;
            } else if (lx.peek() == var) {
                deg = parse_power(lx, var);
                have_var = true;
            }
        } else if (lx.peek() == var) {
            deg = parse_power(lx, var);
            have_var = true;
        }
        if (!have_coef && !have_var) raise(ErrorCode::ParseError, "expected series term");
        acc.add(deg, sign * coef);
    }
    return acc;
}

} // namespace

std::string format(const Scalar& v) { return v.str(); }

std::string format(const XSeries& s) {
    std::ostringstream os;
    bool first = true;
    for (int d = 0; d <= s.top_deg(); ++d) {
        Scalar c = s.at(d);
        if (c.is_zero()) continue;
        append_signed(os, first, c, x_power(d));
        first = false;
    }
    if (first) os << "0";
    if (!s.exact()) os << " + O(" << (s.prec() == 1 ? "x^1" : "x^" + std::to_string(s.prec())) << ")";
    return os.str();
}

std::string format(const ZSeries& s) {
    std::ostringstream os;
    bool first = true;
    for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it) {
        append_signed(os, first, it->second, z_power(it->first));
        first = false;
    }
    if (first) os << "0";
    if (!s.exact()) os << " + O(z^" << (s.floor() - 1) << ")";
    return os.str();
}

std::string format(const PsDO& p) {
    std::ostringstream os;
    bool first = true;
    for (auto it = p.cells().rbegin(); it != p.cells().rend(); ++it) {
        if (!first) os << " + ";
        os << "(" << format(it->second) << ") * D^" << it->first;
        first = false;
    }
    if (first) os << "0";
    if (!p.exact_tail()) os << " + O(D^" << (p.floor() - 1) << ")";
    return os.str();
}

std::string format(const FracOp& f) {
    return "frac( " + format(f.num()) + " ; " + format(f.den()) + " )";
}

std::string format(const RatPoly2& f) {
    // w-major lexicographic, leading first.
    std::vector<std::pair<RatPoly2::Key, Scalar>> terms(f.terms().begin(), f.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.first.second != b.first.second) return a.first.second > b.first.second;
        return a.first.first > b.first.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, coef] : terms) {
        std::string sym;
        if (key.first > 0) sym = key.first == 1 ? "z" : "z^" + std::to_string(key.first);
        if (key.second > 0) {
            if (!sym.empty()) sym += "*";
            sym += key.second == 1 ? "w" : "w^" + std::to_string(key.second);
        }
        append_signed(os, first, coef, sym);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

XSeries parse_xseries(std::string_view text) {
    Lexer lx{text};
    SeriesAccum acc = parse_series(lx, 'x');
    if (!lx.eof()) raise(ErrorCode::ParseError, "trailing input in series");
    for (const auto& [deg, c] : acc.terms) {
        if (deg < 0) raise(ErrorCode::ParseError, "negative x-degree");
        if (acc.has_o && deg >= acc.o_mark && !c.is_zero())
            raise(ErrorCode::ParseError, "series term beyond its O() marker");
    }
    int top = acc.terms.empty() ? -1 : acc.terms.rbegin()->first;
    std::vector<Scalar> coeffs(static_cast<size_t>(acc.has_o ? acc.o_mark : top + 1), Scalar(0));
    for (const auto& [deg, c] : acc.terms)
        if (deg < static_cast<int>(coeffs.size())) coeffs[static_cast<size_t>(deg)] = c;
    return acc.has_o ? XSeries::windowed(std::move(coeffs)) : XSeries::poly(std::move(coeffs));
}

ZSeries parse_zseries(std::string_view text) {
    Lexer lx{text};
    SeriesAccum acc = parse_series(lx, 'z');
    if (!lx.eof()) raise(ErrorCode::ParseError, "trailing input in series");
    int floor = acc.has_o ? acc.o_mark + 1 : kExactFloor;
    std::vector<std::pair<int, Scalar>> terms;
    for (const auto& [deg, c] : acc.terms) {
        if (acc.has_o && deg <= acc.o_mark && !c.is_zero())
            raise(ErrorCode::ParseError, "series term beyond its O() marker");
        terms.emplace_back(deg, c);
    }
    return ZSeries::from_terms(std::move(terms), floor);
}

PsDO parse_psdo(std::string_view text) {
    Lexer lx{text};
    PsDO p;
    bool has_o = false;
    int o_mark = 0;
    bool first = true;
    bool saw_zero = false;
    for (;;) {
        if (lx.eof()) break;
        Scalar sign(1);
        if (lx.accept('+')) {
        } else if (lx.accept('-')) {
            sign = Scalar(-1);
        } else if (!first) {
            break;
        }
        first = false;
        if (lx.accept_word("O(")) {
            lx.expect('D', "O-term");
            lx.expect('^', "O-term");
            o_mark = lx.integer();
            lx.expect(')', "O-term");
            has_o = true;
            continue;
        }
        if (lx.peek() == '(') {
            lx.expect('(', "operator term");
            // Coefficient series runs to the matching ')'.
            size_t start = lx.pos;
            int depth = 1;
            while (lx.pos < lx.s.size() && depth > 0) {
                if (lx.s[lx.pos] == '(') ++depth;
                if (lx.s[lx.pos] == ')') --depth;
                ++lx.pos;
            }
            if (depth != 0) raise(ErrorCode::ParseError, "unbalanced parentheses");
            XSeries coef = parse_xseries(lx.s.substr(start, lx.pos - 1 - start));
            lx.expect('*', "operator term");
            lx.expect('D', "operator term");
            lx.expect('^', "operator term");
            int ord = lx.integer();
            p = p + PsDO::term(ord, sign * coef);
            continue;
        }
        if (lx.digit_next()) {
            Scalar c = lx.rational();
            if (!c.is_zero())
                p = p + PsDO::term(0, XSeries::constant(sign * c));
            else
                saw_zero = true;
            continue;
        }
        raise(ErrorCode::ParseError, "expected operator term");
    }
    if (!lx.eof()) raise(ErrorCode::ParseError, "trailing input in operator");
    (void)saw_zero;
    if (has_o) p = p.with_floor(o_mark + 1);
    return p;
}

FracOp parse_fracop(std::string_view text) {
    Lexer lx{text};
    if (lx.accept_word("frac(")) {
        size_t start = lx.pos;
        int depth = 1;
        size_t semi = std::string_view::npos;
        while (lx.pos < lx.s.size() && depth > 0) {
            char c = lx.s[lx.pos];
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ';' && depth == 1) semi = lx.pos;
            ++lx.pos;
        }
        if (depth != 0 || semi == std::string_view::npos)
            raise(ErrorCode::ParseError, "malformed frac(...) literal");
        PsDO num = parse_psdo(lx.s.substr(start, semi - start));
        PsDO den = parse_psdo(lx.s.substr(semi + 1, lx.pos - 1 - semi - 1));
        if (!lx.eof()) raise(ErrorCode::ParseError, "trailing input after frac(...)");
        return FracOp::make(num, den);
    }
    return FracOp::from_diff(parse_psdo(text));
}

RatPoly2 parse_ratpoly2(std::string_view text) {
    Lexer lx{text};
    RatPoly2 p;
    bool first = true;
    for (;;) {
        if (lx.eof()) break;
        Scalar sign(1);
        if (lx.accept('+')) {
        } else if (lx.accept('-')) {
            sign = Scalar(-1);
        } else if (!first) {
            break;
        }
        first = false;
        Scalar coef(1);
        int dz = 0, dw = 0;
        bool any = false;
        if (lx.digit_next()) {
            coef = lx.rational();
            any = true;
            if (lx.accept('*')) {
            }
        }
        for (;;) {
            char c = lx.peek();
            if (c == 'z') {
                dz += parse_power(lx, 'z');
                any = true;
            } else if (c == 'w') {
                dw += parse_power(lx, 'w');
                any = true;
            } else {
                break;
            }
            if (lx.accept('*')) continue;
            break;
        }
        if (!any) raise(ErrorCode::ParseError, "expected polynomial term");
        p.add_term(dz, dw, sign * coef);
    }
    if (!lx.eof()) raise(ErrorCode::ParseError, "trailing input in polynomial");
    return p;
}

} // namespace fdo::textio
