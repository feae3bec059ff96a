#pragma once

#include <limits>
#include <string>
#include <vector>

#include "fdo/scalar.hpp"

namespace fdo {

// Precision sentinel: the series is an exactly known polynomial (every
// coefficient beyond the stored ones is exactly zero).
inline constexpr int kExactPrec = std::numeric_limits<int>::max();

// Truncated formal power series in x over Scalar. prec() is the first
// untrusted x-degree; coefficients at degrees 0..prec()-1 are trusted.
// A series with prec() == 0 carries no information at all.
//
// Binary operations report min(prec) results; the derivative drops one
// degree of trust. Exact polynomials (prec() == kExactPrec) never decay.
class XSeries {
public:
    XSeries() : prec_(kExactPrec) {}

    // Exactly known polynomial; c[i] is the coefficient of x^i.
    static XSeries poly(std::vector<Scalar> c);
    static XSeries constant(const Scalar& v) { return poly({v}); }
    static XSeries one() { return constant(1); }
    static XSeries x() { return poly({0, 1}); }
    // x^deg scaled.
    static XSeries monomial(int deg, const Scalar& coef = 1);
    static XSeries zero(int prec = kExactPrec);
    // Windowed series: coefficients 0..c.size()-1 trusted, prec = c.size().
    static XSeries windowed(std::vector<Scalar> c);

    int prec() const { return prec_; }
    bool exact() const { return prec_ == kExactPrec; }
    bool fully_unknown() const { return prec_ == 0; }

    bool trusted(int deg) const { return exact() || deg < prec_; }

    // Trusted coefficient at degree deg; degrees beyond stored data are zero.
    Scalar at(int deg) const;

    // Highest stored degree (-1 for none).
    int top_deg() const { return static_cast<int>(c_.size()) - 1; }

    // Certified zero: every trusted coefficient vanishes. Requires at least
    // one trusted cell; a fully-unknown series certifies nothing.
    bool is_zero() const;
    bool is_one() const;
    // All trusted coefficients at degrees >= 1 vanish.
    bool certified_constant() const;
    // Has a trusted nonzero coefficient.
    bool certified_nonzero() const;

    // Forget data beyond the given precision (no-op if already tighter).
    XSeries truncated(int prec) const;

    XSeries operator-() const;
    friend XSeries operator+(const XSeries& a, const XSeries& b);
    friend XSeries operator-(const XSeries& a, const XSeries& b);
    friend XSeries operator*(const XSeries& a, const XSeries& b);
    friend XSeries operator*(const Scalar& s, const XSeries& a);

    // Termwise derivative; result precision drops by one.
    XSeries derivative() const;
    // Antiderivative with constant term 0; result precision grows by one.
    XSeries antiderivative() const;

    // Multiplicative inverse. Requires a unit constant term. For exact
    // non-constant input the result is an infinite series, so a finite
    // target precision must be supplied.
    XSeries inverse(int prec = -1) const;

    const Scalar& const_term() const;

    // Equality at the smaller of the two precisions.
    friend bool operator==(const XSeries& a, const XSeries& b);
    friend bool operator!=(const XSeries& a, const XSeries& b) { return !(a == b); }

    std::string str() const;

private:
    std::vector<Scalar> c_;
    int prec_;

    void normalize();
};

} // namespace fdo
