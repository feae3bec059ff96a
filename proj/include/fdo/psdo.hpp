#pragma once

#include <map>
#include <optional>
#include <string>

#include "fdo/xseries.hpp"
#include "fdo/zseries.hpp"

namespace fdo {

// Pseudodifferential operator sum_k u_k(x) D^k over a finite window of
// D-orders. Orders above the stored support are exactly zero; orders below
// floor() are unknown, unless floor() == kExactFloor in which case they are
// exactly zero too (the operator has an exact tail).
//
// Stored coefficients are never exactly zero, but certified-zero coefficients
// with finite x-precision are kept: their precision is part of the trust
// record. Every claim an operation makes holds at the window it reports.
class PsDO {
public:
    PsDO() : floor_(kExactFloor) {}

    static PsDO zero(int floor = kExactFloor) { PsDO p; p.floor_ = floor; return p; }
    static PsDO identity() { return d_pow(0); }
    // D^k, exact.
    static PsDO d_pow(int k);
    // Single term u(x) D^k.
    static PsDO term(int k, XSeries u);
    // Multiplication operator by u(x).
    static PsDO mult(XSeries u) { return term(0, std::move(u)); }
    // f(D) for a Laurent polynomial/series f(z); constant coefficients.
    static PsDO from_symbol(const ZSeries& f);

    int floor() const { return floor_; }
    bool exact_tail() const { return floor_ == kExactFloor; }
    bool trusted_order(int k) const { return exact_tail() || k >= floor_; }

    const std::map<int, XSeries>& cells() const { return c_; }
    bool empty() const { return c_.empty(); }
    int top_stored() const; // floor()-1 when empty (lowest exactly-zero boundary)

    // Coefficient of D^k; exactly zero when unstored inside the window.
    XSeries coeff(int k) const;

    // Highest order whose coefficient is certified nonzero.
    std::optional<int> order() const;

    // Every trusted cell is certified zero.
    bool certified_zero() const;
    // Trusted negative orders are all certified zero and order 0 is reachable.
    bool certified_differential() const;
    // Exact tail with no stored negative orders: genuinely a differential operator.
    bool structural_differential() const;
    // Leading coefficient 1 and sub-leading coefficient 0, both certified.
    bool is_normalized() const;
    bool is_monic() const;

    PsDO operator-() const;
    friend PsDO operator+(const PsDO& a, const PsDO& b);
    friend PsDO operator-(const PsDO& a, const PsDO& b);
    friend PsDO operator*(const Scalar& s, const PsDO& a);

    // Leibniz product; the reported window is what both operand windows and
    // the consumed x-derivatives support.
    friend PsDO mul(const PsDO& a, const PsDO& b);
    PsDO pow(int n) const;

    // Two-sided inverse at a window of `depth` orders below the leading one.
    PsDO inverse(int depth) const;

    // Formal adjoint: (u D^k)* = (-D)^k u.
    PsDO adjoint() const;

    // Orders >= 0.
    PsDO diff_part() const;
    // Orders < 0.
    PsDO int_part() const;

    // Forget orders below `floor` (raise the floor).
    PsDO with_floor(int floor) const;
    // Truncate every coefficient to x-precision `prec`.
    PsDO with_prec(int prec) const;

    // Equality on the common trusted window.
    friend bool operator==(const PsDO& a, const PsDO& b);
    friend bool operator!=(const PsDO& a, const PsDO& b) { return !(a == b); }

    std::string str() const;

private:
    std::map<int, XSeries> c_;
    int floor_;

    void set_cell(int k, XSeries v);
    void normalize();

    friend PsDO commutator(const PsDO& a, const PsDO& b);
};

PsDO commutator(const PsDO& a, const PsDO& b);

// Monic order-0 dressing U with U D^m U^{-1} = l, canonicalized by
// u_j(0) = 0; computed order by order down to D^-depth. Requires l
// normalized of nonzero order.
PsDO schur_dress(const PsDO& l, int depth);

// [(l^n)_+, l] for l in Lax form (order 1, monic); purely integral part.
PsDO lax_bracket(const PsDO& l, int n);

} // namespace fdo
