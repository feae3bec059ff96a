#pragma once

#include <map>
#include <optional>
#include <string>

#include "fdo/grassmannian.hpp"

namespace fdo {

// Cubic curve w^2 = 4 a^3 - g2 a - g3 data with a rational point (a, b).
struct CurveData {
    Scalar g2, g3;
    Scalar a, b;

    // b^2 = 4a^3 - g2*a - g3, exactly.
    bool point_on_curve() const;
    // g2^3 - 27 g3^2 = 0 (cuspidal/nodal degenerations allowed, flagged).
    bool degenerate_curve() const;
};

struct WeierstrassSeries {
    ZSeries p;       // Weierstrass series, exponents 2, -2, -4, ... in z (w = z^-1)
    ZSeries p_prime; // derivative with respect to w
};

// Laurent data of the Weierstrass function for rational invariants, computed
// by the quadratic recursion and verified against
// (p')^2 = 4 p^3 - g2 p - g3 on the full window.
WeierstrassSeries weierstrass_p(const Scalar& g2, const Scalar& g3, int terms);

struct EllipticPlane {
    Plane plane;
    CurveData curve;
    ZSeries wp, wpd; // the series used to generate the plane
    ZSeries v0, v1;  // module generators (p - a)/p and (p' - b)/p
};

// Plane generated over C[p, p'] by v0, v1, reduced to a canonical basis.
EllipticPlane elliptic_plane(const CurveData& c, int depth);

struct ConjugatedPair {
    PsDO l2, l3;  // orders 2 and 3, certified differential, commuting
    PsDO dressing;
};

// Dressing of the elliptic plane conjugating the Weierstrass data to a
// commuting differential pair.
ConjugatedPair conjugated_pair(const EllipticPlane& ep, int zdepth, int prec);

// Finite-order operator in z: sum_k a_k(z) (d/dz)^k.
class ZOperator {
public:
    ZOperator() = default;

    static ZOperator mult(ZSeries f);
    static ZOperator dz();

    const std::map<int, ZSeries>& coeffs() const { return c_; }
    int max_ord() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    friend ZOperator operator+(const ZOperator& a, const ZOperator& b);
    friend ZOperator operator*(const Scalar& s, const ZOperator& a);
    // Composition with the Leibniz rule in z.
    friend ZOperator zop_mul(const ZOperator& a, const ZOperator& b);

    void set(int k, ZSeries a);

private:
    std::map<int, ZSeries> c_;
};

ZSeries z_apply(const ZOperator& op, const ZSeries& v);

// The x-side operator sum_j x^j a_j(D) whose right action realizes op.
PsDO x_side(const ZOperator& op);

enum class SectionKind { Preserving, RationalSection, Unknown };

struct SectionCheck {
    SectionKind kind = SectionKind::Unknown;
    int excess = 0;
    bool stabilized = false;
    int tested = 0;
    int depth_used = 0;
};

// Does op map the plane into itself (preserving), or a finite-codimension
// part of it (rational section with the reported excess)?
SectionCheck section_check(const Plane& w, const ZOperator& op);

// The first-order operator (p - a) v0 [ -z^2 d/dz + (1/2) v1/v0 ] v0^-1
// attached to the elliptic plane data.
ZOperator elliptic_jet_section(const EllipticPlane& ep);

// rank(w, f) == 1 with stabilization.
bool rank1_verify(const Plane& w, const ZSeries& f, int deg_bound);

} // namespace fdo
