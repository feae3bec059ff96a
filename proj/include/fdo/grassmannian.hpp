#pragma once

#include <optional>
#include <vector>

#include "fdo/cert.hpp"
#include "fdo/psdo.hpp"

namespace fdo {

// Right module action of operators on Laurent series:
//   z^j * D^m = z^(j+m),   z^j * x^k = k! C(j,k) z^(j-k).
ZSeries right_act(const ZSeries& v, const PsDO& p);

// Big-cell plane: canonical echelon basis v_0..v_N with v_n = z^n plus a
// strictly negative tail, all clipped to a common floor.
struct Plane {
    std::vector<ZSeries> basis;
    int floor = kExactFloor;

    int depth() const { return static_cast<int>(basis.size()) - 1; }
    const ZSeries& at(int n) const { return basis[static_cast<size_t>(n)]; }
};

// Echelon-reduce spanning vectors into a canonical plane. Requires every
// degree 0..depth to be reached (big cell); generators above depth are
// used for reduction and then dropped.
Plane make_plane(std::vector<ZSeries> gens, int depth);

// Reduce v against the basis; the result has only negative exponents.
// Degrees above the plane depth cannot be reduced.
ZSeries plane_reduce(const Plane& w, ZSeries v);

Plane plane_from_dressing(const PsDO& u, int depth);

// Monic order-0 dressing U with L+ * U = span(w), solved as one exact linear
// system for the Taylor coefficients u_{j,m}, j <= zdepth, m < prec.
PsDO dressing_from_plane(const Plane& w, int zdepth, int prec);

struct MembershipResult {
    Cert verdict = Cert::Unknown;
    int witness_n = -1;          // on no: f*v_n escapes the plane
    std::optional<ZSeries> residual;
    int tested = 0;
};

// f W (subset) W, tested on every basis vector the window can reduce.
MembershipResult spectral_membership(const Plane& w, const ZSeries& f);

struct SpectralCert {
    ZSeries f;
    int quotient_dim = 0;
    bool stabilized = false;
    std::vector<ZSeries> excess_basis;
    int rows_used = 0;
};

// dim (W + fW)/W by exact elimination over increasing n-windows; stabilized
// when the dimension is constant across the last two enlargements.
SpectralCert quotient_dim(const Plane& w, const ZSeries& f);

struct FieldMembership {
    Cert verdict = Cert::Unknown; // never No: finiteness is not refutable here
    SpectralCert cert;
};

FieldMembership field_membership(const Plane& w, const ZSeries& f);

// Monic differential Q with e*Q in L+ certified for every given series,
// composed from the single-series construction q(x) D^d q(x)^-1.
PsDO clear_tails(const std::vector<ZSeries>& excess, int prec);

struct FracCert {
    Cert verdict = Cert::Unknown;
    int excess = 0;
    bool stabilized = false;
    std::vector<ZSeries> excess_basis;
    std::optional<PsDO> denominator; // witness right-denominator on yes
};

// Excess of L+ * p over L+; on stabilization the operator is certified
// fractional and clear_tails provides a witness right-denominator.
FracCert frac_certify(const PsDO& p, int depth, int prec);

// U f(D) U^-1 at a window reaching `depth` orders below the top.
PsDO conjugate_spectral(const PsDO& u, const ZSeries& f, int depth);

struct RankResult {
    int rank = 0;
    bool stabilized = false;
    int deg_bound = 0;
};

// Dimension of the span of w's basis over the subfield C(f), by searching
// for dependencies with polynomial coefficients of degree <= deg_bound.
// Requires f certified in K_W and of positive degree.
RankResult rank(const Plane& w, const ZSeries& f, int deg_bound);

// The plane spanned by z^n + n z^(n-2); its spectral algebra is trivial
// while z still lies in the spectral field.
Plane example_4_5(int depth);

} // namespace fdo
