#include "fdo/krichever.hpp"

#include <algorithm>

namespace fdo {

namespace {

// d/dw acting on a series in z with w = z^-1: a_e z^e -> -e a_e z^(e+1).
ZSeries w_derivative(const ZSeries& s) {
    ZSeries out(s.exact() ? kExactFloor : s.floor() + 1);
    for (const auto& [e, v] : s.terms()) {
        if (e == 0) continue;
        out = out + ZSeries::monomial(e + 1, Scalar(-e) * v);
    }
    return out;
}

} // namespace

bool CurveData::point_on_curve() const {
    return b * b == Scalar(4) * a * a * a - g2 * a - g3;
}

bool CurveData::degenerate_curve() const {
    return g2 * g2 * g2 - Scalar(27) * g3 * g3 == Scalar(0);
}

WeierstrassSeries weierstrass_p(const Scalar& g2, const Scalar& g3, int terms) {
    // p(w) = w^-2 + sum_{k>=2} c_k w^(2k-2); c_2 = g2/20, c_3 = g3/28,
    // c_k = 3 ((2k+1)(k-3))^-1 sum_{m=2}^{k-2} c_m c_{k-m}.
    std::vector<Scalar> c(static_cast<size_t>(std::max(terms + 2, 4)), Scalar(0));
    if (terms + 1 >= 2) c[2] = g2 / Scalar(20);
    if (terms + 1 >= 3) c[3] = g3 / Scalar(28);
    for (int k = 4; k <= terms + 1; ++k) {
        Scalar acc(0);
        for (int m = 2; m <= k - 2; ++m) acc += c[static_cast<size_t>(m)] * c[static_cast<size_t>(k - m)];
        c[static_cast<size_t>(k)] = Scalar(3) / Scalar(static_cast<long>(2 * k + 1) * (k - 3)) * acc;
    }
    // In z: exponent 2 - 2k for c_k; trusted just past the last computed term.
    const int floor = 2 - 2 * (terms + 1) - 1;
    ZSeries p(floor);
    p = p + ZSeries::monomial(2);
    for (int k = 2; k <= terms + 1; ++k)
        if (!c[static_cast<size_t>(k)].is_zero())
            p = p + ZSeries::monomial(2 - 2 * k, c[static_cast<size_t>(k)]);
    WeierstrassSeries ws{p, w_derivative(p)};

    ZSeries lhs = ws.p_prime * ws.p_prime;
    ZSeries rhs = Scalar(4) * (ws.p * ws.p * ws.p) - g2 * ws.p - ZSeries::constant(g3);
    if (!(lhs - rhs).is_zero())
        raise(ErrorCode::Internal, "weierstrass series fails its differential equation");
    return ws;
}

EllipticPlane elliptic_plane(const CurveData& c, int depth) {
    if (!c.point_on_curve())
        raise(ErrorCode::UsageError, "(a, b) does not satisfy b^2 = 4a^3 - g2 a - g3");
    const int margin = 6;
    WeierstrassSeries ws = weierstrass_p(c.g2, c.g3, depth + margin);
    ZSeries p_inv = ws.p.inverse();
    ZSeries v0 = ZSeries::one() - c.a * p_inv;
    ZSeries v1 = (ws.p_prime - ZSeries::constant(c.b)) * p_inv;

    // The coordinate ring has basis p^alpha and p^alpha p'; multiplying the
    // module generators v0, v1 reaches every degree 2a + 3e + i.
    std::vector<ZSeries> gens;
    std::vector<ZSeries> ppow{ZSeries::one()};
    while (2 * static_cast<int>(ppow.size()) <= depth + margin) ppow.push_back(ppow.back() * ws.p);
    for (int alpha = 0; alpha < static_cast<int>(ppow.size()); ++alpha) {
        for (int eps = 0; eps <= 1; ++eps) {
            ZSeries m = eps ? ppow[static_cast<size_t>(alpha)] * ws.p_prime
                            : ppow[static_cast<size_t>(alpha)];
            const int mdeg = 2 * alpha + 3 * eps;
            if (mdeg <= depth + margin) gens.push_back(m * v0);
            if (mdeg + 1 <= depth + margin) gens.push_back(m * v1);
        }
    }
    EllipticPlane ep{make_plane(std::move(gens), depth), c, ws.p, ws.p_prime, v0, v1};
    return ep;
}

ConjugatedPair conjugated_pair(const EllipticPlane& ep, int zdepth, int prec) {
    PsDO u = dressing_from_plane(ep.plane, zdepth, prec);
    const int depth = zdepth;
    PsDO l2 = conjugate_spectral(u, ep.wp, depth);
    PsDO l3 = conjugate_spectral(u, ep.wpd, depth);
    auto o2 = l2.order();
    auto o3 = l3.order();
    if (!l2.certified_differential() || !o2 || *o2 != 2)
        raise(ErrorCode::Internal, "conjugated Weierstrass operator is not differential of order 2");
    if (!l3.certified_differential() || !o3 || *o3 != 3)
        raise(ErrorCode::Internal, "conjugated derivative operator is not differential of order 3");
    if (!l2.is_normalized())
        raise(ErrorCode::Internal, "conjugated order-2 operator is not normalized");
    if (!commutator(l2, l3).certified_zero())
        raise(ErrorCode::Internal, "conjugated operators do not commute at the window");
    return {l2.diff_part(), l3.diff_part(), std::move(u)};
}

ZOperator ZOperator::mult(ZSeries f) {
    ZOperator op;
    op.set(0, std::move(f));
    return op;
}

ZOperator ZOperator::dz() {
    ZOperator op;
    op.set(1, ZSeries::one());
    return op;
}

void ZOperator::set(int k, ZSeries a) {
    if (k < 0) raise(ErrorCode::UsageError, "z-operators have nonnegative orders");
    if (a.is_zero() && a.exact())
        c_.erase(k);
    else
        c_[k] = std::move(a);
}

ZOperator operator+(const ZOperator& a, const ZOperator& b) {
    ZOperator s = a;
    for (const auto& [k, v] : b.c_) {
        auto it = s.c_.find(k);
        if (it == s.c_.end())
            s.c_.emplace(k, v);
        else
            it->second = it->second + v;
    }
    return s;
}

ZOperator operator*(const Scalar& s, const ZOperator& a) {
    ZOperator out;
    for (const auto& [k, v] : a.c_) out.set(k, s * v);
    return out;
}

ZOperator zop_mul(const ZOperator& a, const ZOperator& b) {
    // (f dz^j)(g dz^k) = sum_s C(j,s) f g^(s) dz^(j+k-s).
    ZOperator out;
    for (const auto& [j, f] : a.coeffs()) {
        for (const auto& [k, g] : b.coeffs()) {
            ZSeries gs = g;
            for (int s = 0; s <= j; ++s) {
                Scalar c = binomial(j, s);
                if (!c.is_zero()) {
                    ZSeries term = c * (f * gs);
                    int ord = j + k - s;
                    auto it = out.coeffs().find(ord);
                    ZSeries cur = it == out.coeffs().end() ? ZSeries() : it->second;
                    out.set(ord, cur + term);
                }
                if (s < j) gs = gs.z_derivative();
            }
        }
    }
    return out;
}

ZSeries z_apply(const ZOperator& op, const ZSeries& v) {
    ZSeries acc;
    bool first = true;
    for (const auto& [k, a] : op.coeffs()) {
        ZSeries dv = v;
        for (int s = 0; s < k; ++s) dv = dv.z_derivative();
        ZSeries term = a * dv;
        acc = first ? term : acc + term;
        first = false;
    }
    return acc;
}

PsDO x_side(const ZOperator& op) {
    // sum_j x^j a_j(D): the x^j coefficient of the D^k cell is the z^k
    // coefficient of a_j. Above the finite order the x-coefficients are
    // exactly zero, so every cell inside the window is an exact polynomial.
    bool exact = true;
    bool any = false;
    long lo = std::numeric_limits<long>::max();
    long hi = std::numeric_limits<long>::min();
    long wfloor = std::numeric_limits<long>::min();
    for (const auto& [j, a] : op.coeffs()) {
        if (!a.exact()) {
            exact = false;
            wfloor = std::max(wfloor, static_cast<long>(a.floor()));
        }
        for (const auto& [e, v] : a.terms()) {
            any = true;
            lo = std::min(lo, static_cast<long>(e));
            hi = std::max(hi, static_cast<long>(e));
        }
    }
    if (!any) return exact ? PsDO() : PsDO::zero(static_cast<int>(wfloor));
    if (!exact) lo = std::max(lo, wfloor);
    const int jmax = op.max_ord();
    PsDO p = PsDO::zero(exact ? kExactFloor : static_cast<int>(wfloor));
    for (long k = lo; k <= hi; ++k) {
        std::vector<Scalar> xc;
        for (int j = 0; j <= jmax; ++j) {
            auto it = op.coeffs().find(j);
            xc.push_back(it == op.coeffs().end() ? Scalar(0) : it->second.at(static_cast<int>(k)));
        }
        p = p + PsDO::term(static_cast<int>(k), XSeries::poly(std::move(xc)));
    }
    return p;
}

SectionCheck section_check(const Plane& w, const ZOperator& op) {
    SectionCheck res;
    res.depth_used = w.depth();
    // Incremental excess of the images over the plane.
    std::vector<int> dims;
    int dim = 0;
    std::map<int, ZSeries> rows;
    for (int n = 0; n <= w.depth(); ++n) {
        ZSeries img = z_apply(op, w.at(n));
        if (auto t = img.top(); t && *t > w.depth()) continue;
        ++res.tested;
        ZSeries r = plane_reduce(w, img);
        for (;;) {
            auto t = r.top();
            if (!t) break;
            auto it = rows.find(*t);
            if (it == rows.end()) break;
            r = r - r.at(*t) * it->second;
        }
        if (auto t = r.top()) {
            rows.emplace(*t, r.at(*t).inverse() * r);
            ++dim;
        }
        dims.push_back(dim);
    }
    res.excess = dim;
    res.stabilized = dims.size() >= 3 && dims[dims.size() - 3] == dims.back();
    if (res.tested == 0) {
        res.kind = SectionKind::Unknown;
    } else if (dim == 0) {
        res.kind = SectionKind::Preserving;
    } else if (res.stabilized) {
        res.kind = SectionKind::RationalSection;
    } else {
        res.kind = SectionKind::Unknown;
    }
    return res;
}

ZOperator elliptic_jet_section(const EllipticPlane& ep) {
    // (p - a) v0 [ -z^2 d/dz + (1/2) v1/v0 ] v0^-1.
    ZSeries v0_inv = ep.v0.inverse();
    ZSeries pa = ep.wp - ZSeries::constant(ep.curve.a);
    ZOperator inner = ZOperator::mult(Scalar(1, 2) * (ep.v1 * v0_inv)) +
                      Scalar(-1) * zop_mul(ZOperator::mult(ZSeries::monomial(2)), ZOperator::dz());
    ZOperator left = ZOperator::mult(pa * ep.v0);
    return zop_mul(zop_mul(left, inner), ZOperator::mult(v0_inv));
}

bool rank1_verify(const Plane& w, const ZSeries& f, int deg_bound) {
    RankResult r = rank(w, f, deg_bound);
    return r.rank == 1 && r.stabilized;
}

} // namespace fdo
