#include "fdo/grassmannian.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "fdo/linalg.hpp"

namespace fdo {

namespace {

constexpr long kNegInf = std::numeric_limits<long>::min() / 4;

long top_known_z(const ZSeries& s) {
    if (auto t = s.top()) return *t;
    return s.exact() ? kNegInf : static_cast<long>(s.floor()) - 1;
}

// Incremental echelon span of purely-negative series.
class NegSpan {
public:
    ZSeries reduce(ZSeries v) const {
        for (;;) {
            auto t = v.top();
            if (!t) return v;
            auto it = rows_.find(*t);
            if (it == rows_.end()) return v;
            v = v - v.at(*t) * it->second;
        }
    }

    bool insert(const ZSeries& v) {
        ZSeries r = reduce(v);
        auto t = r.top();
        if (!t) return false;
        rows_.emplace(*t, r.at(*t).inverse() * r);
        return true;
    }

    int dim() const { return static_cast<int>(rows_.size()); }

    std::vector<ZSeries> basis() const {
        std::vector<ZSeries> b;
        b.reserve(rows_.size());
        for (const auto& [t, v] : rows_) b.push_back(v);
        return b;
    }

private:
    std::map<int, ZSeries> rows_; // leading exponent -> monic row
};

} // namespace

ZSeries right_act(const ZSeries& v, const PsDO& p) {
    // Trust boundary: unknown series tail against the operator top, unknown
    // operator tail against the series top, and per-coefficient x-precision.
    long floor = kNegInf;
    if (!v.exact()) floor = std::max(floor, static_cast<long>(v.floor()) + p.top_stored());
    if (!p.exact_tail()) floor = std::max(floor, top_known_z(v) + p.floor());
    for (const auto& [k, u] : p.cells()) {
        if (!u.exact()) floor = std::max(floor, top_known_z(v) + k - u.prec() + 1);
    }
    ZSeries acc(floor <= kNegInf ? kExactFloor : static_cast<int>(floor));
    for (const auto& [i, vi] : v.terms()) {
        for (const auto& [k, u] : p.cells()) {
            for (int m = 0; m <= u.top_deg(); ++m) {
                const Scalar& um = u.at(m);
                if (um.is_zero()) continue;
                Scalar c = binomial(i, m);
                if (c.is_zero()) continue;
                acc = acc + ZSeries::monomial(i + k - m, vi * um * factorial(m) * c);
            }
        }
    }
    return acc;
}

Plane make_plane(std::vector<ZSeries> gens, int depth) {
    std::map<int, ZSeries> slots; // degree -> monic representative
    std::vector<ZSeries> queue = std::move(gens);
    while (!queue.empty()) {
        ZSeries v = std::move(queue.back());
        queue.pop_back();
        for (;;) {
            auto t = v.top();
            if (!t) break;
            if (*t < 0)
                raise(ErrorCode::Internal, "purely negative vector: generators leave the big cell");
            auto it = slots.find(*t);
            if (it == slots.end()) {
                slots.emplace(*t, v.at(*t).inverse() * v);
                break;
            }
            v = v - v.at(*t) * it->second;
        }
    }
    for (int n = 0; n <= depth; ++n)
        if (!slots.count(n))
            raise(ErrorCode::WindowTooSmall,
                  "no basis vector of degree " + std::to_string(n) + "; not a big-cell window");
    // Clear nonnegative degrees above each pivot.
    for (int n = depth; n >= 0; --n) {
        ZSeries& v = slots.at(n);
        for (int d = n - 1; d >= 0; --d) {
            Scalar c = v.at(d);
            if (!c.is_zero()) v = v - c * slots.at(d);
        }
    }
    Plane w;
    int floor = kExactFloor;
    for (int n = 0; n <= depth; ++n) floor = std::max(floor, slots.at(n).floor());
    for (int n = 0; n <= depth; ++n)
        w.basis.push_back(floor == kExactFloor ? slots.at(n) : slots.at(n).clipped(floor));
    w.floor = floor;
    return w;
}

ZSeries plane_reduce(const Plane& w, ZSeries v) {
    for (;;) {
        auto t = v.top();
        if (!t || *t < 0) return v;
        if (*t > w.depth())
            raise(ErrorCode::DepthExceeded,
                  "degree " + std::to_string(*t) + " exceeds plane depth " +
                      std::to_string(w.depth()));
        v = v - v.at(*t) * w.at(*t);
    }
}

Plane plane_from_dressing(const PsDO& u, int depth) {
    std::vector<ZSeries> gens;
    gens.reserve(static_cast<size_t>(depth) + 1);
    for (int n = 0; n <= depth; ++n) gens.push_back(right_act(ZSeries::monomial(n), u));
    return make_plane(std::move(gens), depth);
}

PsDO dressing_from_plane(const Plane& w, int zdepth, int prec) {
    // Unknowns u_{j,m}: z^n * U = z^n + sum u_{j,m} m! C(n,m) z^(n-m-j);
    // membership of every z^n * U in the plane is linear in the unknowns.
    const int nvars = zdepth * prec;
    auto var = [&](int j, int m) { return (j - 1) * prec + m; };

    QMatrix rows;
    QVector rhs;
    for (int n = 0; n <= w.depth(); ++n) {
        ZSeries base = plane_reduce(w, ZSeries::monomial(n));
        std::vector<ZSeries> cols(static_cast<size_t>(nvars), ZSeries());
        long floor = base.exact() ? kNegInf : base.floor();
        for (int j = 1; j <= zdepth; ++j) {
            for (int m = 0; m < prec; ++m) {
                Scalar c = factorial(m) * binomial(n, m);
                if (c.is_zero()) continue;
                ZSeries g = plane_reduce(w, ZSeries::monomial(n - m - j, c));
                if (!g.exact()) floor = std::max(floor, static_cast<long>(g.floor()));
                cols[static_cast<size_t>(var(j, m))] = g;
            }
        }
        const int f = floor <= kNegInf ? -(zdepth + prec + n + 1) : static_cast<int>(floor);
        for (int e = -1; e >= f; --e) {
            QVector row(static_cast<size_t>(nvars), Scalar(0));
            bool nonzero = false;
            for (int k = 0; k < nvars; ++k) {
                if (!cols[static_cast<size_t>(k)].trusted(e)) continue;
                row[static_cast<size_t>(k)] = cols[static_cast<size_t>(k)].at(e);
                nonzero = nonzero || !row[static_cast<size_t>(k)].is_zero();
            }
            Scalar b = base.trusted(e) ? -base.at(e) : Scalar(0);
            if (!nonzero && b.is_zero()) continue;
            rows.push_back(std::move(row));
            rhs.push_back(b);
        }
    }

    auto sol = solve_linear(rows, rhs);
    if (!sol)
        raise(ErrorCode::UnderdeterminedAtDepth, "dressing system inconsistent at this window");
    if (!kernel_basis(rows, nvars).empty())
        raise(ErrorCode::UnderdeterminedAtDepth,
              "plane depth does not pin all dressing coefficients");

    PsDO u = PsDO::identity();
    for (int j = 1; j <= zdepth; ++j) {
        std::vector<Scalar> c(static_cast<size_t>(prec));
        for (int m = 0; m < prec; ++m) c[static_cast<size_t>(m)] = (*sol)[static_cast<size_t>(var(j, m))];
        XSeries uj = XSeries::windowed(std::move(c));
        if (!uj.is_zero()) u = u + PsDO::term(-j, std::move(uj));
    }
    return u.with_floor(-zdepth);
}

MembershipResult spectral_membership(const Plane& w, const ZSeries& f) {
    MembershipResult res;
    if (f.is_zero()) {
        res.verdict = Cert::Yes;
        return res;
    }
    const int d = std::max(0, *f.top());
    for (int n = 0; n + d <= w.depth(); ++n) {
        ZSeries r = plane_reduce(w, f * w.at(n));
        ++res.tested;
        if (!r.is_zero()) {
            res.verdict = Cert::No;
            res.witness_n = n;
            res.residual = r;
            return res;
        }
    }
    res.verdict = res.tested > 0 ? Cert::Yes : Cert::Unknown;
    return res;
}

SpectralCert quotient_dim(const Plane& w, const ZSeries& f) {
    SpectralCert cert;
    cert.f = f;
    if (f.is_zero()) {
        cert.stabilized = true;
        return cert;
    }
    const int d = std::max(0, *f.top());
    NegSpan span;
    std::vector<int> dims;
    for (int n = 0; n + d <= w.depth(); ++n) {
        span.insert(plane_reduce(w, f * w.at(n)));
        dims.push_back(span.dim());
    }
    cert.rows_used = static_cast<int>(dims.size());
    cert.quotient_dim = dims.empty() ? 0 : dims.back();
    cert.stabilized = dims.size() >= 3 && dims[dims.size() - 3] == dims.back();
    cert.excess_basis = span.basis();
    return cert;
}

FieldMembership field_membership(const Plane& w, const ZSeries& f) {
    FieldMembership res;
    res.cert = quotient_dim(w, f);
    res.verdict = res.cert.stabilized ? Cert::Yes : Cert::Unknown;
    return res;
}

PsDO clear_tails(const std::vector<ZSeries>& excess, int prec) {
    PsDO q = PsDO::identity();
    for (const auto& e : excess) {
        for (int guard = 0;; ++guard) {
            if (guard > 8) raise(ErrorCode::PrecisionExhausted, "tail clearing does not settle");
            ZSeries img = right_act(e, q);
            // Strictly negative part.
            ZSeries neg(img.floor());
            for (const auto& [deg, v] : img.terms())
                if (deg < 0) neg = neg + ZSeries::monomial(deg, v);
            auto t = neg.top();
            if (!t) break;
            const int d = -*t;
            ZSeries fnorm = neg.at(*t).inverse() * neg;
            if (fnorm.exact() && fnorm.terms().size() == 1) {
                // Pure z^-d tail: q(x) = 1 and the step is exactly D^d.
                q = mul(q, PsDO::d_pow(d));
                continue;
            }
            // q(x) with fnorm * q(x) = z^-d on the window; a_n is the
            // coefficient of z^-n.
            int kq = prec - 1;
            if (!fnorm.exact()) kq = std::min(kq, -fnorm.floor() - d);
            std::vector<Scalar> qc(static_cast<size_t>(std::max(kq, 0)) + 1, Scalar(0));
            qc[0] = Scalar(1);
            for (int k = 1; k <= kq; ++k) {
                const int l = k + d;
                Scalar acc(0);
                for (int m = 0; m <= k - 1; ++m) {
                    Scalar a = fnorm.trusted(-(l - m)) ? fnorm.at(-(l - m)) : Scalar(0);
                    if (a.is_zero()) continue;
                    Scalar term = factorial(d - 1) / factorial(l - 1 - m) * a * qc[static_cast<size_t>(m)];
                    if ((k - m - 1) % 2 != 0) term = -term;
                    acc += term;
                }
                qc[static_cast<size_t>(k)] = acc;
            }
            XSeries qx = XSeries::windowed(std::move(qc));
            PsDO step = mul(mul(PsDO::mult(qx), PsDO::d_pow(d)), PsDO::mult(qx.inverse()));
            q = mul(q, step);
        }
    }
    return q;
}

FracCert frac_certify(const PsDO& p, int depth, int prec) {
    FracCert cert;
    NegSpan span;
    std::vector<int> dims;
    for (int j = 0; j <= depth; ++j) {
        ZSeries img = right_act(ZSeries::monomial(j), p);
        ZSeries neg(img.exact() ? kExactFloor : img.floor());
        for (const auto& [deg, v] : img.terms())
            if (deg < 0) neg = neg + ZSeries::monomial(deg, v);
        span.insert(neg);
        dims.push_back(span.dim());
    }
    cert.excess = dims.empty() ? 0 : dims.back();
    cert.stabilized = dims.size() >= 3 && dims[dims.size() - 3] == dims.back();
    cert.excess_basis = span.basis();
    if (!cert.stabilized) return cert;
    PsDO q = clear_tails(cert.excess_basis, prec);
    if (!mul(p, q).certified_differential()) return cert;
    cert.verdict = Cert::Yes;
    cert.denominator = std::move(q);
    return cert;
}

PsDO conjugate_spectral(const PsDO& u, const ZSeries& f, int depth) {
    auto ord = u.order();
    if (!ord || *ord != 0 || !u.is_monic())
        raise(ErrorCode::NotNormalized, "dressing must be monic of order 0");
    PsDO fd = PsDO::from_symbol(f);
    return mul(mul(u, fd), u.inverse(depth + 1));
}

RankResult rank(const Plane& w, const ZSeries& f, int deg_bound) {
    RankResult res;
    res.deg_bound = deg_bound;
    {
        auto fm = field_membership(w, f);
        if (fm.verdict != Cert::Yes)
            raise(ErrorCode::FNotCertified, "f is not certified in the spectral field");
    }
    if (!f.top() || *f.top() <= 0)
        raise(ErrorCode::FNotCertified, "rank needs a certified f of positive degree");

    // Powers 1, f, ..., f^deg_bound.
    std::vector<ZSeries> fp{ZSeries::one()};
    for (int b = 1; b <= deg_bound; ++b) fp.push_back(fp.back() * f);

    // The C(f)-dimension grows at step n exactly when no dependence
    //   sum_b q_b f^b v_n = sum_{i<n,b} p_{i,b} f^b v_i
    // with a nonzero q-part exists within the degree bound.
    int dim = 0;
    std::vector<int> growth;
    for (int n = 0; n <= w.depth(); ++n) {
        const int nvars = (deg_bound + 1) * (1 + n);
        std::vector<ZSeries> cols;
        cols.reserve(static_cast<size_t>(nvars));
        long floor = kNegInf;
        int topmost = std::numeric_limits<int>::min();
        auto add_cols = [&](const ZSeries& g, const Scalar& sign) {
            for (int b = 0; b <= deg_bound; ++b) {
                ZSeries col = sign * (fp[static_cast<size_t>(b)] * g);
                if (!col.exact()) floor = std::max(floor, static_cast<long>(col.floor()));
                if (auto t = col.top()) topmost = std::max(topmost, *t);
                cols.push_back(std::move(col));
            }
        };
        add_cols(w.at(n), Scalar(1));
        for (int i = 0; i < n; ++i) add_cols(w.at(i), Scalar(-1));
        int fl = floor <= kNegInf ? std::min(-1, -(deg_bound + w.depth() + 2)) : static_cast<int>(floor);
        QMatrix rows;
        for (int e = topmost; e >= fl; --e) {
            QVector row;
            row.reserve(static_cast<size_t>(nvars));
            bool nonzero = false;
            for (const auto& col : cols) {
                Scalar c = col.at(e);
                nonzero = nonzero || !c.is_zero();
                row.push_back(c);
            }
            if (nonzero) rows.push_back(std::move(row));
        }
        bool dependent = false;
        for (const auto& k : kernel_basis(rows, nvars)) {
            for (int b = 0; b <= deg_bound && !dependent; ++b)
                if (!k[static_cast<size_t>(b)].is_zero()) dependent = true;
            if (dependent) break;
        }
        if (!dependent) ++dim;
        growth.push_back(dim);
    }
    res.rank = growth.empty() ? 0 : growth.back();
    res.stabilized = growth.size() >= 3 && growth[growth.size() - 3] == growth.back();
    return res;
}

Plane example_4_5(int depth) {
    std::vector<ZSeries> gens;
    for (int n = 0; n <= depth; ++n) {
        ZSeries v = ZSeries::monomial(n);
        if (n > 0) v = v + ZSeries::monomial(n - 2, Scalar(static_cast<long>(n)));
        gens.push_back(std::move(v));
    }
    return make_plane(std::move(gens), depth);
}

} // namespace fdo
