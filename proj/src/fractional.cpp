#include "fdo/fractional.hpp"

#include <algorithm>

#include "fdo/grassmannian.hpp"
#include "fdo/linalg.hpp"
#include "fdo/textio.hpp"

namespace fdo {

namespace {

// Certified differential input, truncated to its differential part.
PsDO as_differential(const PsDO& p, const char* what) {
    if (!p.certified_differential())
        raise(ErrorCode::NotDifferential, std::string(what) + " is not certified differential");
    return p.diff_part();
}

// Right GCD by the Euclidean chain; gives up (nullopt) when a pivot leading
// coefficient is not a constant unit, keeping exact data exact.
std::optional<PsDO> try_right_gcd(PsDO a, PsDO b) {
    for (;;) {
        if (b.certified_zero()) return a;
        auto ob = b.order();
        if (!ob) return std::nullopt;
        const XSeries lead = b.coeff(*ob);
        if (!lead.certified_constant() || !lead.trusted(0) || lead.const_term().is_zero())
            return std::nullopt;
        DivRem dr = right_divide(a, b);
        a = std::move(b);
        b = std::move(dr.rem);
    }
}

} // namespace

DivRem right_divide(const PsDO& a, const PsDO& b) {
    auto ob = b.order();
    if (!ob) raise(ErrorCode::DivisionByZero, "division by certified-zero operator");
    const int tb = *ob;
    const XSeries lead = b.coeff(tb);
    if (!lead.trusted(0) || lead.const_term().is_zero())
        raise(ErrorCode::NotInvertible, "divisor leading coefficient is not a unit");
    XSeries lead_inv;
    if (lead.exact() && lead.top_deg() > 0)
        raise(ErrorCode::Internal, "exact non-constant pivot needs a windowed division");
    lead_inv = lead.inverse();

    DivRem dr;
    dr.quot = PsDO::zero(kExactFloor);
    dr.rem = a;
    for (;;) {
        auto ta = dr.rem.order();
        if (!ta || *ta < tb) break;
        PsDO t = PsDO::term(*ta - tb, dr.rem.coeff(*ta) * lead_inv);
        dr.quot = dr.quot + t;
        dr.rem = dr.rem - mul(t, b);
        // The leading cell is now certified zero; drop it so the order strictly falls.
        if (auto tr = dr.rem.order(); tr && *tr >= *ta) {
            raise(ErrorCode::Internal, "right division failed to reduce the order");
        }
    }
    return dr;
}

FracOp FracOp::make(const PsDO& num_in, const PsDO& den_in) {
    PsDO num = as_differential(num_in, "numerator");
    PsDO den = as_differential(den_in, "denominator");
    auto od = den.order();
    if (!od || !den.coeff(*od).is_one())
        raise(ErrorCode::DenominatorNotMonic, "denominator must be monic");
    bool reduced = false;
    if (auto g = try_right_gcd(num, den)) {
        reduced = true;
        if (auto og = g->order(); og && *og > 0) {
            const XSeries glead = g->coeff(*og);
            PsDO gmon = *g;
            if (!glead.is_one()) gmon = mul(PsDO::mult(glead.inverse()), gmon);
            DivRem dn = right_divide(num, gmon);
            DivRem dd = right_divide(den, gmon);
            if (dn.rem.certified_zero() && dd.rem.certified_zero()) {
                num = dn.quot;
                den = dd.quot;
            }
        }
    }
    return FracOp(std::move(num), std::move(den), reduced);
}

FracOp FracOp::from_diff(const PsDO& p) {
    return FracOp(as_differential(p, "operator"), PsDO::identity(), true);
}

FracOp::FracOp(const FracOp& o) : num_(o.num_), den_(o.den_), reduced_(o.reduced_) {
    std::lock_guard<std::mutex> lk(o.mu_);
    cache_ = o.cache_;
}

FracOp& FracOp::operator=(const FracOp& o) {
    if (this == &o) return *this;
    std::optional<std::pair<int, PsDO>> c;
    {
        std::lock_guard<std::mutex> lk(o.mu_);
        c = o.cache_;
    }
    std::lock_guard<std::mutex> lk(mu_);
    num_ = o.num_;
    den_ = o.den_;
    reduced_ = o.reduced_;
    cache_ = std::move(c);
    return *this;
}

int FracOp::num_order() const {
    auto o = num_.order();
    if (!o) raise(ErrorCode::ZeroOrder, "certified-zero numerator has no order");
    return *o;
}

int FracOp::den_order() const { return *den_.order(); }

int FracOp::order() const { return num_order() - den_order(); }

const PsDO& FracOp::expansion(int depth) const {
    std::lock_guard<std::mutex> lk(mu_);
    if (!cache_ || cache_->first < depth) {
        PsDO e = mul(num_, den_.inverse(depth));
        cache_ = std::make_pair(depth, std::move(e));
    }
    return cache_->second;
}

namespace {

// Flattened trusted cells shared by every operator in the list.
struct CellSet {
    std::vector<std::pair<int, int>> cells; // (order, x-degree)
};

CellSet common_cells(const std::vector<PsDO>& ops) {
    CellSet cs;
    if (ops.empty()) return cs;
    long lo = kExactFloor, hi = kExactFloor;
    bool any = false;
    for (const auto& p : ops) {
        if (!p.exact_tail()) lo = std::max(lo, static_cast<long>(p.floor()));
        if (!p.empty()) {
            hi = std::max(hi, static_cast<long>(p.top_stored()));
            any = true;
        }
    }
    if (!any) return cs;
    if (lo == kExactFloor) {
        lo = hi;
        for (const auto& p : ops)
            if (!p.empty()) lo = std::min(lo, static_cast<long>(p.cells().begin()->first));
    }
    for (long k = lo; k <= hi; ++k) {
        int prec = kExactPrec;
        for (const auto& p : ops) {
            XSeries c = p.coeff(static_cast<int>(k));
            prec = std::min(prec, c.prec());
        }
        if (prec == kExactPrec) {
            // All exact: cover the stored polynomial degrees.
            int deg = -1;
            for (const auto& p : ops) deg = std::max(deg, p.coeff(static_cast<int>(k)).top_deg());
            prec = deg + 1;
        }
        for (int m = 0; m < prec; ++m) cs.cells.emplace_back(static_cast<int>(k), m);
    }
    return cs;
}

QVector flatten(const PsDO& p, const CellSet& cs) {
    QVector v;
    v.reserve(cs.cells.size());
    for (auto [k, m] : cs.cells) v.push_back(p.coeff(k).at(m));
    return v;
}

} // namespace

std::pair<PsDO, PsDO> ore_solve(const PsDO& p_in, const PsDO& q_in, int prec) {
    PsDO p = as_differential(p_in, "p");
    PsDO q = as_differential(q_in, "q");
    auto oq = q.order();
    if (!oq) raise(ErrorCode::DivisionByZero, "q must be a nonzero differential operator");
    auto op = p.order();
    if (!op) {
        // 0 * q = q * 0 would need r = 0; instead use r = q, l = q: q*q = 0... no.
        // p certified zero: q*r = 0 has no nonzero solution; reject.
        raise(ErrorCode::NoSolutionAtPrecision, "p is certified zero");
    }
    const int a = *op, b = *oq;

    // Unknown r of order <= a and l of order <= b with q*r = p*l; columns are
    // the products against coefficient monomials truncated at prec.
    std::vector<PsDO> cols;
    struct Var {
        bool in_r;
        int ord;
        int deg;
    };
    std::vector<Var> vars;
    for (int i = 0; i <= a; ++i)
        for (int m = 0; m < prec; ++m) {
            XSeries mono = XSeries::monomial(m).truncated(prec);
            cols.push_back(mul(q, PsDO::term(i, mono)));
            vars.push_back({true, i, m});
        }
    for (int i = 0; i <= b; ++i)
        for (int m = 0; m < prec; ++m) {
            XSeries mono = XSeries::monomial(m).truncated(prec);
            cols.push_back(-mul(p, PsDO::term(i, mono)));
            vars.push_back({false, i, m});
        }
    CellSet cs = common_cells(cols);
    QMatrix rows(cs.cells.size());
    for (size_t c = 0; c < cols.size(); ++c) {
        QVector col = flatten(cols[c], cs);
        for (size_t r = 0; r < col.size(); ++r) {
            if (rows[r].empty()) rows[r].assign(cols.size(), Scalar(0));
            rows[r][c] = col[r];
        }
    }
    auto kernel = kernel_basis(rows, static_cast<int>(cols.size()));

    auto assemble = [&](const QVector& k) {
        PsDO r = PsDO::zero(kExactFloor), l = PsDO::zero(kExactFloor);
        for (size_t i = 0; i < vars.size(); ++i) {
            if (k[i].is_zero()) continue;
            PsDO t = PsDO::term(vars[i].ord, XSeries::monomial(vars[i].deg, k[i]).truncated(prec));
            if (vars[i].in_r)
                r = r + t;
            else
                l = l + t;
        }
        return std::make_pair(r, l);
    };

    // Prefer witnesses with the smallest l-order.
    std::stable_sort(kernel.begin(), kernel.end(), [&](const QVector& x, const QVector& y) {
        auto lord = [&](const QVector& k) {
            int o = -1;
            for (size_t i = 0; i < vars.size(); ++i)
                if (!vars[i].in_r && !k[i].is_zero()) o = std::max(o, vars[i].ord);
            return o;
        };
        return lord(x) < lord(y);
    });
    for (const auto& k : kernel) {
        auto [r, l] = assemble(k);
        if (!r.order() || !l.order()) continue;
        if (mul(q, r) == mul(p, l)) return {r, l};
    }
    raise(ErrorCode::NoSolutionAtPrecision, "no certified ore pair at this window");
}

DordResult dord(const FracOp& p, int depth, int prec, int k_max) {
    if (k_max < 0) k_max = depth - 1;
    const PsDO e = p.expansion(depth);
    for (int k = 0; k <= k_max; ++k) {
        std::vector<PsDO> cols;
        std::vector<std::pair<int, int>> vars;
        PsDO base = mul(e, PsDO::d_pow(k));
        for (int i = 0; i < k; ++i)
            for (int m = 0; m < prec; ++m) {
                cols.push_back(mul(e, PsDO::term(i, XSeries::monomial(m).truncated(prec))));
                vars.emplace_back(i, m);
            }
        // Equations: negative cells of base + sum c_v * cols must vanish.
        std::vector<PsDO> all = cols;
        all.push_back(base);
        CellSet cs = common_cells(all);
        std::vector<size_t> neg_cells;
        for (size_t i = 0; i < cs.cells.size(); ++i)
            if (cs.cells[i].first < 0) neg_cells.push_back(i);
        QMatrix rows;
        QVector rhs;
        QVector base_flat = flatten(base, cs);
        std::vector<QVector> col_flat;
        col_flat.reserve(cols.size());
        for (const auto& c : cols) col_flat.push_back(flatten(c, cs));
        for (size_t i : neg_cells) {
            QVector row(vars.size(), Scalar(0));
            bool nonzero = !base_flat[i].is_zero();
            for (size_t c = 0; c < cols.size(); ++c) {
                row[c] = col_flat[c][i];
                nonzero = nonzero || !row[c].is_zero();
            }
            if (!nonzero) continue;
            rows.push_back(std::move(row));
            rhs.push_back(-base_flat[i]);
        }
        std::optional<QVector> sol;
        if (rows.empty())
            sol = QVector(vars.size(), Scalar(0));
        else
            sol = solve_linear(rows, rhs);
        if (!sol) continue;
        PsDO witness = PsDO::d_pow(k);
        for (size_t i = 0; i < vars.size(); ++i) {
            if ((*sol)[i].is_zero()) continue;
            witness = witness +
                      PsDO::term(vars[i].first, XSeries::monomial(vars[i].second, (*sol)[i]).truncated(prec));
        }
        if (mul(e, witness).certified_differential()) return {k, witness};
    }
    raise(ErrorCode::WindowTooSmall, "no denominator certificate up to order " + std::to_string(k_max));
}

namespace {

std::pair<PsDO, PsDO> left_ore(const PsDO& p, const PsDO& q, int prec) {
    auto [r, l] = ore_solve(p.adjoint(), q.adjoint(), prec);
    return {r.adjoint(), l.adjoint()};
}

} // namespace

CommonDenominators common_denominators(const std::vector<std::pair<PsDO, PsDO>>& pairs_in, int prec) {
    if (pairs_in.empty()) return {PsDO::identity(), PsDO::identity()};
    std::vector<std::pair<PsDO, PsDO>> pairs;
    pairs.reserve(pairs_in.size());
    for (const auto& [pi, qi] : pairs_in) {
        PsDO q = as_differential(qi, "denominator");
        if (!q.order()) raise(ErrorCode::DivisionByZero, "each denominator must be nonzero");
        pairs.emplace_back(as_differential(pi, "numerator"), std::move(q));
    }
    // Right multiplier: L_1 = Q_1, R_1 = 1, then Q_{k+1} R_{k+1} = P_k R_k L_{k+1}.
    PsDO r_cur = PsDO::identity();
    PsDO l_right = pairs[0].second;
    for (size_t k = 1; k < pairs.size(); ++k) {
        PsDO pr = mul(pairs[k - 1].first, r_cur);
        auto [r, l] = ore_solve(pr, pairs[k].second, prec);
        r_cur = r;
        l_right = mul(l_right, l);
    }
    // Left multiplier: mirrored chain on prefixes P_1 Q_1^-1 ... P_k Q_k^-1.
    PsDO l_left;
    {
        auto [r1, l1] = left_ore(pairs[0].first, pairs[0].second, prec);
        PsDO rt = r1;
        l_left = l1;
        for (size_t k = 1; k < pairs.size(); ++k) {
            PsDO rp = mul(rt, pairs[k].first);
            auto [r, l] = left_ore(rp, pairs[k].second, prec);
            rt = r;
            l_left = mul(l, l_left);
        }
    }
    return {l_left, l_right};
}

DiffCert is_differential(const FracOp& p, int depth) {
    DiffCert cert;
    DivRem dr = right_divide(p.num(), p.den());
    if (dr.rem.certified_zero()) {
        cert.verdict = Cert::Yes;
        cert.quotient = std::move(dr.quot);
        return cert;
    }
    const PsDO e = p.expansion(depth);
    for (int j = 0; j <= depth; ++j) {
        ZSeries img = right_act(ZSeries::monomial(j), e);
        for (const auto& [deg, v] : img.terms()) {
            if (deg < 0 && !v.is_zero()) {
                cert.verdict = Cert::No;
                cert.witness_power = j;
                cert.witness = img;
                return cert;
            }
        }
    }
    cert.verdict = Cert::Unknown;
    return cert;
}

bool commute_at_window(const FracOp& p, const FracOp& q, int depth) {
    const PsDO a = p.expansion(depth);
    const PsDO b = q.expansion(depth);
    return commutator(a, b).certified_zero();
}

std::string FracOp::str() const { return textio::format(*this); }

} // namespace fdo
