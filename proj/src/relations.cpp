#include "fdo/relations.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace fdo {

namespace {

constexpr long kNegInf = std::numeric_limits<long>::min() / 4;

void check_commuting(const FracOp& p, const FracOp& q, const RelOptions& opts) {
    if (!commute_at_window(p, q, opts.depth))
        raise(ErrorCode::NotCommutingAtWindow, "operators do not commute at the window");
}

struct Monomial {
    int i, j;
    PsDO op; // restricted to the common window
};

// Common window over the monomials: max floor, per-order min x-precision.
std::vector<PsDO> restrict_common(const std::vector<PsDO>& ops) {
    long floor = kNegInf;
    long top = kNegInf;
    for (const auto& p : ops) {
        if (!p.exact_tail()) floor = std::max(floor, static_cast<long>(p.floor()));
        if (!p.empty()) top = std::max(top, static_cast<long>(p.top_stored()));
    }
    if (top == kNegInf) return ops;
    if (floor == kNegInf) {
        floor = top;
        for (const auto& p : ops)
            if (!p.empty()) floor = std::min(floor, static_cast<long>(p.cells().begin()->first));
    }
    std::map<int, int> prec;
    for (long k = floor; k <= top; ++k) {
        int pr = kExactPrec;
        for (const auto& p : ops) pr = std::min(pr, p.coeff(static_cast<int>(k)).prec());
        prec[static_cast<int>(k)] = pr;
    }
    std::vector<PsDO> out;
    out.reserve(ops.size());
    for (const auto& p : ops) {
        PsDO r = PsDO::zero(static_cast<int>(floor));
        for (long k = floor; k <= top; ++k) {
            int pr = prec[static_cast<int>(k)];
            XSeries c = p.coeff(static_cast<int>(k));
            r = r + PsDO::term(static_cast<int>(k), pr == kExactPrec ? c : c.truncated(pr));
        }
        out.push_back(r.with_floor(static_cast<int>(floor)));
    }
    return out;
}

// Operator-level echelon with combination tracking. Pivots must have
// certified-constant leading coefficients (every nonzero element of the
// span of a commuting family does).
class OpSpan {
public:
    struct Reduced {
        PsDO op;
        QVector combo;
    };

    Reduced reduce(PsDO op, QVector combo) const {
        for (;;) {
            auto t = op.order();
            if (!t) break;
            auto it = rows_.find(*t);
            if (it == rows_.end()) break;
            const XSeries lead = op.coeff(*t);
            if (!lead.certified_constant())
                raise(ErrorCode::Internal,
                      "span element with non-constant leading coefficient; "
                      "inputs cannot commute at this window");
            Scalar c = lead.const_term();
            op = op - c * it->second.op;
            for (size_t k = 0; k < combo.size(); ++k) combo[k] -= c * it->second.combo[k];
        }
        return {std::move(op), std::move(combo)};
    }

    // Returns true if the dimension grew.
    bool insert(PsDO op, QVector combo) {
        Reduced r = reduce(std::move(op), std::move(combo));
        auto t = r.op.order();
        if (!t) {
            if (r.op.certified_zero()) last_kernel_ = std::move(r.combo);
            return false;
        }
        const XSeries lead = r.op.coeff(*t);
        if (!lead.certified_constant())
            raise(ErrorCode::Internal,
                  "span element with non-constant leading coefficient; "
                  "inputs cannot commute at this window");
        Scalar inv = lead.const_term().inverse();
        PsDO monic = inv * r.op;
        for (auto& v : r.combo) v = inv * v;
        rows_.emplace(*t, Reduced{std::move(monic), std::move(r.combo)});
        return true;
    }

    int dim() const { return static_cast<int>(rows_.size()); }
    const std::optional<QVector>& last_kernel() const { return last_kernel_; }

private:
    std::map<int, Reduced> rows_;
    std::optional<QVector> last_kernel_;
};

// Monomials (i, j), i, j <= n, by increasing total bidegree.
std::vector<std::pair<int, int>> bidegree_order(int n) {
    std::vector<std::pair<int, int>> idx;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) idx.emplace_back(i, j);
    std::stable_sort(idx.begin(), idx.end(), [](const auto& a, const auto& b) {
        if (a.first + a.second != b.first + b.second) return a.first + a.second < b.first + b.second;
        return a.first < b.first;
    });
    return idx;
}

struct MonomialTable {
    std::vector<std::pair<int, int>> order;     // search order
    std::vector<PsDO> full;                     // full-window monomials
    std::vector<PsDO> restricted;               // common-window monomials
};

MonomialTable monomials(const FracOp& p, const FracOp& q, int n, const RelOptions& opts) {
    MonomialTable t;
    t.order = bidegree_order(n);
    const PsDO ep = p.expansion(opts.depth);
    const PsDO eq = q.expansion(opts.depth);
    std::vector<PsDO> ppow{PsDO::identity()}, qpow{PsDO::identity()};
    for (int i = 1; i <= n; ++i) ppow.push_back(mul(ppow.back(), ep));
    for (int j = 1; j <= n; ++j) qpow.push_back(mul(qpow.back(), eq));
    t.full.reserve(t.order.size());
    for (auto [i, j] : t.order) t.full.push_back(mul(ppow[static_cast<size_t>(i)], qpow[static_cast<size_t>(j)]));
    t.restricted = restrict_common(t.full);
    return t;
}

int growth_bound(const FracOp& p, const FracOp& q, int n, const RelOptions& opts, bool* differential) {
    bool diff = p.den_order() == 0 && q.den_order() == 0;
    if (differential) *differential = diff;
    if (diff) return (p.order() + q.order()) * n + 1;
    DordResult dp = dord(p, opts.depth, opts.prec);
    DordResult dq = dord(q, opts.depth, opts.prec);
    int r = p.order() + q.order() + dp.dord + dq.dord;
    return 2 * r * n + 1;
}

std::string window_description(const std::vector<PsDO>& ops) {
    long floor = kNegInf, top = kNegInf;
    int pr = kExactPrec;
    for (const auto& p : ops) {
        if (!p.exact_tail()) floor = std::max(floor, static_cast<long>(p.floor()));
        if (!p.empty()) top = std::max(top, static_cast<long>(p.top_stored()));
        for (const auto& [k, v] : p.cells()) pr = std::min(pr, v.prec());
    }
    std::string s = "orders [";
    s += (floor == kNegInf ? std::string("-inf") : std::to_string(floor));
    s += ", " + std::to_string(top) + "], x-prec ";
    s += (pr == kExactPrec ? std::string("exact") : std::to_string(pr));
    return s;
}

} // namespace

OrderBounds order_bounds(const FracOp& p, const FracOp& q, int n, const RelOptions& opts) {
    check_commuting(p, q, opts);
    OrderBounds b;
    b.dord_p = dord(p, opts.depth, opts.prec).dord;
    b.dord_q = dord(q, opts.depth, opts.prec).dord;
    b.lo = -n * (b.dord_p + b.dord_q);
    b.hi = n * (p.order() + q.order());
    return b;
}

BCReport span_dim(const FracOp& p, const FracOp& q, int n, const RelOptions& opts) {
    check_commuting(p, q, opts);
    BCReport rep;
    rep.n_used = n;
    rep.bound = growth_bound(p, q, n, opts, nullptr);
    MonomialTable t = monomials(p, q, n, opts);
    OpSpan span;
    for (size_t m = 0; m < t.order.size(); ++m) {
        QVector combo(t.order.size(), Scalar(0));
        combo[m] = Scalar(1);
        span.insert(t.restricted[m], std::move(combo));
    }
    rep.span_dim = span.dim();
    rep.residual_window = window_description(t.restricted);
    return rep;
}

RatPoly2 bc_relation(const FracOp& p, const FracOp& q, int n_max, const RelOptions& opts,
                     BCReport* report) {
    {
        const PsDO ep = p.expansion(opts.depth);
        auto op = ep.order();
        if (!op || *op == 0 || !ep.is_monic())
            raise(ErrorCode::UsageError, "p must be monic of nonzero order");
        const PsDO eq = q.expansion(opts.depth);
        auto oq = eq.order();
        if (!oq || *oq == 0)
            raise(ErrorCode::UsageError, "q must have nonzero order");
    }
    check_commuting(p, q, opts);
    BCReport rep;
    for (int n = 1; n <= n_max; ++n) {
        rep = BCReport{};
        rep.n_used = n;
        rep.bound = growth_bound(p, q, n, opts, nullptr);
        MonomialTable t = monomials(p, q, n, opts);
        OpSpan span;
        for (size_t m = 0; m < t.order.size(); ++m) {
            QVector combo(t.order.size(), Scalar(0));
            combo[m] = Scalar(1);
            bool grew = span.insert(t.restricted[m], std::move(combo));
            if (grew) continue;
            const auto& kernel = span.last_kernel();
            if (!kernel) continue;
            // Candidate relation: verify against the full windows.
            RatPoly2 f;
            PsDO value = PsDO::zero(kExactFloor);
            for (size_t k = 0; k <= m; ++k) {
                if ((*kernel)[k].is_zero()) continue;
                f.add_term(t.order[k].first, t.order[k].second, (*kernel)[k]);
                value = value + (*kernel)[k] * t.full[k];
            }
            if (f.is_zero() || !value.certified_zero()) continue;
            RatPoly2 norm = f.normalized();
            rep.relations.push_back(norm);
            if (!rep.relation) rep.relation = norm;
        }
        rep.span_dim = span.dim();
        rep.residual_window = window_description(t.restricted);
        if (rep.relation) {
            if (report) *report = rep;
            return *rep.relation;
        }
    }
    if (report) *report = rep;
    raise(ErrorCode::NoRelationWithinBudget,
          "no certified relation up to bidegree " + std::to_string(n_max) +
              "; span growth " + std::to_string(rep.span_dim) + " <= " + std::to_string(rep.bound) +
              " indicates a window too small, not independence");
}

} // namespace fdo
