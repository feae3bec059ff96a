#include "fdo/psdo.hpp"

#include <algorithm>
#include <limits>

#include "fdo/textio.hpp"

namespace fdo {

namespace {
constexpr long kNegInf = std::numeric_limits<long>::min() / 4;

// Lowest order that might be nonzero without the window saying so.
long unknown_boundary(const PsDO& p) { return p.exact_tail() ? kNegInf : p.floor(); }
} // namespace

int PsDO::top_stored() const {
    if (c_.empty()) return exact_tail() ? std::numeric_limits<int>::min() + 1 : floor_ - 1;
    return c_.rbegin()->first;
}

void PsDO::set_cell(int k, XSeries v) {
    if (!trusted_order(k)) return;
    if (v.fully_unknown()) {
        // Untrusted cell: everything at and below it is out of the window.
        if (k + 1 > floor_) {
            floor_ = k + 1;
            normalize();
        }
        return;
    }
    if (v.exact() && v.is_zero()) {
        c_.erase(k);
        return;
    }
    c_[k] = std::move(v);
}

void PsDO::normalize() {
    int new_floor = floor_;
    for (auto& [k, v] : c_)
        if (v.fully_unknown()) new_floor = std::max(new_floor, k + 1);
    floor_ = new_floor;
    for (auto it = c_.begin(); it != c_.end();) {
        if (!trusted_order(it->first) || (it->second.exact() && it->second.is_zero()))
            it = c_.erase(it);
        else
            ++it;
    }
}

PsDO PsDO::d_pow(int k) {
    PsDO p;
    p.c_.emplace(k, XSeries::one());
    return p;
}

PsDO PsDO::term(int k, XSeries u) {
    PsDO p;
    p.set_cell(k, std::move(u));
    return p;
}

PsDO PsDO::from_symbol(const ZSeries& f) {
    PsDO p;
    p.floor_ = f.exact() ? kExactFloor : f.floor();
    for (const auto& [deg, v] : f.terms()) p.c_.emplace(deg, XSeries::constant(v));
    return p;
}

XSeries PsDO::coeff(int k) const {
    if (!trusted_order(k)) raise(ErrorCode::Internal, "access to untrusted operator order");
    auto it = c_.find(k);
    return it == c_.end() ? XSeries() : it->second;
}

std::optional<int> PsDO::order() const {
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        if (it->second.certified_nonzero()) return it->first;
    return std::nullopt;
}

bool PsDO::certified_zero() const {
    return std::all_of(c_.begin(), c_.end(),
                       [](const auto& kv) { return kv.second.is_zero(); });
}

bool PsDO::certified_differential() const {
    if (!exact_tail() && floor_ > 0) return false;
    for (const auto& [k, v] : c_)
        if (k < 0 && !v.is_zero()) return false;
    return true;
}

bool PsDO::structural_differential() const {
    return exact_tail() && (c_.empty() || c_.begin()->first >= 0);
}

bool PsDO::is_normalized() const {
    auto m = order();
    if (!m) return false;
    if (!coeff(*m).is_one()) return false;
    if (trusted_order(*m - 1) && !coeff(*m - 1).is_zero()) return false;
    return true;
}

bool PsDO::is_monic() const {
    auto m = order();
    return m && coeff(*m).is_one();
}

PsDO PsDO::operator-() const {
    PsDO p(*this);
    for (auto& [k, v] : p.c_) v = -v;
    return p;
}

PsDO operator+(const PsDO& a, const PsDO& b) {
    PsDO s;
    s.floor_ = static_cast<int>(std::max({static_cast<long>(kExactFloor),
                                          unknown_boundary(a), unknown_boundary(b)}));
    s.c_ = a.c_;
    for (const auto& [k, v] : b.c_) {
        auto it = s.c_.find(k);
        if (it == s.c_.end())
            s.c_.emplace(k, v);
        else
            it->second = it->second + v;
    }
    s.normalize();
    return s;
}

PsDO operator-(const PsDO& a, const PsDO& b) { return a + (-b); }

PsDO operator*(const Scalar& v, const PsDO& a) {
    if (v.is_zero()) return PsDO::zero(a.floor_);
    PsDO s(a);
    for (auto& [k, u] : s.c_) u = v * u;
    return s;
}

PsDO mul(const PsDO& a, const PsDO& b) {
    if ((a.exact_tail() && a.empty()) || (b.exact_tail() && b.empty())) return PsDO();

    // Orders reachable before either unknown tail interferes.
    long ubound = kNegInf;
    if (!a.exact_tail()) ubound = std::max(ubound, static_cast<long>(a.floor()) + b.top_stored());
    if (!b.exact_tail()) ubound = std::max(ubound, static_cast<long>(b.floor()) + a.top_stored());

    if (a.empty() || b.empty()) {
        // Certified-zero factor: the product is certified zero on its window.
        return PsDO::zero(ubound <= kNegInf ? kExactFloor : static_cast<int>(ubound));
    }

    long top = static_cast<long>(a.top_stored()) + b.top_stored();
    long support_min =
        static_cast<long>(a.cells().begin()->first) + b.cells().begin()->first;
    long rmin = std::max(ubound, support_min);
    if (ubound > top) raise(ErrorCode::PrecisionExhausted, "operator windows do not overlap");

    PsDO s;
    s.floor_ = ubound <= kNegInf ? kExactFloor : static_cast<int>(ubound);
    for (long r = top; r >= rmin; --r) {
        XSeries acc; // exact zero
        for (const auto& [m, u] : a.cells()) {
            for (const auto& [n, v] : b.cells()) {
                long j = static_cast<long>(m) + n - r;
                if (j < 0) continue;
                if (m >= 0 && j > m) continue; // binomial vanishes
                Scalar c = binomial(m, static_cast<long>(j));
                if (c.is_zero()) continue;
                // v^(j): exhausted precision makes the whole cell unknown.
                if (!v.exact() && j >= v.prec()) {
                    acc = XSeries::zero(0);
                    break;
                }
                XSeries dv = v;
                for (long t = 0; t < j; ++t) dv = dv.derivative();
                if (dv.exact() && dv.is_zero()) continue;
                acc = acc + c * (u * dv);
            }
            if (acc.fully_unknown()) break;
        }
        if (acc.fully_unknown()) {
            // Derivative exhaustion is monotone going down; close the window here.
            s.floor_ = static_cast<int>(r + 1);
            break;
        }
        s.set_cell(static_cast<int>(r), std::move(acc));
    }
    s.normalize();
    return s;
}

PsDO PsDO::pow(int n) const {
    PsDO acc = identity();
    for (int i = 0; i < n; ++i) acc = mul(acc, *this);
    return acc;
}

PsDO PsDO::inverse(int depth) const {
    auto mo = order();
    if (!mo) raise(ErrorCode::NotInvertible, "certified-zero operator");
    const int t = *mo;
    const XSeries lead = coeff(t);
    if (!lead.trusted(0) || lead.const_term().is_zero())
        raise(ErrorCode::NotInvertible, "leading coefficient is not a unit");
    XSeries lead_inv = lead.inverse(lead.exact() ? depth + 1 : -1);

    long qfloor = static_cast<long>(-t) - depth + 1;
    if (!exact_tail()) qfloor = std::max(qfloor, static_cast<long>(floor_) - 2L * t);
    if (qfloor > -t) raise(ErrorCode::PrecisionExhausted, "inverse window is empty");

    PsDO q;
    q.floor_ = static_cast<int>(qfloor);
    for (int r = 0; r >= static_cast<int>(qfloor) + t; --r) {
        // Solve for the coefficient of D^(r-t) from the D^r cell of this*q.
        XSeries acc = (r == 0) ? XSeries::one() : XSeries();
        for (const auto& [m, u] : c_) {
            for (const auto& [k, v] : q.c_) {
                long j = static_cast<long>(m) + k - r;
                if (j < 0) continue;
                if (m == t && k == r - t) continue;
                if (m >= 0 && j > m) continue;
                Scalar c = binomial(m, static_cast<long>(j));
                if (c.is_zero()) continue;
                if (!v.exact() && j >= v.prec()) {
                    acc = XSeries::zero(0);
                    break;
                }
                XSeries dv = v;
                for (long s = 0; s < j; ++s) dv = dv.derivative();
                acc = acc - c * (u * dv);
            }
            if (acc.fully_unknown()) break;
        }
        if (acc.fully_unknown()) {
            q.floor_ = r - t + 1;
            break;
        }
        q.set_cell(r - t, lead_inv * acc);
    }
    q.normalize();
    return q;
}

PsDO PsDO::adjoint() const {
    PsDO s;
    long floor = exact_tail() ? kNegInf : floor_;
    for (const auto& [m, u] : c_) {
        if (!u.exact()) floor = std::max(floor, static_cast<long>(m) - u.prec() + 1);
    }
    s.floor_ = floor <= kNegInf ? kExactFloor : static_cast<int>(floor);

    std::map<int, XSeries> acc;
    for (const auto& [m, u] : c_) {
        Scalar sign = (m % 2 == 0) ? Scalar(1) : Scalar(-1);
        XSeries dv = u;
        for (long j = 0;; ++j) {
            if (m >= 0 && j > m) break;
            if (j > 0) {
                if (!dv.exact() && dv.prec() == 0) break;
                dv = dv.derivative();
            }
            if (dv.exact() && dv.is_zero()) break;
            long r = static_cast<long>(m) - j;
            if (r < floor && !(floor <= kNegInf)) break;
            XSeries term = (sign * binomial(m, j)) * dv;
            auto it = acc.find(static_cast<int>(r));
            if (it == acc.end())
                acc.emplace(static_cast<int>(r), std::move(term));
            else
                it->second = it->second + term;
        }
    }
    for (auto& [k, v] : acc) s.set_cell(k, std::move(v));
    s.normalize();
    return s;
}

PsDO PsDO::diff_part() const {
    PsDO s;
    s.floor_ = (exact_tail() || floor_ <= 0) ? kExactFloor : floor_;
    for (const auto& [k, v] : c_)
        if (k >= 0) s.c_.emplace(k, v);
    s.normalize();
    return s;
}

PsDO PsDO::int_part() const {
    PsDO s;
    s.floor_ = floor_;
    for (const auto& [k, v] : c_)
        if (k < 0) s.c_.emplace(k, v);
    s.normalize();
    return s;
}

PsDO PsDO::with_floor(int floor) const {
    if (!exact_tail() && floor <= floor_) return *this;
    PsDO s(*this);
    s.floor_ = floor;
    s.normalize();
    return s;
}

PsDO PsDO::with_prec(int prec) const {
    PsDO s;
    s.floor_ = floor_;
    for (const auto& [k, v] : c_) s.set_cell(k, v.truncated(prec));
    s.normalize();
    return s;
}

bool operator==(const PsDO& a, const PsDO& b) {
    long floor = std::max(unknown_boundary(a), unknown_boundary(b));
    auto check = [&](const PsDO& p, const PsDO& q) {
        for (const auto& [k, v] : p.c_) {
            if (k < floor) continue;
            if (!(v == q.coeff(k))) return false;
        }
        return true;
    };
    return check(a, b) && check(b, a);
}

PsDO commutator(const PsDO& a, const PsDO& b) { return mul(a, b) - mul(b, a); }

PsDO schur_dress(const PsDO& l, int depth) {
    if (!l.is_normalized()) raise(ErrorCode::NotNormalized, "dressing needs a normalized operator");
    const int m = *l.order();
    if (m == 0) raise(ErrorCode::ZeroOrder, "dressing needs nonzero order");
    const Scalar m_inv = Scalar(m).inverse();

    PsDO u = PsDO::identity(); // exact tail during the recursion: unset cells read as zero
    const PsDO dm = PsDO::d_pow(m);
    int completed = 0;
    for (int j = 1; j <= depth; ++j) {
        // The D^(m-j-1) cell of u*D^m - l*u equals m * u_j' once cells above
        // -j are fixed; normalization of l kills the u_j term itself.
        PsDO e = mul(u, dm) - mul(l, u);
        if (!e.trusted_order(m - j - 1)) break;
        XSeries k = e.coeff(m - j - 1);
        if (k.fully_unknown()) break;
        XSeries uj = (m_inv * k).antiderivative();
        completed = j;
        if (uj.exact() && uj.is_zero()) continue;
        u = u + PsDO::term(-j, std::move(uj));
    }
    return u.with_floor(-completed);
}

PsDO lax_bracket(const PsDO& l, int n) {
    auto ord = l.order();
    if (!ord || *ord != 1 || !l.is_monic())
        raise(ErrorCode::NotLaxForm, "expected monic operator of order 1");
    if (n <= 0) raise(ErrorCode::UsageError, "lax power must be positive");
    PsDO b = commutator(l.pow(n).diff_part(), l);
    for (const auto& [k, v] : b.cells())
        if (k >= 0 && !v.is_zero())
            raise(ErrorCode::Internal, "lax bracket has certified-nonzero differential part");
    return b.int_part();
}

std::string PsDO::str() const { return textio::format(*this); }

} // namespace fdo
