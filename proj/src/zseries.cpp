#include "fdo/zseries.hpp"

#include <algorithm>

#include "fdo/textio.hpp"

namespace fdo {

namespace {
const Scalar kZero(0);

// Highest exponent that could carry an unseen nonzero coefficient is
// top(); everything above is exactly zero. For a certified-zero windowed
// series that boundary is floor()-1.
long top_known(const ZSeries& s) {
    if (auto t = s.top()) return *t;
    return static_cast<long>(s.floor()) - 1;
}
} // namespace

void ZSeries::put(int deg, const Scalar& v) {
    if (!trusted(deg)) return;
    auto it = c_.find(deg);
    if (it == c_.end()) {
        if (!v.is_zero()) c_.emplace(deg, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) c_.erase(it);
    }
}

void ZSeries::prune() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second.is_zero() || !trusted(it->first))
            it = c_.erase(it);
        else
            ++it;
    }
}

ZSeries ZSeries::monomial(int deg, const Scalar& coef) {
    ZSeries s;
    if (!coef.is_zero()) s.c_.emplace(deg, coef);
    return s;
}

ZSeries ZSeries::from_terms(std::vector<std::pair<int, Scalar>> terms, int floor) {
    ZSeries s(floor);
    for (auto& [deg, v] : terms) s.put(deg, v);
    return s;
}

std::optional<int> ZSeries::top() const {
    if (c_.empty()) return std::nullopt;
    return c_.rbegin()->first;
}

Scalar ZSeries::at(int deg) const {
    if (!trusted(deg)) raise(ErrorCode::Internal, "access to untrusted z-coefficient");
    auto it = c_.find(deg);
    return it == c_.end() ? kZero : it->second;
}

ZSeries ZSeries::clipped(int floor) const {
    if (floor <= floor_) return *this;
    ZSeries s(floor);
    s.c_ = c_;
    s.prune();
    return s;
}

ZSeries ZSeries::operator-() const {
    ZSeries s(*this);
    for (auto& [deg, v] : s.c_) v = -v;
    return s;
}

ZSeries operator+(const ZSeries& a, const ZSeries& b) {
    ZSeries s(std::max(a.floor_, b.floor_));
    s.c_ = a.c_;
    for (const auto& [deg, v] : b.c_) {
        auto it = s.c_.find(deg);
        if (it == s.c_.end())
            s.c_.emplace(deg, v);
        else {
            it->second += v;
            if (it->second.is_zero()) s.c_.erase(it);
        }
    }
    s.prune();
    return s;
}

ZSeries operator-(const ZSeries& a, const ZSeries& b) { return a + (-b); }

ZSeries operator*(const ZSeries& a, const ZSeries& b) {
    if ((a.exact() && a.is_zero()) || (b.exact() && b.is_zero())) return ZSeries();
    // Unknown tail of one factor times the known top of the other bounds the
    // trusted exponents of the product from below.
    int floor = kExactFloor;
    if (!a.exact() || !b.exact()) {
        long f = std::numeric_limits<long>::min();
        if (!a.exact()) f = std::max(f, static_cast<long>(a.floor_) + top_known(b));
        if (!b.exact()) f = std::max(f, static_cast<long>(b.floor_) + top_known(a));
        floor = static_cast<int>(std::max<long>(f, kExactFloor + 1));
    }
    ZSeries s(floor);
    for (const auto& [da, va] : a.c_)
        for (const auto& [db, vb] : b.c_) s.put(da + db, va * vb);
    return s;
}

ZSeries operator*(const Scalar& v, const ZSeries& a) {
    ZSeries s(a.floor_);
    if (v.is_zero()) return s;
    s.c_ = a.c_;
    for (auto& [deg, x] : s.c_) x = v * x;
    return s;
}

ZSeries ZSeries::shifted(int k) const {
    ZSeries s(exact() ? kExactFloor : floor_ + k);
    for (const auto& [deg, v] : c_) s.c_.emplace(deg + k, v);
    return s;
}

ZSeries ZSeries::inverse(int result_floor) const {
    if (is_zero()) raise(ErrorCode::DivisionByZero, "inverse of zero Laurent series");
    int t = *top();
    const Scalar lead = at(t);
    int floor;
    if (exact()) {
        if (c_.size() == 1) {
            // Monomial: exact inverse.
            return monomial(-t, lead.inverse());
        }
        if (result_floor == kExactFloor)
            raise(ErrorCode::Internal, "inverse of exact Laurent series needs a target floor");
        floor = result_floor;
    } else {
        floor = floor_ - 2 * t;
        if (result_floor != kExactFloor) floor = std::max(floor, result_floor);
    }
    // Solve (this * b) = 1 coefficientwise, descending from exponent -t.
    ZSeries b(floor);
    Scalar inv_lead = lead.inverse();
    for (int e = -t; e >= floor; --e) {
        // Target coefficient of z^(t+e) in the product: 1 if t+e==0 else 0.
        Scalar acc = (t + e == 0) ? Scalar(1) : Scalar(0);
        for (const auto& [deg, v] : c_) {
            if (deg == t) continue;
            int need = t + e - deg; // exponent needed from b
            if (need <= -t && need >= e + 1) acc -= v * b.at(need);
        }
        Scalar coef = inv_lead * acc;
        if (!coef.is_zero()) b.c_.emplace(e, coef);
    }
    return b;
}

ZSeries ZSeries::z_derivative() const {
    ZSeries s(exact() ? kExactFloor : floor_ - 1);
    for (const auto& [deg, v] : c_) {
        if (deg == 0) continue;
        s.c_.emplace(deg - 1, Scalar(static_cast<long>(deg)) * v);
    }
    return s;
}

bool operator==(const ZSeries& a, const ZSeries& b) {
    int floor = std::max(a.floor_, b.floor_);
    for (const auto& [deg, v] : a.c_) {
        if (deg < floor) continue;
        if (b.at(deg) != v) return false;
    }
    for (const auto& [deg, v] : b.c_) {
        if (deg < floor) continue;
        if (a.at(deg) != v) return false;
    }
    return true;
}

std::string ZSeries::str() const { return textio::format(*this); }

} // namespace fdo
