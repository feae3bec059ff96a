#include "fdo/xseries.hpp"

#include <algorithm>

#include "fdo/textio.hpp"

namespace fdo {

namespace {
const Scalar kZero(0);
}

void XSeries::normalize() {
    if (exact()) {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    } else {
        c_.resize(static_cast<size_t>(prec_), kZero);
    }
}

XSeries XSeries::poly(std::vector<Scalar> c) {
    XSeries s;
    s.c_ = std::move(c);
    s.prec_ = kExactPrec;
    s.normalize();
    return s;
}

XSeries XSeries::monomial(int deg, const Scalar& coef) {
    std::vector<Scalar> c(static_cast<size_t>(deg) + 1, kZero);
    c.back() = coef;
    return poly(std::move(c));
}

XSeries XSeries::zero(int prec) {
    XSeries s;
    s.prec_ = prec;
    s.normalize();
    return s;
}

XSeries XSeries::windowed(std::vector<Scalar> c) {
    XSeries s;
    s.prec_ = static_cast<int>(c.size());
    s.c_ = std::move(c);
    return s;
}

Scalar XSeries::at(int deg) const {
    if (!trusted(deg)) raise(ErrorCode::Internal, "access to untrusted x-coefficient");
    if (deg < 0 || deg > top_deg()) return kZero;
    return c_[static_cast<size_t>(deg)];
}

bool XSeries::is_zero() const {
    if (fully_unknown()) return false;
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& v) { return v.is_zero(); });
}

bool XSeries::is_one() const {
    if (fully_unknown()) return false;
    if (c_.empty() || !c_[0].is_one()) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](const Scalar& v) { return v.is_zero(); });
}

bool XSeries::certified_constant() const {
    if (c_.empty()) return true;
    return std::all_of(c_.begin() + 1, c_.end(), [](const Scalar& v) { return v.is_zero(); });
}

bool XSeries::certified_nonzero() const {
    return std::any_of(c_.begin(), c_.end(), [](const Scalar& v) { return !v.is_zero(); });
}

XSeries XSeries::truncated(int prec) const {
    if (prec < 0) prec = 0;
    if (prec >= prec_) return *this;
    XSeries s;
    s.prec_ = prec;
    s.c_.assign(c_.begin(), c_.begin() + std::min<size_t>(c_.size(), static_cast<size_t>(prec)));
    s.normalize();
    return s;
}

XSeries XSeries::operator-() const {
    XSeries s(*this);
    for (auto& v : s.c_) v = -v;
    return s;
}

XSeries operator+(const XSeries& a, const XSeries& b) {
    XSeries s;
    s.prec_ = std::min(a.prec_, b.prec_);
    size_t n = std::max(a.c_.size(), b.c_.size());
    if (!s.exact()) n = std::min(n, static_cast<size_t>(s.prec_));
    s.c_.assign(n, kZero);
    for (size_t i = 0; i < n; ++i) {
        if (i < a.c_.size()) s.c_[i] += a.c_[i];
        if (i < b.c_.size()) s.c_[i] += b.c_[i];
    }
    s.normalize();
    return s;
}

XSeries operator-(const XSeries& a, const XSeries& b) { return a + (-b); }

XSeries operator*(const XSeries& a, const XSeries& b) {
    XSeries s;
    s.prec_ = std::min(a.prec_, b.prec_);
    if (a.c_.empty() || b.c_.empty()) {
        // Exactly zero factor: exact zero; otherwise certified zero at min prec.
        s.normalize();
        return s;
    }
    size_t n = a.c_.size() + b.c_.size() - 1;
    if (!s.exact()) n = std::min(n, static_cast<size_t>(s.prec_));
    s.c_.assign(n, kZero);
    for (size_t i = 0; i < a.c_.size() && i < n; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size() && i + j < n; ++j) s.c_[i + j] += a.c_[i] * b.c_[j];
    }
    s.normalize();
    return s;
}

XSeries operator*(const Scalar& v, const XSeries& a) {
    XSeries s(a);
    if (v.is_zero()) return XSeries::zero(a.prec_);
    for (auto& x : s.c_) x = v * x;
    return s;
}

XSeries XSeries::derivative() const {
    XSeries s;
    if (exact()) {
        s.prec_ = kExactPrec;
    } else {
        if (prec_ == 0) raise(ErrorCode::PrecisionExhausted, "derivative of fully-unknown series");
        s.prec_ = prec_ - 1;
    }
    if (!c_.empty()) {
        s.c_.assign(c_.size() - 1, kZero);
        for (size_t i = 1; i < c_.size(); ++i) s.c_[i - 1] = Scalar(static_cast<long>(i)) * c_[i];
    }
    s.normalize();
    return s;
}

XSeries XSeries::antiderivative() const {
    XSeries s;
    s.prec_ = exact() ? kExactPrec : prec_ + 1;
    s.c_.assign(c_.size() + 1, kZero);
    for (size_t i = 0; i < c_.size(); ++i) s.c_[i + 1] = c_[i] / Scalar(static_cast<long>(i) + 1);
    s.normalize();
    return s;
}

XSeries XSeries::inverse(int prec) const {
    if (fully_unknown() || c_.empty() || c_[0].is_zero())
        raise(ErrorCode::NotAUnit, "series constant term is zero");
    if (exact()) {
        if (c_.size() == 1) return constant(c_[0].inverse());
        if (prec < 0)
            raise(ErrorCode::Internal, "inverse of exact non-constant series needs a target precision");
    } else {
        prec = (prec < 0) ? prec_ : std::min(prec, prec_);
    }
    std::vector<Scalar> b(static_cast<size_t>(prec), kZero);
    Scalar inv0 = c_[0].inverse();
    b[0] = inv0;
    for (int n = 1; n < prec; ++n) {
        Scalar acc(0);
        for (int k = 1; k <= n; ++k) {
            if (k > top_deg()) break;
            acc += c_[static_cast<size_t>(k)] * b[static_cast<size_t>(n - k)];
        }
        b[static_cast<size_t>(n)] = -inv0 * acc;
    }
    return windowed(std::move(b));
}

const Scalar& XSeries::const_term() const {
    if (!trusted(0)) raise(ErrorCode::PrecisionExhausted, "constant term untrusted");
    return c_.empty() ? kZero : c_[0];
}

bool operator==(const XSeries& a, const XSeries& b) {
    int p = std::min(a.prec_, b.prec_);
    size_t n = std::max(a.c_.size(), b.c_.size());
    if (p != kExactPrec) n = std::min(n, static_cast<size_t>(p));
    for (size_t i = 0; i < n; ++i) {
        const Scalar& x = i < a.c_.size() ? a.c_[i] : kZero;
        const Scalar& y = i < b.c_.size() ? b.c_[i] : kZero;
        if (x != y) return false;
    }
    return true;
}

std::string XSeries::str() const { return textio::format(*this); }

} // namespace fdo
