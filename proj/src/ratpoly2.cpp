#include "fdo/ratpoly2.hpp"

#include <gmpxx.h>

#include "fdo/textio.hpp"

namespace fdo {

RatPoly2 RatPoly2::monomial(int dz, int dw, const Scalar& coef) {
    RatPoly2 p;
    p.add_term(dz, dw, coef);
    return p;
}

Scalar RatPoly2::at(int dz, int dw) const {
    auto it = c_.find({dz, dw});
    return it == c_.end() ? Scalar(0) : it->second;
}

void RatPoly2::add_term(int dz, int dw, const Scalar& coef) {
    if (coef.is_zero()) return;
    Key k{dz, dw};
    auto it = c_.find(k);
    if (it == c_.end()) {
        c_.emplace(k, coef);
    } else {
        it->second += coef;
        if (it->second.is_zero()) c_.erase(it);
    }
}

RatPoly2 RatPoly2::operator-() const {
    RatPoly2 p(*this);
    for (auto& [k, v] : p.c_) v = -v;
    return p;
}

RatPoly2 operator+(const RatPoly2& a, const RatPoly2& b) {
    RatPoly2 p(a);
    for (const auto& [k, v] : b.c_) p.add_term(k.first, k.second, v);
    return p;
}

RatPoly2 operator-(const RatPoly2& a, const RatPoly2& b) { return a + (-b); }

RatPoly2 operator*(const RatPoly2& a, const RatPoly2& b) {
    RatPoly2 p;
    for (const auto& [ka, va] : a.c_)
        for (const auto& [kb, vb] : b.c_)
            p.add_term(ka.first + kb.first, ka.second + kb.second, va * vb);
    return p;
}

RatPoly2 operator*(const Scalar& s, const RatPoly2& a) {
    RatPoly2 p;
    for (const auto& [k, v] : a.c_) p.add_term(k.first, k.second, s * v);
    return p;
}

RatPoly2 RatPoly2::normalized() const {
    if (c_.empty()) return *this;
    mpz_class den_lcm = 1, num_gcd = 0;
    for (const auto& [k, v] : c_) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.num().get_mpz_t());
    }
    Scalar scale(mpq_class(den_lcm, num_gcd));
    // Leading monomial in w-major lexicographic order.
    Key lead{-1, -1};
    for (const auto& [k, v] : c_) {
        if (lead.second < k.second || (lead.second == k.second && lead.first < k.first)) lead = k;
    }
    if ((scale * c_.at(lead)).sign() < 0) scale = -scale;
    return scale * (*this);
}

std::string RatPoly2::str() const { return textio::format(*this); }

} // namespace fdo
