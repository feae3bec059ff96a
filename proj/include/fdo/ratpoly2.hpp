#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fdo/scalar.hpp"

namespace fdo {

// Polynomial in two commuting indeterminates z, w with rational coefficients.
class RatPoly2 {
public:
    using Key = std::pair<int, int>; // (z-degree, w-degree)

    RatPoly2() = default;

    static RatPoly2 monomial(int dz, int dw, const Scalar& coef = 1);

    bool is_zero() const { return c_.empty(); }
    const std::map<Key, Scalar>& terms() const { return c_; }
    Scalar at(int dz, int dw) const;

    void add_term(int dz, int dw, const Scalar& coef);

    RatPoly2 operator-() const;
    friend RatPoly2 operator+(const RatPoly2& a, const RatPoly2& b);
    friend RatPoly2 operator-(const RatPoly2& a, const RatPoly2& b);
    friend RatPoly2 operator*(const RatPoly2& a, const RatPoly2& b);
    friend RatPoly2 operator*(const Scalar& s, const RatPoly2& a);

    friend bool operator==(const RatPoly2& a, const RatPoly2& b) { return a.c_ == b.c_; }
    friend bool operator!=(const RatPoly2& a, const RatPoly2& b) { return !(a == b); }

    // Primitive integer coefficients, and a positive coefficient on the
    // leading monomial in w-major lexicographic order.
    RatPoly2 normalized() const;

    // Substitute operators for z and w: sum c_ij P^i Q^j.
    template <typename Op, typename MulFn, typename PowFn, typename ScaleFn, typename AddFn>
    Op evaluate(const Op& p, const Op& q, MulFn op_mul, PowFn op_pow, ScaleFn op_scale,
                AddFn op_add) const {
        Op acc{};
        for (const auto& [key, coef] : c_) {
            Op t = op_mul(op_pow(p, key.first), op_pow(q, key.second));
            acc = op_add(acc, op_scale(coef, t));
        }
        return acc;
    }

    std::string str() const;

private:
    std::map<Key, Scalar> c_;
};

} // namespace fdo
