#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "fdo/errors.hpp"

namespace fdo {

// Exact rational number. Always stored in lowest terms with positive
// denominator (gmp canonical form).
class Scalar {
public:
    Scalar() : v_(0) {}
    Scalar(long n) : v_(n) {} // NOLINT: implicit by design, literals are everywhere
    Scalar(long num, long den) : v_(num, den) {
        if (den == 0) raise(ErrorCode::DivisionByZero, "rational with zero denominator");
        v_.canonicalize();
    }
    explicit Scalar(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
    explicit Scalar(const mpz_class& z) : v_(z) {}

    static Scalar parse(const std::string& text);

    const mpq_class& value() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Scalar inverse() const {
        if (is_zero()) raise(ErrorCode::DivisionByZero, "inverse of zero");
        return Scalar(mpq_class(1 / v_));
    }

    Scalar operator-() const { return Scalar(mpq_class(-v_)); }
    Scalar& operator+=(const Scalar& o) { v_ += o.v_; return *this; }
    Scalar& operator-=(const Scalar& o) { v_ -= o.v_; return *this; }
    Scalar& operator*=(const Scalar& o) { v_ *= o.v_; return *this; }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) raise(ErrorCode::DivisionByZero, "division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return a.v_ != b.v_; }
    friend bool operator<(const Scalar& a, const Scalar& b) { return a.v_ < b.v_; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return a.v_ > b.v_; }

    // "p/q" when q != 1, "p" otherwise.
    std::string str() const;

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

private:
    mpq_class v_;
};

// Generalized binomial coefficient C(k, j) for integer k (possibly negative)
// and j >= 0; always an integer.
Scalar binomial(long k, long j);

Scalar factorial(long m);

} // namespace fdo
