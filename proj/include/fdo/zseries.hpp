#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdo/scalar.hpp"

namespace fdo {

// Floor sentinel: the series is an exactly known Laurent polynomial.
inline constexpr int kExactFloor = std::numeric_limits<int>::min();

// Truncated formal Laurent series in z^-1: finitely many terms with
// exponents bounded above, trusted down to floor(); exponents below floor()
// are unknown. floor() == kExactFloor means every exponent is known.
//
// An empty coefficient map is the certified-zero series (zero at every
// trusted exponent).
class ZSeries {
public:
    ZSeries() : floor_(kExactFloor) {}
    explicit ZSeries(int floor) : floor_(floor) {}

    // z^deg scaled; exact.
    static ZSeries monomial(int deg, const Scalar& coef = 1);
    static ZSeries constant(const Scalar& v) { return monomial(0, v); }
    static ZSeries one() { return monomial(0); }
    static ZSeries zero(int floor = kExactFloor) { return ZSeries(floor); }
    static ZSeries from_terms(std::vector<std::pair<int, Scalar>> terms, int floor = kExactFloor);

    int floor() const { return floor_; }
    bool exact() const { return floor_ == kExactFloor; }
    bool trusted(int deg) const { return exact() || deg >= floor_; }

    bool is_zero() const { return c_.empty(); }
    // Top exponent carrying a nonzero coefficient; nullopt for the zero series.
    std::optional<int> top() const;

    Scalar at(int deg) const;

    const std::map<int, Scalar>& terms() const { return c_; }

    // Raise the floor (forget data below it).
    ZSeries clipped(int floor) const;

    ZSeries operator-() const;
    friend ZSeries operator+(const ZSeries& a, const ZSeries& b);
    friend ZSeries operator-(const ZSeries& a, const ZSeries& b);
    friend ZSeries operator*(const ZSeries& a, const ZSeries& b);
    friend ZSeries operator*(const Scalar& s, const ZSeries& a);

    // Multiply by z^k.
    ZSeries shifted(int k) const;

    // Multiplicative inverse; requires a nonzero leading coefficient. For an
    // exact input a finite floor for the result must be supplied.
    ZSeries inverse(int result_floor = kExactFloor) const;

    // d/dz.
    ZSeries z_derivative() const;

    friend bool operator==(const ZSeries& a, const ZSeries& b);
    friend bool operator!=(const ZSeries& a, const ZSeries& b) { return !(a == b); }

    std::string str() const;

private:
    std::map<int, Scalar> c_; // exponent -> nonzero coefficient, all >= floor_
    int floor_;

    void put(int deg, const Scalar& v);
    void prune();
};

} // namespace fdo
