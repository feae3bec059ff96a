#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fdo/cert.hpp"
#include "fdo/psdo.hpp"

namespace fdo {

// Right fraction num * den^-1 of differential operators, den monic.
// The expansion as a pseudodifferential operator is cached per depth behind
// an internal guard; observationally the class is immutable.
class FracOp {
public:
    FracOp() : FracOp(PsDO::identity(), PsDO::identity(), true) {}

    // Differential numerator and monic differential denominator. Operators
    // whose trusted negative cells are certified zero are accepted and
    // truncated to their differential part. Best-effort reduction by a right
    // GCD runs when every Euclidean pivot stays a unit.
    static FracOp make(const PsDO& num, const PsDO& den);
    // A differential operator as a fraction with denominator 1.
    static FracOp from_diff(const PsDO& p);

    const PsDO& num() const { return num_; }
    const PsDO& den() const { return den_; }
    bool reduced() const { return reduced_; }

    int num_order() const;
    int den_order() const;
    // order(num) - order(den).
    int order() const;

    // num * den^-1 at a window of `depth` orders below the top.
    const PsDO& expansion(int depth) const;

    std::string str() const;

    FracOp(const FracOp& o);
    FracOp& operator=(const FracOp& o);

private:
    FracOp(PsDO num, PsDO den, bool reduced)
        : num_(std::move(num)), den_(std::move(den)), reduced_(reduced) {}

    PsDO num_;
    PsDO den_;
    bool reduced_;

    mutable std::mutex mu_;
    mutable std::optional<std::pair<int, PsDO>> cache_;
};

// Right division a = q*b + r with ord(r) < ord(b); denominator monic
// (or unit-leading, which is divided out). Remainder may be certified
// rather than exactly zero.
struct DivRem {
    PsDO quot;
    PsDO rem;
};
DivRem right_divide(const PsDO& a, const PsDO& b);

// Nonzero differential r, l with q*r = p*l and ord(l) <= ord(q), found by
// exact linear algebra on the coefficient cells at x-precision prec.
std::pair<PsDO, PsDO> ore_solve(const PsDO& p, const PsDO& q, int prec);

struct DordResult {
    int dord = 0;
    PsDO witness; // monic differential of order dord with p*witness differential
};

// Minimal order of a monic right denominator certified at the window;
// breadth-first search in the order k, each step an exact linear solve.
DordResult dord(const FracOp& p, int depth, int prec, int k_max = -1);

// Differential l_left, l_right of order <= sum ord(Q_i) making every prefix
// product l_left*P1 Q1^-1...Pk Qk^-1 and every suffix product
// Pk Qk^-1...P1 Q1^-1*l_right differential.
struct CommonDenominators {
    PsDO left;
    PsDO right;
};
CommonDenominators common_denominators(const std::vector<std::pair<PsDO, PsDO>>& pairs, int prec);

struct DiffCert {
    Cert verdict = Cert::Unknown;
    std::optional<PsDO> quotient;   // on yes
    int witness_power = -1;         // on no: z^j whose image leaves L+
    std::optional<ZSeries> witness; // the offending series
};

// Three-valued differentiality test: certified-zero Euclidean remainder, or
// a trusted negative-degree term of some z^j * expansion as refutation.
DiffCert is_differential(const FracOp& p, int depth = 12);

// Certified commutation of the two expansions at a common window.
bool commute_at_window(const FracOp& p, const FracOp& q, int depth);

} // namespace fdo
