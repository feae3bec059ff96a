#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdo/fractional.hpp"
#include "fdo/ratpoly2.hpp"

namespace fdo {

struct RelOptions {
    int depth = 12; // expansion window for the fraction data
    int prec = 12;  // x-precision for dord witnesses
};

struct OrderBounds {
    int lo = 0;
    int hi = 0;
    int dord_p = 0;
    int dord_q = 0;
};

// -N(dord P + dord Q) <= ord F(P,Q) <= N(ord P + ord Q) for bidegree <= N.
OrderBounds order_bounds(const FracOp& p, const FracOp& q, int n, const RelOptions& opts = {});

struct BCReport {
    int n_used = 0;
    int span_dim = 0;
    int bound = 0; // linear growth bound the dimension must respect
    std::optional<RatPoly2> relation;
    std::vector<RatPoly2> relations; // every relation verified at this n
    std::string residual_window;
};

// Exact dimension of span{p^i q^j : 0 <= i,j <= n} over the fully-trusted
// cells, with the growth bound from the commutant argument. Elimination
// happens at the operator level; every pivot must have a certified-constant
// leading coefficient.
BCReport span_dim(const FracOp& p, const FracOp& q, int n, const RelOptions& opts = {});

// Smallest-bidegree algebraic relation F with F(p,q) certified zero, searched
// for n = 1..n_max; the returned polynomial is content-normalized with a
// positive leading coefficient.
RatPoly2 bc_relation(const FracOp& p, const FracOp& q, int n_max, const RelOptions& opts = {},
                     BCReport* report = nullptr);

} // namespace fdo
