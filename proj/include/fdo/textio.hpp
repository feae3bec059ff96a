#pragma once

#include <string>
#include <string_view>

namespace fdo {

class Scalar;
class XSeries;
class ZSeries;
class PsDO;
class FracOp;
class RatPoly2;

// Canonical text forms used by the CLI:
//   Scalar   "p/q" or "p"
//   XSeries  "1 - 3/2*x + x^4 + O(x^6)"        O(x^p): first untrusted degree
//   ZSeries  "z^3 + 2 + 5*z^-1 + O(z^-8)"      O(z^e): first untrusted exponent
//   PsDO     "(1) * D^2 + (x^2) * D^-1 + O(D^-4)"  terms by descending order
//   FracOp   "frac( <psdo> ; <psdo> )"
//   RatPoly2 "w^2 - 4*z^3"
namespace textio {

std::string format(const Scalar& v);
std::string format(const XSeries& s);
std::string format(const ZSeries& s);
std::string format(const PsDO& p);
std::string format(const FracOp& f);
std::string format(const RatPoly2& f);

XSeries parse_xseries(std::string_view text);
ZSeries parse_zseries(std::string_view text);
PsDO parse_psdo(std::string_view text);
// Accepts both the frac(...) form and a bare operator (denominator 1).
FracOp parse_fracop(std::string_view text);
RatPoly2 parse_ratpoly2(std::string_view text);

} // namespace textio
} // namespace fdo
