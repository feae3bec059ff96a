#include "fdo/scalar.hpp"

#include <ostream>

namespace fdo {

Scalar Scalar::parse(const std::string& text) {
    mpq_class v;
    if (v.set_str(text, 10) != 0)
        raise(ErrorCode::ParseError, "bad rational literal '" + text + "'");
    v.canonicalize();
    return Scalar(std::move(v));
}

std::string Scalar::str() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.v_; }

Scalar binomial(long k, long j) {
    if (j < 0) return Scalar(0);
    mpz_class num = 1;
    for (long i = 0; i < j; ++i) num *= mpz_class(k - i);
    mpz_class den;
    mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(j));
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar factorial(long m) {
    if (m < 0) raise(ErrorCode::Internal, "factorial of negative integer");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    return Scalar(f);
}

} // namespace fdo
