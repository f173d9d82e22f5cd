#ifndef INTDIFF_RATIONAL_HPP
#define INTDIFF_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace intdiff {

// Exact arbitrary-precision scalars over Q. mpq_class keeps values in
// lowest terms with a positive denominator once canonicalized, which is
// exactly the invariant we need; every constructor here canonicalizes.
using Rational = mpq_class;
using Integer = mpz_class;

// Raised when an operation is applied outside its mathematical domain
// (e.g. the index of a compact operator). The CLI maps it to exit code 1.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "-p" and "p/q" in base 10 (an explicit base also keeps
// leading zeros from being read as octal); throws DomainError on
// malformed input.
inline Rational rat_from_string(const std::string& s) {
    try {
        Rational r(s, 10);
        if (r.get_den() == 0) throw DomainError("rational with zero denominator: " + s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw DomainError("malformed rational literal: " + s);
    }
}

inline std::string rat_to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer factorial(unsigned long n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

// j!/i! as an exact rational.
inline Rational factorial_ratio(unsigned long j, unsigned long i) {
    return Rational(factorial(j)) / Rational(factorial(i));
}

inline long rat_ceil_long(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw DomainError("bound exceeds machine range");
    return q.get_si();
}

inline Rational rat_pow(const Rational& base, unsigned long e) {
    Rational r = 1;
    Rational b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

}  // namespace intdiff

#endif
