#pragma once

// Exact rational utilities: Bernoulli numbers, binomials, factorials.
// Backed by GMP via gmpxx.

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmv {

using Rational = mpq_class;
using Integer = mpz_class;

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Bernoulli number B_n with B_1 = -1/2, computed by the Pascal-triangle
// recurrence sum_{k=0}^{n} C(n+1,k) B_k = 0 and cached.
inline const Rational& bernoulli(unsigned long n) {
    static std::vector<Rational> cache{Rational(1)};
    while (cache.size() <= n) {
        unsigned long m = cache.size();
        Rational s = 0;
        for (unsigned long k = 0; k < m; ++k)
            s += Rational(binomial(m + 1, k)) * cache[k];
        cache.push_back(-s / Rational(binomial(m + 1, m)));
    }
    return cache[n];
}

// zeta(2n) = r * pi^{2n} with r rational; returns r.
inline Rational zeta_even_rational(unsigned long n) {
    if (n == 0) throw std::domain_error("zeta_even_rational: n must be >= 1");
    // zeta(2n) = (-1)^{n+1} B_{2n} (2pi)^{2n} / (2 (2n)!)
    Rational r = bernoulli(2 * n) / Rational(2 * factorial(2 * n));
    if (n % 2 == 0) r = -r;
    Integer p4;
    mpz_ui_pow_ui(p4.get_mpz_t(), 4, n); // 2^{2n}
    return r * Rational(p4);
}

// zeta at non-positive integers: zeta(-m) = -B_{m+1}/(m+1), zeta(0) = -1/2.
inline Rational zeta_nonpositive_int(unsigned long m) {
    if (m == 0) return Rational(-1, 2); // B_1 = -1/2 convention breaks here
    return -bernoulli(m + 1) / Rational(m + 1);
}

inline Integer pow_int(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rational pow_q(const Rational& b, long e) {
    if (e >= 0) {
        Rational r;
        mpq_class bb(b);
        mpz_pow_ui(r.get_num().get_mpz_t(), bb.get_num().get_mpz_t(), e);
        mpz_pow_ui(r.get_den().get_mpz_t(), bb.get_den().get_mpz_t(), e);
        r.canonicalize();
        return r;
    }
    if (sgn(b) == 0) throw std::domain_error("pow_q: 0 to negative power");
    return pow_q(1 / b, -e);
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

} // namespace mmv
