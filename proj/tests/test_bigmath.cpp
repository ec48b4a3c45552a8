#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mmv/bigmath.hpp"

#include <mpfr.h>

using namespace mmv;

static double rel_err(const BigC& a, const BigC& b) {
    Mag d = (a - b).abs_upper();
    Mag s = b.abs_upper();
    if (d.is_zero()) return -1e300;
    return d.log2d() - s.log2d();
}

TEST_CASE("ball arithmetic basics") {
    set_default_prec(256);
    BigReal third = BigReal::from_mpq(Rational(1, 3));
    BigReal one = mul_si(third, 3);
    // the ball 3*(1/3) must contain 1
    BigReal diff = one - BigReal::from_long(1);
    CHECK(diff.contains_zero());
    CHECK(diff.abs_upper().log2d() < -250);

    BigReal x = BigReal::from_long(7);
    BigReal y = BigReal::from_long(3);
    BigReal q = x / y;
    BigReal back = q * y - x;
    CHECK(back.contains_zero());

    CHECK_THROWS_AS(x / (x - x), std::domain_error);
}

TEST_CASE("pi and exp/log consistency") {
    set_default_prec(384);
    BigReal p = BigReal::pi();
    // sin(pi) ~ 0
    CHECK(r_sin(p).contains_zero());
    BigReal e1 = r_exp(BigReal::from_long(1));
    BigReal l = r_log(e1);
    CHECK((l - BigReal::from_long(1)).contains_zero());
}

TEST_CASE("bernoulli numbers") {
    // first values are classical fixed points of the recurrence
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK(bernoulli(3) == 0);
    // oracle: von Staudt-Clausen, B_{2n} + sum_{(p-1)|2n} 1/p is an integer
    for (unsigned long n = 2; n <= 40; n += 2) {
        Rational s = bernoulli(n);
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L}) {
            if (n % (unsigned long)(p - 1) == 0) s += Rational(1, p);
        }
        CHECK(s.get_den() == 1);
    }
}

TEST_CASE("zeta even and odd") {
    set_default_prec(512);
    // zeta(2) = pi^2/6
    BigReal z2 = zeta_even(2);
    BigReal ref = r_pow_si(BigReal::pi(), 2) / BigReal::from_long(6);
    CHECK((z2 - ref).contains_zero());

    // oracle for Euler-Maclaurin zeta_odd: mpfr's correctly rounded zeta
    for (unsigned long n : {3ul, 5ul, 7ul, 9ul, 11ul, 15ul, 23ul}) {
        BigReal z = zeta_odd(n);
        BigReal m(512);
        mpfr_zeta_ui(m.v, n, MPFR_RNDN);
        m.rad = BigReal::ulp_of(m.v);
        BigReal d = z - m;
        CHECK(d.contains_zero());
        CHECK(d.abs_upper().log2d() < -480);
    }
}

TEST_CASE("two_pi_i_pow") {
    set_default_prec(256);
    BigC a = two_pi_i_pow(3);
    // (2 pi i)^3 = -8 pi^3 i
    BigReal ref = -mul_si(r_pow_si(BigReal::pi(), 3), 8);
    CHECK(a.re.contains_zero());
    CHECK((a.im - ref).contains_zero());
    BigC b = two_pi_i_pow(-2);
    BigC c = two_pi_i_pow(2);
    BigC prod = b * c - BigC::from_long(1);
    CHECK(prod.re.contains_zero());
    CHECK(prod.im.contains_zero());
}

TEST_CASE("incomplete gamma against elementary closed forms") {
    set_default_prec(320);
    // Gamma(1, x) = e^{-x}
    for (double xv : {0.5, 2.0, 6.2831853, 40.0}) {
        BigReal x = BigReal::from_string(std::to_string(xv));
        BigC g = gamma_upper(BigC::from_long(1), x);
        BigReal ref = r_exp(-x);
        CHECK(rel_err(g, BigC(ref, BigReal())) < -280);
    }
    // Gamma(n, x) = (n-1)! e^{-x} sum_{k<n} x^k/k!   [oracle: finite sum]
    for (long n : {2L, 5L, 12L, 24L}) {
        BigReal x = BigReal::from_mpq(Rational(13, 2));
        BigC g = gamma_upper(BigC::from_long(n), x);
        BigReal s(320);
        BigReal xp = BigReal::from_long(1);
        for (long k = 0; k < n; ++k) {
            s = s + mul_q(xp, Rational(1, factorial((unsigned long)k)));
            xp = xp * x;
        }
        BigReal ref = BigReal::from_mpz(factorial((unsigned long)(n - 1))) * r_exp(-x) * s;
        CHECK(rel_err(g, BigC(ref, BigReal())) < -280);
    }
    // recurrence residual Gamma(s+1,x) - s Gamma(s,x) - x^s e^{-x} = 0 at complex s
    BigC s = BigC(BigReal::from_mpq(Rational(7, 2)), BigReal::from_mpq(Rational(1, 3)));
    BigReal x = BigReal::from_mpq(Rational(9, 4));
    BigC lhs = gamma_upper(s + BigC::from_long(1), x);
    BigC xs = c_exp(BigC(s.re * r_log(x), s.im * r_log(x)));
    BigC rhs = s * gamma_upper(s, x) + xs * r_exp(-x);
    CHECK(rel_err(lhs, rhs) < -280);
}

TEST_CASE("complex gamma") {
    set_default_prec(320);
    // integer fast path
    BigC g5 = c_gamma(BigC::from_long(5));
    CHECK((g5.re - BigReal::from_long(24)).contains_zero());
    // half-integer: Gamma(1/2) = sqrt(pi), via real mpfr branch
    BigC gh = c_gamma(BigC::from_mpq(Rational(1, 2)));
    CHECK(rel_err(gh, BigC(r_sqrt(BigReal::pi()), BigReal())) < -300);
    // complex argument: verify the recurrence Gamma(s+1) = s Gamma(s)
    BigC s = BigC(BigReal::from_mpq(Rational(5, 3)), BigReal::from_mpq(Rational(3, 7)));
    BigC lhs = c_gamma(s + BigC::from_long(1));
    BigC rhs = s * c_gamma(s);
    CHECK(rel_err(lhs, rhs) < -290);
    // reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s)
    BigC ref = c_gamma(s) * c_gamma(BigC::from_long(1) - s);
    BigC ps = BigC(BigReal::pi() * s.re, BigReal::pi() * s.im);
    // sin(z) = (e^{iz} - e^{-iz}) / 2i
    BigC iz = ps.mul_i();
    BigC sinz = (c_exp(iz) - c_exp(-iz)) / BigC(BigReal(), mul_2exp(BigReal::from_long(1), 1));
    BigC rhs2 = BigC(BigReal::pi(), BigReal()) / sinz;
    CHECK(rel_err(ref, rhs2) < -290);
}
