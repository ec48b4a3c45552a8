#pragma once

// Ball arithmetic over MPFR: real and complex midpoint-radius intervals.
// The radius type Mag is a conservative (mantissa, exponent) upper bound,
// in the spirit of Arb's mag_t; every midpoint operation rounds to nearest
// and inflates the radius by an ulp bound plus propagated input radii.

#include "mmv/rational.hpp"

#include <mpfr.h>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace mmv {

long default_prec();
void set_default_prec(long prec);

// ---------------------------------------------------------------------------
// Mag: non-negative magnitude m * 2^e with m in [1,2), or zero.
// All operations round up (conservatively).
// ---------------------------------------------------------------------------
struct Mag {
    double m = 0.0; // mantissa in [1,2), or 0
    long e = 0;     // binary exponent

    Mag() = default;
    Mag(double mm, long ee) : m(mm), e(ee) {}
    bool is_zero() const { return m == 0.0; }

    static Mag zero() { return Mag{}; }

    static Mag from_parts(double mant, long ex) {
        Mag r;
        if (mant <= 0.0) return r;
        int k;
        double f = std::frexp(mant, &k); // f in [0.5,1)
        r.m = 2.0 * f * (1.0 + 1e-13);   // round mantissa up a hair
        r.e = ex + k - 1;
        if (r.m >= 2.0) { r.m /= 2.0; r.e += 1; }
        return r;
    }

    static Mag from_double(double d) { return from_parts(std::fabs(d), 0); }
    static Mag pow2(long ex) { return Mag{1.0, ex}; }

    // Upper bound for |x|.
    static Mag upper_abs(const mpfr_t x) {
        if (mpfr_zero_p(x)) return zero();
        long ex;
        double d = mpfr_get_d_2exp(&ex, x, MPFR_RNDA);
        return from_parts(std::fabs(d) * (1.0 + 1e-13), ex);
    }

    Mag operator+(const Mag& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        const Mag *a = this, *b = &o;
        if (a->e < b->e) std::swap(a, b);
        long de = a->e - b->e;
        double add = (de > 200) ? 0.0 : std::ldexp(b->m, -(int)de);
        return from_parts(a->m + add + 1e-12, a->e);
    }
    Mag& operator+=(const Mag& o) { *this = *this + o; return *this; }

    Mag operator*(const Mag& o) const {
        if (is_zero() || o.is_zero()) return zero();
        return from_parts(m * o.m * (1.0 + 1e-13), e + o.e);
    }

    Mag mul_2exp(long k) const {
        if (is_zero()) return zero();
        return Mag{m, e + k};
    }

    static Mag max(const Mag& a, const Mag& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.e != b.e) return a.e > b.e ? a : b;
        return a.m >= b.m ? a : b;
    }

    // log2 of the bound; -infinity for zero.
    double log2d() const {
        if (is_zero()) return -1e300;
        return std::log2(m) + (double)e;
    }

    double to_double() const {
        if (is_zero()) return 0.0;
        if (e > 1000) return 1e300;
        if (e < -1060) return 0.0;
        return std::ldexp(m, (int)e);
    }
};

// ---------------------------------------------------------------------------
// BigReal: mpfr midpoint + Mag radius.
// ---------------------------------------------------------------------------
class BigReal {
  public:
    mpfr_t v;
    Mag rad;

    explicit BigReal(long prec = 0) {
        mpfr_init2(v, prec > 0 ? prec : default_prec());
        mpfr_set_zero(v, 1);
    }
    BigReal(const BigReal& o) {
        mpfr_init2(v, mpfr_get_prec(o.v));
        mpfr_set(v, o.v, MPFR_RNDN);
        rad = o.rad;
    }
    BigReal(BigReal&& o) noexcept {
        mpfr_init2(v, 64);
        mpfr_swap(v, o.v);
        rad = o.rad;
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v, mpfr_get_prec(o.v));
            mpfr_set(v, o.v, MPFR_RNDN);
            rad = o.rad;
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        if (this != &o) { mpfr_swap(v, o.v); rad = o.rad; }
        return *this;
    }
    ~BigReal() { mpfr_clear(v); }

    long prec() const { return mpfr_get_prec(v); }

    static BigReal from_long(long n, long prec = 0) {
        BigReal r(prec);
        mpfr_set_si(r.v, n, MPFR_RNDN);
        return r;
    }
    static BigReal from_mpq(const Rational& q, long prec = 0) {
        BigReal r(prec);
        int t = mpfr_set_q(r.v, q.get_mpq_t(), MPFR_RNDN);
        if (t != 0) r.rad = ulp_of(r.v);
        return r;
    }
    static BigReal from_mpz(const Integer& z, long prec = 0) {
        BigReal r(prec);
        int t = mpfr_set_z(r.v, z.get_mpz_t(), MPFR_RNDN);
        if (t != 0) r.rad = ulp_of(r.v);
        return r;
    }
    static BigReal from_double(double d, long prec = 0) {
        BigReal r(prec);
        mpfr_set_d(r.v, d, MPFR_RNDN);
        return r;
    }
    static BigReal from_string(const std::string& s, long prec = 0) {
        BigReal r(prec);
        if (mpfr_set_str(r.v, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("BigReal: cannot parse '" + s + "'");
        r.rad = ulp_of(r.v); // decimal strings are treated as inexact
        return r;
    }
    static BigReal with_prec(const BigReal& a, long prec) {
        BigReal r(prec);
        int t = mpfr_set(r.v, a.v, MPFR_RNDN);
        r.rad = a.rad;
        if (t != 0) r.rad += ulp_of(r.v);
        return r;
    }
    static BigReal pi(long prec = 0) {
        BigReal r(prec);
        mpfr_const_pi(r.v, MPFR_RNDN);
        r.rad = ulp_of(r.v);
        return r;
    }

    // Half-ulp style rounding bound: |x| * 2^{1-prec}.
    static Mag ulp_of(const mpfr_t x) {
        if (mpfr_zero_p(x)) return Mag::zero();
        return Mag::upper_abs(x).mul_2exp(1 - (long)mpfr_get_prec(x));
    }

    Mag abs_upper() const { return Mag::upper_abs(v) + rad; }

    // Conservative lower bound on |x| over the ball; zero mag if it may
    // contain zero.
    Mag abs_lower() const {
        if (mpfr_zero_p(v)) return Mag::zero();
        long ex;
        double d = std::fabs(mpfr_get_d_2exp(&ex, v, MPFR_RNDZ)) * (1.0 - 1e-13);
        // subtract radius in the 2^ex frame
        double rr = rad.is_zero() ? 0.0
                    : (rad.e - ex > 100 ? 1e300 : std::ldexp(rad.m, (int)(rad.e - ex)));
        double low = d - rr * (1.0 + 1e-13);
        if (low <= 0.0) return Mag::zero();
        Mag r = Mag::from_parts(low * (1.0 - 2e-13), ex);
        // from_parts rounds up; compensate by one more epsilon down
        r.m *= (1.0 - 4e-13);
        if (r.m < 1.0) { r.m *= 2.0; r.e -= 1; }
        return r;
    }

    bool contains_zero() const { return abs_lower().is_zero(); }
    bool is_exact() const { return rad.is_zero(); }
    double to_double() const { return mpfr_get_d(v, MPFR_RNDN); }

    std::string to_string(size_t digits = 0) const;
};

long working_prec(const BigReal& a, const BigReal& b);

BigReal operator+(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a, const BigReal& b);
BigReal operator*(const BigReal& a, const BigReal& b);
BigReal operator/(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a);
inline BigReal& operator+=(BigReal& a, const BigReal& b) {
    a = a + b;
    return a;
}
inline BigReal& operator-=(BigReal& a, const BigReal& b) {
    a = a - b;
    return a;
}
BigReal mul_q(const BigReal& a, const Rational& q);
BigReal mul_si(const BigReal& a, long n);
BigReal mul_2exp(const BigReal& a, long k);
BigReal r_abs(const BigReal& a);
BigReal r_exp(const BigReal& a);
BigReal r_log(const BigReal& a);  // requires strictly positive ball
BigReal r_sin(const BigReal& a);
BigReal r_cos(const BigReal& a);
BigReal r_sqrt(const BigReal& a); // requires non-negative ball
BigReal r_pow_si(const BigReal& a, long n);
BigReal r_gamma(const BigReal& a); // requires positive ball
void add_error(BigReal& a, const Mag& m);

// ---------------------------------------------------------------------------
// BigC: complex ball as a pair of real balls.
// ---------------------------------------------------------------------------
struct BigC {
    BigReal re, im;

    explicit BigC(long prec = 0) : re(prec), im(prec) {}
    BigC(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}

    static BigC from_long(long n, long prec = 0) {
        return BigC(BigReal::from_long(n, prec), BigReal(prec));
    }
    static BigC from_mpq(const Rational& q, long prec = 0) {
        return BigC(BigReal::from_mpq(q, prec), BigReal(prec));
    }
    static BigC i_unit(long prec = 0) {
        return BigC(BigReal(prec), BigReal::from_long(1, prec));
    }

    long prec() const { return re.prec(); }
    Mag abs_upper() const { return re.abs_upper() + im.abs_upper(); }
    Mag rad() const { return Mag::max(re.rad, im.rad); }
    bool contains_zero_ball() const {
        // crude: both components' balls contain zero
        return re.contains_zero() && im.contains_zero();
    }
    BigC conj() const { return BigC(re, -im); }
    // multiply by i
    BigC mul_i() const { return BigC(-im, re); }
    double abs_double() const {
        return std::hypot(re.to_double(), im.to_double());
    }
    std::string to_string(size_t digits = 0) const {
        return re.to_string(digits) + (im.to_double() < 0 ? " - " : " + ") +
               r_abs(im).to_string(digits) + "*I";
    }
};

BigC operator+(const BigC& a, const BigC& b);
BigC operator-(const BigC& a, const BigC& b);
BigC operator*(const BigC& a, const BigC& b);
BigC operator/(const BigC& a, const BigC& b);
BigC operator-(const BigC& a);
BigC operator*(const BigC& a, const BigReal& b);
inline BigC& operator+=(BigC& a, const BigC& b) {
    a = a + b;
    return a;
}
inline BigC& operator-=(BigC& a, const BigC& b) {
    a = a - b;
    return a;
}
BigC mul_q(const BigC& a, const Rational& q);
BigC mul_si(const BigC& a, long n);
BigC c_exp(const BigC& a);
BigC c_pow_si(const BigC& a, long n);
void add_error(BigC& a, const Mag& m);

// (2 pi i)^n for n in Z (negative allowed).
BigC two_pi_i_pow(long n, long prec = 0);

// ---------------------------------------------------------------------------
// Special functions.
// ---------------------------------------------------------------------------

// zeta(2n) as a real ball.
BigReal zeta_even(unsigned long n2, long prec = 0); // argument is 2n itself

// zeta(n) for odd n >= 3 by Euler-Maclaurin with a rigorous tail bound.
BigReal zeta_odd(unsigned long n, long prec = 0);

// zeta(s) at an exact rational s != 1 (any real s, including negatives) by
// Euler-Maclaurin with the cutoff chosen so the remainder bound applies.
BigReal zeta_rational(const Rational& s, long prec = 0);

// Upper incomplete gamma Gamma(s, x) for complex s and real x > 0.
// Uses the recurrence Gamma(s+1,x) = s Gamma(s,x) + x^s e^{-x} to shift
// Re(s) below x, then the Legendre continued fraction (modified Lentz).
BigC gamma_upper(const BigC& s, const BigReal& x);

// Gamma(s) for complex s not a non-positive integer; used for completed
// L-values of Eisenstein series.  Shift-and-reflect on top of mpfr for the
// real case, Lanczos-free Stirling with argument shifting for complex s.
BigC c_gamma(const BigC& s);

} // namespace mmv
