#include "mmv/lvalues.hpp"

#include <cmath>
#include <stdexcept>

namespace mmv {

namespace {

// x^s for a positive real ball x and complex s.
BigC rpow(const BigReal& x, const BigC& s) {
    BigReal lx = r_log(x);
    return c_exp(BigC(s.re * lx, s.im * lx));
}

// Conservative log2 of the series tail past n = N, using
// |a_n| <= d(n) n^{(2k-1)/2} <= 2 n^k and, for x >= 2(sigma-1),
// |Gamma(s,x)| <= 2 x^{sigma-1} e^{-x}: each of the two summand pieces is
// then at most 2 (2 pi n)^{-1} e^{-2 pi n}, so term_n <= (4/pi) n^{k-1} e^{-2 pi n},
// summed geometrically from n = N+1.
double tail_log2(long k, double sigma, long N) {
    const double twopi = 2.0 * 3.14159265358979312;
    const double M = (double)(N + 1);
    double need = 2.0 * std::max({sigma - 1.0, 2.0 * k - sigma - 1.0, 0.5});
    if (twopi * M < need)
        throw std::runtime_error("lambda_cusp: N too small for this s");
    double ratio = std::exp((double)(k - 1) / M) * std::exp(-twopi);
    if (ratio >= 0.5)
        throw std::runtime_error("lambda_cusp: tail does not contract");
    return std::log2(4.0 / 3.14) + (double)(k - 1) * std::log2(M) -
           twopi * M / std::log(2.0) - std::log2(1.0 - ratio) + 1.0;
}

} // namespace

BigC lambda_cusp(const FormLabel& f, const BigC& s, long N, long prec) {
    if (prec <= 0) prec = default_prec();
    if (N <= 0) N = 64;
    if (f.kind != FormKind::cusp_eigenform)
        throw std::invalid_argument("lambda_cusp: need a cusp eigenform");
    const long k = f.weight / 2;
    const int ksign = (k % 2 == 0) ? 1 : -1;

    double sigma = s.re.to_double();
    double lg2 = tail_log2(k, sigma, N);
    if (lg2 > -(double)prec + 16)
        throw std::runtime_error(
            "lambda_cusp: tail bound exceeds target precision; increase N");

    QSeries q = form_q(f, N);
    BigReal twopi = mul_2exp(BigReal::pi(prec), 1);
    BigC s2 = BigC::from_long(2 * k, prec) - s;
    BigC acc(prec);
    for (long n = 1; n <= N; ++n) {
        BigReal x = mul_si(twopi, n);
        BigC t = rpow(x, -s) * gamma_upper(s, x) +
                 mul_si(rpow(x, -s2) * gamma_upper(s2, x), ksign);
        acc += mul_q(t, q.a[(size_t)n]);
    }
    add_error(acc, Mag::pow2((long)std::ceil(lg2) + 1));
    return acc;
}

BigC lambda_eisenstein(long weight, const Rational& s, long prec) {
    if (prec <= 0) prec = default_prec();
    if (weight < 4 || weight % 2 != 0)
        throw std::invalid_argument("lambda_eisenstein: need even weight >= 4");
    if (s == 1) throw std::domain_error("lambda_eisenstein: zeta(s) pole at s = 1");
    if (s == weight)
        throw std::domain_error("lambda_eisenstein: zeta(s-2k+1) pole at s = 2k");
    if (sgn(s) <= 0)
        throw std::domain_error(
            "lambda_eisenstein: need s > 0 (Gamma factor); use the "
            "functional equation");
    BigReal x = BigReal::from_mpq(s, prec);
    BigReal pref = r_exp(mul_q(r_log(mul_2exp(BigReal::pi(prec), 1)), -s));
    BigReal val =
        pref * r_gamma(x) * zeta_rational(s, prec) *
        zeta_rational(s - (weight - 1), prec);
    return BigC(val, BigReal(prec));
}

TensorPoly<BigC> critical_period_polynomial(const FormLabel& f, long prec) {
    if (prec <= 0) prec = default_prec();
    const long k = f.weight / 2;
    const long N = std::max<long>(64, prec / 9 + 8);
    const int ksign = (k % 2 == 0) ? 1 : -1;

    // Lambda(f,r) for r = 1..2k-1; the series realizes the functional
    // equation Lambda(f,2k-r) = (-1)^k Lambda(f,r) term by term, so only
    // half the values need computing.
    std::vector<BigC> lam((size_t)(2 * k), BigC(prec));
    for (long r = 1; r <= k; ++r) {
        lam[(size_t)r] = lambda_cusp(f, BigC::from_long(r, prec), N, prec);
        if (r != 2 * k - r) lam[(size_t)(2 * k - r)] = mul_si(lam[(size_t)r], ksign);
    }

    // Value on S of the abelianized cocycle: (2 pi i)^{2k-1} times the
    // integral of f (X - tau Y)^{2k-2} d tau up the imaginary axis; the
    // substitution tau = i y contributes the leading factor i.
    BigC lead = two_pi_i_pow(2 * k - 1, prec).mul_i();
    TensorPoly<BigC> out({2 * k - 2});
    for (long r = 1; r <= 2 * k - 1; ++r) {
        BigC c = mul_q(lead * lam[(size_t)r], Rational(binomial(2 * k - 2, r - 1)));
        switch ((r - 1) % 4) { // times (-i)^{r-1}
            case 0: break;
            case 1: c = -c.mul_i(); break;
            case 2: c = -c; break;
            case 3: c = c.mul_i(); break;
        }
        out.add_term({2 * k - 1 - r}, c);
    }
    return out;
}

} // namespace mmv
