#include "mmv/cohom.hpp"

namespace mmv {

std::vector<GenTok> word_decompose(const GammaElt& g) {
    std::vector<GenTok> w;
    Integer a = g.a, b = g.b, c = g.c, d = g.d;
    auto emit_T = [&](const Integer& n) {
        GenTok t = n > 0 ? GenTok::T : GenTok::Tinv;
        Integer k = abs(n);
        for (Integer i = 0; i < k; i++) w.push_back(t);
    };
    while (c != 0) {
        // Nearest-integer quotient keeps the entries shrinking.
        Integer q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(),
                    c.get_mpz_t());
        if (2 * r > abs(c)) {
            q += 1;
            r -= abs(c) * sgn(c);
        }
        emit_T(q);
        // Strip T^q from the left, then an S: g <- S^{-1} T^{-q} g.
        a -= q * c;
        b -= q * d;
        w.push_back(GenTok::S);
        // S^{-1} [[a,b],[c,d]] = [[c, d], [-a, -b]].
        std::swap(a, c);
        std::swap(b, d);
        c = -c;
        d = -d;
    }
    // Now g = +-T^n with n = a*b.
    emit_T(a * b);
    return w;
}

GammaElt word_eval(const std::vector<GenTok>& w) {
    GammaElt g;
    for (GenTok t : w) g = g * gen_matrix(t);
    return g;
}

Cochain1<Rational> zagier_e0(long weight) {
    if (weight < 4 || weight % 2 != 0)
        throw std::invalid_argument("zagier_e0: even weight >= 4 required");
    long d = weight - 2;  // homogeneous degree of the coefficients
    // c(x) = sum_{j>=1} B_{2j} x^{2j-1} / (2j)!; coefficient of x^m (m odd).
    auto cf = [](long m) -> Rational {
        return bernoulli(m + 1) / Rational(factorial(m + 1));
    };
    Rational scale = Rational(factorial(d)) / 2;

    Cochain1<Rational> e;
    // e0(S): degree-d part of c(X) c(Y).
    e.S = TensorPoly<Rational>({d});
    for (long i = 1; i < d; i += 2)
        e.S.add_term({i}, cf(i) * cf(d - i) * scale);
    // e0(T): degree-d part of (c(X+Y) - c(X))/Y  (the -1/12 only affects
    // degree 0).  c(X+Y) contributes binom(m, i) X^i Y^{m-i} per x^m term.
    e.T = TensorPoly<Rational>({d});
    for (long m = d + 1; m <= d + 1; m += 2) {
        // Only odd m with m - 1 >= degree contributions; terms of c(X+Y)/Y of
        // degree d come precisely from m = d + 1 (Y-exponent >= 1).
        Rational cm = cf(m);
        for (long i = 0; i < m; i++)  // Y-exponent m - i >= 1
            e.T.add_term({i}, cm * Rational(binomial(m, i)) * scale);
    }
    return e;
}

}  // namespace mmv
