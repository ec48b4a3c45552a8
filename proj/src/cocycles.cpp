#include "mmv/cocycles.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmv {

namespace {

// ---------------------------------------------------------------------------
// Polynomials in commuting variables z_1..z_n over the rationals, keyed by
// exponent vectors.  Used for the closed generating series of the T-value.
// ---------------------------------------------------------------------------

using ZPoly = std::map<std::vector<long>, Rational>;

long ztotal(const std::vector<long>& e) {
    long s = 0;
    for (long x : e) s += x;
    return s;
}

void zp_add(ZPoly& a, const std::vector<long>& e, const Rational& c) {
    auto it = a.find(e);
    if (it == a.end()) {
        if (c != 0) a.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) a.erase(it);
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b, long cap) {
    ZPoly r;
    for (auto& [ea, ca] : a)
        for (auto& [eb, cb] : b) {
            std::vector<long> e(ea.size());
            for (size_t i = 0; i < e.size(); i++) e[i] = ea[i] + eb[i];
            if (ztotal(e) > cap) continue;
            zp_add(r, e, ca * cb);
        }
    return r;
}

// z_p + z_{p+1} + ... + z_q (1-based slots).
ZPoly zp_linform(int p, int q, int n) {
    ZPoly r;
    for (int j = p; j <= q; j++) {
        std::vector<long> e(n, 0);
        e[j - 1] = 1;
        r.emplace(std::move(e), Rational(1));
    }
    return r;
}

// exp(z_1 + ... + z_i) truncated at total degree cap.
ZPoly zp_exp_prefix(int i, int n, long cap) {
    ZPoly r{{std::vector<long>(n, 0), Rational(1)}};
    if (i == 0) return r;
    ZPoly lin = zp_linform(1, i, n);
    ZPoly pw = r;
    for (long d = 1; d <= cap; d++) {
        pw = zp_mul(pw, lin, cap);
        for (auto& [e, c] : pw)
            zp_add(r, e, c / Rational(factorial((unsigned long)d)));
        if (pw.empty()) break;
    }
    return r;
}

// Exact division of a by the linear form z_p + ... + z_q: synthetic division
// in z_p, one homogeneous component at a time.  Throws if not exact.
ZPoly zp_divide_linear(const ZPoly& a, int p, int q, int n) {
    std::map<long, ZPoly> comp;
    for (auto& [e, c] : a) comp[ztotal(e)][e] = c;
    ZPoly rest = (q > p) ? zp_linform(p + 1, q, n) : ZPoly{};
    ZPoly out;
    for (auto& [d, hp] : comp) {
        // Split the component by the exponent of z_p (exponent zeroed out in
        // the stored keys).
        std::map<long, ZPoly> ck;
        long kmax = 0;
        for (auto& [e, c] : hp) {
            std::vector<long> e2 = e;
            long k = e2[p - 1];
            e2[p - 1] = 0;
            ck[k].emplace(std::move(e2), c);
            kmax = std::max(kmax, k);
        }
        if (kmax == 0) {
            if (!hp.empty())
                throw std::runtime_error("zp_divide_linear: not divisible");
            continue;
        }
        // q_{K-1} = c_K; q_{k-1} = c_k - rest * q_k; remainder c_0 - rest*q_0.
        ZPoly qk = ck.count(kmax) ? ck[kmax] : ZPoly{};
        for (long k = kmax - 1; k >= 0; k--) {
            // Emit quotient term q_k * z_p^k  (qk currently holds q_k).
            for (auto& [e, c] : qk) {
                std::vector<long> e2 = e;
                e2[p - 1] += k;
                zp_add(out, e2, c);
            }
            ZPoly nextq = ck.count(k) ? ck[k] : ZPoly{};
            ZPoly rq = rest.empty() ? ZPoly{} : zp_mul(qk, rest, d);
            for (auto& [e, c] : rq) zp_add(nextq, e, -c);
            qk = std::move(nextq);
        }
        if (!qk.empty())
            throw std::runtime_error("zp_divide_linear: not divisible");
    }
    return out;
}

Rational cX(const TensorPoly<Rational>& p) {
    if (p.arity != 1) throw std::invalid_argument("cX: arity-1 input required");
    auto it = p.coef.find({p.degree[0]});
    return (it == p.coef.end()) ? Rational(0) : it->second;
}

void check_eis_word(const Word& w) {
    for (auto& f : w)
        if (f.kind != FormKind::eisenstein)
            throw std::invalid_argument(
                "normalized alphabet: Eisenstein letters only");
}

}  // namespace

NCSeries<BigC> canonical_C_S(const std::vector<FormLabel>& alphabet,
                             const IntParams& par) {
    NCSeries<BigC> a = iter_integral_to_cusp(alphabet, par);
    return nc_inverse(nc_act(a, GammaElt::S())) * a;
}

NCSeries<Rational> canonical_C_T_exact(const std::vector<FormLabel>& alphabet,
                                       int L) {
    return i_infinity_exact(Rational(-1), Rational(0), alphabet, L);
}

NCSeries<BigC> canonical_C_T(const std::vector<FormLabel>& alphabet, int L,
                             long prec) {
    NCSeries<Rational> e = canonical_C_T_exact(alphabet, L);
    NCSeries<BigC> r(L);
    for (auto& [w, p] : e.c) {
        BigC pre = two_pi_i_pow(word_prefactor_exp(w), prec);
        TensorPoly<BigC> q(p.degree);
        for (auto& [xe, c] : p.coef) q.add_term(xe, mul_q(pre, c));
        r.set(w, q);
    }
    return r;
}

TensorPoly<Rational> kappa(const Word& w) {
    std::vector<long> degs;
    for (auto& f : w) degs.push_back(f.weight - 2);
    for (auto& f : w)
        if (f.kind != FormKind::eisenstein) return TensorPoly<Rational>(degs);
    std::vector<FormLabel> alpha(w.begin(), w.end());
    std::sort(alpha.begin(), alpha.end());
    alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
    NCSeries<Rational> ct = canonical_C_T_exact(alpha, (int)w.size());
    TensorPoly<Rational> p = ct.coeff(w);
    if (p.arity == 0 && !w.empty()) return TensorPoly<Rational>(degs);
    return p;
}

TensorPoly<Rational> kappa_e_closed(long weight) {
    long k = weight / 2;
    Rational c = bernoulli(weight) / Rational(4 * k * (2 * k - 1));
    TensorPoly<Rational> p({weight - 2});
    for (long j = 0; j <= weight - 2; j++)
        p.add_term({j}, c * Rational(binomial(weight - 1, j)));
    return p;
}

Rational tilde_factor(const FormLabel& f) {
    if (f.kind != FormKind::eisenstein)
        throw std::invalid_argument("tilde_factor: Eisenstein letters only");
    long k = f.weight / 2;
    return Rational(-4 * k) /
           (bernoulli(f.weight) * Rational(factorial(f.weight - 2)));
}

TensorPoly<Rational> c_T_tilde(const Word& w) {
    check_eis_word(w);
    TensorPoly<Rational> p = kappa(w);
    Rational f(1);
    for (auto& l : w) f *= tilde_factor(l);
    TensorPoly<Rational> r(p.degree);
    for (auto& [e, c] : p.coef) r.add_term(e, c * f);
    return r;
}

TensorPoly<Rational> c_T_tilde_closed(const Word& w) {
    check_eis_word(w);
    int n = (int)w.size();
    if (n == 0) return tensor_one<Rational>();
    std::vector<long> a;
    for (auto& f : w) a.push_back(f.weight - 2);
    long A = ztotal(a);
    long TD = (long)n * (n + 1) / 2;
    long cap = A + TD;

    // Numerator: sum over i of the term times all linear forms not in its
    // denominator.
    ZPoly num;
    for (int i = 0; i <= n; i++) {
        std::set<std::pair<int, int>> denom;
        for (int p = 1; p <= i; p++) denom.insert({p, i});
        for (int q = i + 1; q <= n; q++) denom.insert({i + 1, q});
        ZPoly term = zp_exp_prefix(i, n, cap);
        if ((n - i) % 2) {
            for (auto& [e, c] : term) c = -c;
        }
        for (int p = 1; p <= n; p++)
            for (int q = p; q <= n; q++)
                if (!denom.count({p, q}))
                    term = zp_mul(term, zp_linform(p, q, n), cap);
        for (auto& [e, c] : term) zp_add(num, e, c);
    }

    // Divide out the full product of linear forms.
    long remaining = TD;
    for (int p = 1; p <= n; p++)
        for (int q = p; q <= n; q++) {
            remaining--;
            ZPoly pruned;
            for (auto& [e, c] : num)
                if (ztotal(e) <= A + remaining + 1) pruned.emplace(e, c);
            num = zp_divide_linear(pruned, p, q, n);
        }

    // Substitute z_j = s_j Y_j and pair with the exponential in the X_j.
    TensorPoly<Rational> r(a);
    for (auto& [e, c] : num) {
        bool ok = true;
        for (int j = 0; j < n; j++)
            if (e[j] > a[j]) ok = false;
        if (!ok) continue;
        std::vector<long> xe(n);
        Rational cc = c;
        for (int j = 0; j < n; j++) {
            xe[j] = a[j] - e[j];
            cc /= Rational(factorial((unsigned long)xe[j]));
        }
        r.add_term(xe, cc);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Trivialiser
// ---------------------------------------------------------------------------

namespace {

// Laurent coefficient of one word: expansion of
//   1 / prod_{i=1}^n (z_i + ... + z_n),  z_j = s_j Y_j,
// in the sector s_1 << ... << s_n: every factor is divided by its dominant
// term z_n and expanded geometrically, so negative exponents land on slot n
// only.  Keys are the s-exponent vectors; X-contributions are appended last.
TensorPoly<Rational> v_word_coeff(const std::vector<long>& a) {
    int n = (int)a.size();
    long mlim = 0;
    for (int j = 0; j + 1 < n; j++) mlim += a[j];
    ZPoly acc{{std::vector<long>(n, 0), Rational(1)}};
    for (int i = 1; i <= n; i++) {
        // Factor i: sum_m (-1)^m z_n^{-m-1} (z_i + ... + z_{n-1})^m.
        ZPoly fac;
        ZPoly pw{{std::vector<long>(n, 0), Rational(1)}};
        ZPoly lin = (i <= n - 1) ? zp_linform(i, n - 1, n) : ZPoly{};
        for (long m = 0; m <= ((i <= n - 1) ? mlim : 0); m++) {
            for (auto& [e, c] : pw) {
                std::vector<long> e2 = e;
                e2[n - 1] -= m + 1;
                zp_add(fac, e2, (m % 2) ? -c : c);
            }
            if (lin.empty()) break;
            pw = zp_mul(pw, lin, mlim);
        }
        // Multiply into the accumulator, pruning exponents past the target.
        ZPoly next;
        for (auto& [ea, ca] : acc)
            for (auto& [eb, cb] : fac) {
                std::vector<long> e(n);
                bool ok = true;
                for (int j = 0; j < n; j++) {
                    e[j] = ea[j] + eb[j];
                    if (j + 1 < n && e[j] > a[j]) ok = false;
                }
                if (ok) zp_add(next, e, ca * cb);
            }
        acc = std::move(next);
    }
    TensorPoly<Rational> r(a);
    for (auto& [e, c] : acc) {
        bool ok = true;
        for (int j = 0; j < n; j++)
            if (e[j] > a[j]) ok = false;
        if (!ok) continue;
        std::vector<long> xe(n);
        Rational cc = c;
        for (int j = 0; j < n; j++) {
            xe[j] = a[j] - e[j];
            cc /= Rational(factorial((unsigned long)xe[j]));
        }
        r.add_term(xe, cc);
    }
    return r;
}

}  // namespace

NCSeries<Rational> trivialiser_V(const std::vector<FormLabel>& alphabet,
                                 int L) {
    std::vector<FormLabel> eis;
    for (auto& f : alphabet)
        if (f.kind == FormKind::eisenstein) eis.push_back(f);
    NCSeries<Rational> r = NCSeries<Rational>::one(L);
    for (auto& w : words_up_to(eis, L)) {
        std::vector<long> a;
        for (auto& f : w) a.push_back(f.weight - 2);
        r.set(w, v_word_coeff(a));
    }
    return r;
}

TensorPoly<Rational> act_T_laurent(const TensorPoly<Rational>& p) {
    TensorPoly<Rational> r(p.degree);
    for (auto& [e, c] : p.coef) {
        // Expand prod_j (X_j + Y_j)^{e_j} over the slots.
        std::vector<std::pair<std::vector<long>, Rational>> terms{
            {std::vector<long>(), c}};
        for (int j = 0; j < p.arity; j++) {
            if (e[j] < 0)
                throw std::invalid_argument(
                    "act_T_laurent: negative X exponent");
            std::vector<std::pair<std::vector<long>, Rational>> next;
            for (auto& [xe, cc] : terms)
                for (long t = 0; t <= e[j]; t++) {
                    std::vector<long> xe2 = xe;
                    xe2.push_back(t);
                    next.emplace_back(std::move(xe2),
                                      cc * Rational(binomial(e[j], t)));
                }
            terms = std::move(next);
        }
        for (auto& [xe, cc] : terms) r.add_term(xe, cc);
    }
    return r;
}

NCSeries<Rational> nc_act_T(const NCSeries<Rational>& a) {
    NCSeries<Rational> r(a.L);
    for (auto& [w, p] : a.c) r.set(w, act_T_laurent(p));
    return r;
}

// ---------------------------------------------------------------------------
// Length-two mixing coefficients
// ---------------------------------------------------------------------------

std::map<long, LinExpr> solve_lambda(long m, long n) {
    if (m < 2 || n < 2)
        throw std::invalid_argument("solve_lambda: weights below 4");
    TensorPoly<Rational> km = kappa({FormLabel::E(2 * m)});
    TensorPoly<Rational> kn = kappa({FormLabel::E(2 * n)});
    TensorPoly<Rational> ym = TensorPoly<Rational>::xy(2 * m - 2, 0, 1);
    TensorPoly<Rational> yn = TensorPoly<Rational>::xy(2 * n - 2, 0, 1);
    std::map<long, LinExpr> out;
    long rmax = std::min(2 * m - 2, 2 * n - 2);
    for (long r = 0; r <= rmax; r++) {
        long K = m + n - r - 1;
        if (K < 2) continue;
        LinExpr numer =
            LinExpr::symbol(2 * n) * cX(partial_k(tensor(km, yn), r)) -
            LinExpr::symbol(2 * m) * cX(partial_k(tensor(ym, kn), r));
        if (ring_is_zero(numer)) continue;
        // The projection onto the lowest slice is normalized by the square
        // of r! (the same normalization that turns d^k into the invariant
        // pairing) and carries the global orientation sign.
        Rational rfac = Rational(factorial(r));
        Rational div = Rational(lambda_proj_sign) * rfac * rfac *
                       cX(kappa({FormLabel::E(2 * K)}));
        out.emplace(K, numer * LinExpr(1 / div));
    }
    return out;
}

LinExpr lambda_closed(long m, long n, long K) {
    if (!(m < n && K == n - m + 1)) return LinExpr();
    Rational c = Rational(n - m + 1) / Rational(n) *
                 Rational(binomial(2 * n - 2, 2 * n - 2 * m)) *
                 bernoulli(2 * n) / bernoulli(2 * n - 2 * m + 2);
    return LinExpr::symbol(2 * m) * LinExpr(c);
}

}  // namespace mmv
