#include "mmv/eichler.hpp"

#include <algorithm>
#include <cmath>

namespace mmv {

std::string word_str(const Word& w) {
    std::string s = "(";
    for (size_t i = 0; i < w.size(); i++) {
        if (i) s += ",";
        s += w[i].str();
    }
    return s + ")";
}

long word_prefactor_exp(const Word& w) {
    long e = 0;
    for (auto& f : w) e += f.weight - 1;
    return e;
}

std::vector<Word> words_up_to(const std::vector<FormLabel>& alphabet, int L,
                              long max_weight) {
    std::vector<Word> out;
    std::vector<Word> prev{Word{}};
    for (int len = 1; len <= L; len++) {
        std::vector<Word> cur;
        for (auto& w : prev)
            for (auto& f : alphabet) {
                Word v(w);
                v.push_back(f);
                if (max_weight > 0) {
                    long tw = 0;
                    for (auto& g : v) tw += g.weight;
                    if (tw > max_weight) continue;
                }
                cur.push_back(std::move(v));
            }
        out.insert(out.end(), cur.begin(), cur.end());
        prev = std::move(cur);
    }
    return out;
}

std::vector<std::vector<int>> interleavings(int m, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // Depth-first over remaining counts.
    struct Rec {
        std::vector<std::vector<int>>& out;
        std::vector<int>& cur;
        void go(int a, int b) {
            if (a == 0 && b == 0) {
                out.push_back(cur);
                return;
            }
            if (a > 0) {
                cur.push_back(0);
                go(a - 1, b);
                cur.pop_back();
            }
            if (b > 0) {
                cur.push_back(1);
                go(a, b - 1);
                cur.pop_back();
            }
        }
    } rec{out, cur};
    rec.go(m, n);
    return out;
}

Mag poly_max_abs(const TensorPoly<BigC>& p) {
    Mag m = Mag::zero();
    for (auto& [e, c] : p.coef) m = Mag::max(m, c.abs_upper());
    return m;
}

Mag nc_max_abs(const NCSeries<BigC>& a) {
    Mag m = Mag::zero();
    for (auto& [w, p] : a.c)
        if (!w.empty()) m = Mag::max(m, poly_max_abs(p));
    return m;
}

std::vector<RWord> r_map(const Word& w) {
    int n = (int)w.size();
    std::vector<RWord> out;
    for (int i = 0; i < n; i++) {
        // Tangential suffix letters: cusp forms have no constant term.
        bool dead = false;
        for (int j = i + 1; j < n; j++)
            if (w[j].kind == FormKind::cusp_eigenform) dead = true;
        if (dead) continue;
        int sign = ((n - 1 - i) % 2 == 0) ? 1 : -1;
        std::vector<RLetter> pre, tail;
        for (int j = 0; j < i; j++)
            pre.push_back({w[j], LetterKind::full, j});
        for (int j = n - 1; j > i; j--)
            tail.push_back({w[j], LetterKind::tangential, j});
        for (auto& pick : interleavings(i, n - 1 - i)) {
            RWord rw{sign, {}};
            size_t a = 0, b = 0;
            for (int t : pick)
                rw.letters.push_back(t == 0 ? pre[a++] : tail[b++]);
            rw.letters.push_back({w[i], LetterKind::cuspidal, i});
            out.push_back(std::move(rw));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Integration kernels
// ---------------------------------------------------------------------------

namespace {

struct PrecGuard {
    long saved;
    explicit PrecGuard(long p) : saved(default_prec()) {
        if (p > 0) set_default_prec(p);
    }
    ~PrecGuard() { set_default_prec(saved); }
};

// q^n tau^m coefficient array; c[n] holds the tau-polynomial at order q^n.
struct Layer {
    std::vector<std::vector<BigC>> c;
};

void layer_add_term(Layer& l, long n, long m, const BigC& v) {
    if ((size_t)n >= l.c.size()) l.c.resize(n + 1);
    auto& row = l.c[n];
    if ((size_t)m >= row.size()) row.resize(m + 1);
    row[m] = row[m] + v;
}

// Antiderivative coefficient tables.  For n >= 1:
//   up[n][m][r]:  integral _tau ^ i*inf of t^m q^n dt  =  q^n sum_r p_r tau^r
//   in_[n][m][r]: an antiderivative of t^m q^n, as q^n sum_r p_r tau^r
// Both satisfy 2 pi i n P + P' = s tau^m with s = -1 (up) and s = +1 (in_).
struct PolyTables {
    std::vector<std::vector<std::vector<BigC>>> tab;  // [n][m] -> coeffs
    void build(long N, long mmax, const std::vector<BigC>& inv2pin, int sgn) {
        tab.assign(N + 1, {});
        for (long n = 1; n <= N; n++) {
            tab[n].assign(mmax + 1, {});
            for (long m = 0; m <= mmax; m++) {
                std::vector<BigC> p(m + 1);
                p[m] = sgn > 0 ? inv2pin[n] : -inv2pin[n];
                for (long r = m - 1; r >= 0; r--)
                    p[r] = -(mul_si(inv2pin[n], r + 1) * p[r + 1]);
                tab[n][m] = std::move(p);
            }
        }
    }
};

struct FormData {
    long d;     // polynomial degree
    long pexp;  // power of 2 pi i
    Rational a0;
    std::vector<BigReal> a;  // q-coefficients at working precision
};

FormData form_data(const FormLabel& f, long N, long prec) {
    FormDescriptor fd = underline_form(f, N);
    FormData r;
    r.d = fd.poly_degree;
    r.pexp = fd.prefactor_exp;
    r.a0 = fd.tangential;
    r.a.reserve(N + 1);
    for (long n = 0; n <= N; n++)
        r.a.push_back(BigReal::from_mpq(fd.series.a[n], prec));
    return r;
}

// Convolve a q-layer with a q-series whose coefficients run n = lo..N.
Layer convolve(const Layer& layer, const std::vector<BigReal>& a, long lo,
               long N) {
    Layer out;
    out.c.resize(N + 1);
    for (long nl = 0; nl < (long)layer.c.size(); nl++) {
        auto& row = layer.c[nl];
        if (row.empty()) continue;
        for (long t = lo; nl + t <= N; t++) {
            auto& dst = out.c[nl + t];
            if (dst.size() < row.size()) dst.resize(row.size());
            for (size_t m = 0; m < row.size(); m++)
                dst[m] = dst[m] + row[m] * a[t];
        }
    }
    return out;
}

Layer scale_layer(const Layer& layer, const Rational& s) {
    Layer out;
    out.c.resize(layer.c.size());
    for (size_t n = 0; n < layer.c.size(); n++) {
        out.c[n].reserve(layer.c[n].size());
        for (auto& v : layer.c[n]) out.c[n].push_back(mul_q(v, s));
    }
    return out;
}

// Crude upper bound for everything lost to the q-order truncation, evaluated
// at height >= y0.  Coefficient growth is at most polynomial while each
// dropped term carries exp(-2 pi (N+1) y0); the polynomial factors and the
// 2 pi i prefactors are absorbed into a generous power of N+1 plus slack.
Mag tail_bound(long N, double y0, long total_weight, int nletters) {
    double l2 = -2.0 * 3.14159265358979 * (double)(N + 1) * y0 / 0.6931471805;
    l2 += (double)(2 * total_weight + 8 * nletters + 8) *
          std::log2((double)(N + 2));
    l2 += 64.0;
    if (l2 > 0) l2 = 0;
    return Mag::from_parts(1.0, (long)std::ceil(l2));
}

}  // namespace

TensorPoly<BigC> rword_integral(const RWord& rw, const IntParams& par) {
    PrecGuard guard(par.prec);
    const long N = par.N, prec = par.prec;
    const int n = (int)rw.letters.size();
    if (n == 0) throw std::invalid_argument("rword_integral: empty word");
    if (rw.letters.back().kind != LetterKind::cuspidal)
        throw std::invalid_argument("rword_integral: divergent word");

    std::vector<FormData> fd;
    long mmax = 0, pex = 0, wtot = 0;
    for (auto& l : rw.letters) {
        fd.push_back(form_data(l.form, N, prec));
        mmax += fd.back().d;
        pex += fd.back().pexp;
        wtot += l.form.weight;
    }

    std::vector<BigC> inv2pin(N + 1);
    {
        BigC inv2pi = BigC::from_long(1, prec) / two_pi_i_pow(1, prec);
        for (long k = 1; k <= N; k++) inv2pin[k] = mul_q(inv2pi, Rational(1, k));
    }
    PolyTables up;
    up.build(N, mmax, inv2pin, -1);

    // Base point tau0 = i y0 and its powers, q0 = exp(2 pi i tau0).
    BigC tau0(BigReal(prec), BigReal::from_mpq(par.tau_im, prec));
    BigC q0 = c_exp(two_pi_i_pow(1, prec) * tau0);
    std::vector<BigC> q0p(N + 1), t0p(mmax + 1);
    q0p[0] = BigC::from_long(1, prec);
    for (long k = 1; k <= N; k++) q0p[k] = q0p[k - 1] * q0;
    t0p[0] = BigC::from_long(1, prec);
    for (long k = 1; k <= mmax; k++) t0p[k] = t0p[k - 1] * tau0;

    // Moments mom[n][m] = int_tau0^i*inf t^m q^n dt.
    std::vector<std::vector<BigC>> mom(N + 1);
    for (long k = 1; k <= N; k++) {
        mom[k].resize(mmax + 1);
        mom[k][0] = -(q0p[k] * inv2pin[k]);
        for (long m = 1; m <= mmax; m++)
            mom[k][m] =
                -(inv2pin[k] * (t0p[m] * q0p[k] + mul_si(mom[k][m - 1], m)));
    }

    // Innermost letter first; keys are X-exponents in word order, prepended
    // as each letter is absorbed.  Inner letters produce new q-tau layers;
    // the outermost letter is contracted against the moment table directly.
    std::map<std::vector<long>, Layer> state;
    {
        Layer unit;
        unit.c.resize(1);
        unit.c[0].push_back(BigC::from_long(1, prec));
        state.emplace(std::vector<long>{}, std::move(unit));
    }
    std::map<std::vector<long>, BigC> final_acc;
    for (int j = n - 1; j >= 0; j--) {
        const auto& L = rw.letters[j];
        const auto& F = fd[j];
        std::map<std::vector<long>, Layer> next;
        for (auto& [key, layer] : state) {
            Layer conv;
            switch (L.kind) {
                case LetterKind::tangential:
                    conv = scale_layer(layer, F.a0);
                    break;
                case LetterKind::cuspidal:
                    conv = convolve(layer, F.a, 1, N);
                    break;
                case LetterKind::full:
                    conv = convolve(layer, F.a, 0, N);
                    break;
            }
            for (long e = 0; e <= F.d; e++) {
                long s = F.d - e;
                Rational re = binomial(F.d, e) * Rational((s % 2) ? -1 : 1);
                std::vector<long> key2;
                key2.reserve(key.size() + 1);
                key2.push_back(e);
                key2.insert(key2.end(), key.begin(), key.end());
                if (j == 0) {
                    BigC acc(prec);
                    for (long qn = 1; qn < (long)conv.c.size(); qn++) {
                        auto& row = conv.c[qn];
                        for (long m = 0; m < (long)row.size(); m++) {
                            if (ring_is_zero(row[m])) continue;
                            acc = acc + row[m] * mom[qn][m + s];
                        }
                    }
                    final_acc[std::move(key2)] = mul_q(acc, re);
                } else {
                    Layer& dst = next[std::move(key2)];
                    for (long qn = 1; qn < (long)conv.c.size(); qn++) {
                        auto& row = conv.c[qn];
                        for (long m = 0; m < (long)row.size(); m++) {
                            if (ring_is_zero(row[m])) continue;
                            BigC cv = mul_q(row[m], re);
                            auto& p = up.tab[qn][m + s];
                            for (long r = 0; r < (long)p.size(); r++)
                                layer_add_term(dst, qn, r, cv * p[r]);
                        }
                    }
                }
            }
        }
        state = std::move(next);
    }

    // Attach prefactors and the truncation tail.
    std::vector<long> degs;
    for (auto& f : fd) degs.push_back(f.d);
    TensorPoly<BigC> out(degs);
    BigC pref = two_pi_i_pow(pex, prec);
    double y0 = par.tau_im.get_d();
    Mag tail = tail_bound(N, y0, wtot, n) * pref.abs_upper();
    for (auto& [key, acc] : final_acc) {
        BigC v = acc * pref;
        add_error(v, tail);
        out.add_term(key, v);
    }
    return out;
}

TensorPoly<BigC> reg_word_integral(const Word& w, const IntParams& par) {
    TensorPoly<BigC> out;
    for (auto& rw : r_map(w)) {
        TensorPoly<BigC> p = rword_integral(rw, par);
        std::vector<int> perm(rw.letters.size());
        for (size_t j = 0; j < rw.letters.size(); j++)
            perm[rw.letters[j].orig] = (int)j;
        p = permute_slots(p, perm);
        if (rw.sign < 0)
            out -= p;
        else
            out += p;
    }
    return out;
}

NCSeries<BigC> reg_series(const std::vector<FormLabel>& alphabet,
                          const IntParams& par) {
    NCSeries<BigC> r = NCSeries<BigC>::one(par.L);
    for (auto& w : words_up_to(alphabet, par.L))
        r.set(w, reg_word_integral(w, par));
    return r;
}

// ---------------------------------------------------------------------------
// Polynomial (tangential) iterated integrals along a finite path
// ---------------------------------------------------------------------------

namespace {

// Shared skeleton over a coefficient field K with endpoint powers supplied.
template <class K>
NCSeries<K> i_inf_impl(const std::vector<K>& apow, const std::vector<K>& bpow,
                       const std::vector<FormLabel>& alphabet, int L) {
    NCSeries<K> out = NCSeries<K>::one(L);
    for (auto& w : words_up_to(alphabet, L)) {
        bool dead = false;
        for (auto& f : w)
            if (f.kind == FormKind::cusp_eigenform) dead = true;
        if (dead) continue;
        int n = (int)w.size();
        std::vector<long> degs;
        std::vector<Rational> a0s;
        for (auto& f : w) {
            FormDescriptor fd = underline_form(f, 0);
            degs.push_back(fd.poly_degree);
            a0s.push_back(fd.tangential);
        }
        // tau-polynomial per exponent key, built inner letter first.
        std::map<std::vector<long>, std::vector<K>> state;
        state.emplace(std::vector<long>{},
                      std::vector<K>{RingTraits<K>::from_q(1)});
        for (int j = n - 1; j >= 0; j--) {
            long d = degs[j];
            std::map<std::vector<long>, std::vector<K>> next;
            for (auto& [key, poly] : state) {
                for (long e = 0; e <= d; e++) {
                    long s = d - e;
                    Rational re = a0s[j] * binomial(d, e) *
                                  Rational((s % 2) ? -1 : 1);
                    std::vector<long> key2;
                    key2.push_back(e);
                    key2.insert(key2.end(), key.begin(), key.end());
                    auto& dst = next[std::move(key2)];
                    if (dst.empty()) dst.resize(1, K());
                    for (long m = 0; m < (long)poly.size(); m++) {
                        if (ring_is_zero(poly[m])) continue;
                        Rational piece = re / Rational(m + s + 1);
                        K cm = poly[m] * RingTraits<K>::from_q(piece);
                        if ((long)dst.size() <= m + s + 1)
                            dst.resize(m + s + 2, K());
                        // int_tau^b t^(m+s) dt, scaled.
                        dst[0] += cm * bpow[m + s + 1];
                        dst[m + s + 1] -= cm;
                    }
                }
            }
            state = std::move(next);
        }
        TensorPoly<K> coeffp(degs);
        for (auto& [key, poly] : state) {
            K val = K();
            for (long m = 0; m < (long)poly.size(); m++)
                val += poly[m] * apow[m];
            coeffp.add_term(key, val);
        }
        out.set(w, std::move(coeffp));
    }
    return out;
}

template <class K>
std::vector<K> powers_of(const K& x, long top) {
    std::vector<K> p(top + 1);
    p[0] = RingTraits<K>::from_q(1);
    for (long k = 1; k <= top; k++) p[k] = p[k - 1] * x;
    return p;
}

long max_tau_power(const std::vector<FormLabel>& alphabet, int L) {
    long d = 0;
    for (auto& f : alphabet) d = std::max(d, f.weight - 2);
    return d * L + L + 2;
}

}  // namespace

NCSeries<Rational> i_infinity_exact(const Rational& a, const Rational& b,
                                    const std::vector<FormLabel>& alphabet,
                                    int L) {
    long top = max_tau_power(alphabet, L);
    return i_inf_impl<Rational>(powers_of(a, top), powers_of(b, top), alphabet,
                                L);
}

NCSeries<BigC> i_infinity(const BigC& a, const BigC& b,
                          const std::vector<FormLabel>& alphabet, int L,
                          long prec) {
    PrecGuard guard(prec);
    long top = max_tau_power(alphabet, L);
    NCSeries<BigC> r =
        i_inf_impl<BigC>(powers_of(a, top), powers_of(b, top), alphabet, L);
    for (auto& [w, p] : r.c)
        if (!w.empty()) p = p * two_pi_i_pow(word_prefactor_exp(w), prec);
    return r;
}

// ---------------------------------------------------------------------------
// Full iterated integrals between interior points
// ---------------------------------------------------------------------------

NCSeries<BigC> iter_integral_interior(const BigC& a, const BigC& b,
                                      const std::vector<FormLabel>& alphabet,
                                      const IntParams& par) {
    PrecGuard guard(par.prec);
    const long N = par.N, prec = par.prec;
    NCSeries<BigC> out = NCSeries<BigC>::one(par.L);

    std::vector<BigC> inv2pin(N + 1);
    BigC twopii = two_pi_i_pow(1, prec);
    {
        BigC inv2pi = BigC::from_long(1, prec) / twopii;
        for (long k = 1; k <= N; k++) inv2pin[k] = mul_q(inv2pi, Rational(1, k));
    }
    BigC qa = c_exp(twopii * a), qb = c_exp(twopii * b);
    double ya = a.im.to_double(), yb = b.im.to_double();

    for (auto& w : words_up_to(alphabet, par.L)) {
        int n = (int)w.size();
        std::vector<FormData> fd;
        long mmax = 0, pex = 0, wtot = 0;
        for (auto& f : w) {
            fd.push_back(form_data(f, N, prec));
            // Antidifferentiating the polynomial part raises the tau-degree
            // by one per letter, on top of the letter's own degree.
            mmax += fd.back().d + 1;
            pex += fd.back().pexp;
            wtot += f.weight;
        }
        PolyTables in_;
        in_.build(N, mmax, inv2pin, +1);
        std::vector<BigC> qap = powers_of(qa, N), qbp = powers_of(qb, N);
        std::vector<BigC> ap = powers_of(a, mmax + 1), bp = powers_of(b, mmax + 1);

        // Segment moments: int_a^b t^m q^n dt and int_a^b t^m dt.
        std::vector<std::vector<BigC>> mseg(N + 1);
        for (long k = 1; k <= N; k++) {
            mseg[k].resize(mmax + 1);
            mseg[k][0] = (qbp[k] - qap[k]) * inv2pin[k];
            for (long m = 1; m <= mmax; m++)
                mseg[k][m] = inv2pin[k] * (bp[m] * qbp[k] - ap[m] * qap[k] -
                                           mul_si(mseg[k][m - 1], m));
        }
        std::vector<BigC> pseg(mmax + 1);
        for (long m = 0; m <= mmax; m++)
            pseg[m] = mul_q(bp[m + 1] - ap[m + 1], Rational(1, m + 1));

        // Per key: q-layer plus a plain tau-polynomial part.
        struct Cell {
            Layer q;
            std::vector<BigC> poly;
        };
        std::map<std::vector<long>, Cell> state;
        {
            Cell unit;
            unit.poly.assign(1, BigC::from_long(1, prec));
            state.emplace(std::vector<long>{}, std::move(unit));
        }
        std::map<std::vector<long>, BigC> final_acc;
        for (int j = n - 1; j >= 0; j--) {
            const auto& F = fd[j];
            std::map<std::vector<long>, Cell> next;
            for (auto& [key, cell] : state) {
                // Multiply by the full q-series.
                Layer conv = convolve(cell.q, F.a, 0, N);
                for (long m = 0; m < (long)cell.poly.size(); m++) {
                    if (ring_is_zero(cell.poly[m])) continue;
                    for (long t = 1; t <= N; t++)
                        layer_add_term(conv, t, m, cell.poly[m] * F.a[t]);
                }
                std::vector<BigC> polyc(cell.poly);
                for (auto& v : polyc) v = mul_q(v, F.a0);

                for (long e = 0; e <= F.d; e++) {
                    long s = F.d - e;
                    Rational re = binomial(F.d, e) * Rational((s % 2) ? -1 : 1);
                    std::vector<long> key2;
                    key2.push_back(e);
                    key2.insert(key2.end(), key.begin(), key.end());
                    if (j == 0) {
                        // Contract against the segment moments.
                        BigC acc(prec);
                        for (long qn = 1; qn < (long)conv.c.size(); qn++) {
                            auto& row = conv.c[qn];
                            for (long m = 0; m < (long)row.size(); m++) {
                                if (ring_is_zero(row[m])) continue;
                                acc = acc + row[m] * mseg[qn][m + s];
                            }
                        }
                        for (long m = 0; m < (long)polyc.size(); m++) {
                            if (ring_is_zero(polyc[m])) continue;
                            acc = acc + polyc[m] * pseg[m + s];
                        }
                        final_acc[std::move(key2)] = mul_q(acc, re);
                        continue;
                    }
                    Cell& dst = next[key2];
                    if (dst.poly.empty()) dst.poly.assign(1, BigC(prec));
                    // q-part: int_tau^b t^(m+s) q^t dt
                    //       = q(b)^t P(b) - q(tau)^t P(tau).
                    for (long qn = 1; qn < (long)conv.c.size(); qn++) {
                        auto& row = conv.c[qn];
                        for (long m = 0; m < (long)row.size(); m++) {
                            if (ring_is_zero(row[m])) continue;
                            BigC cv = mul_q(row[m], re);
                            auto& p = in_.tab[qn][m + s];
                            BigC atb(prec);
                            for (long r = (long)p.size() - 1; r >= 0; r--)
                                atb = atb * b + p[r];
                            dst.poly[0] = dst.poly[0] + cv * (atb * qbp[qn]);
                            for (long r = 0; r < (long)p.size(); r++)
                                layer_add_term(dst.q, qn, r, -(cv * p[r]));
                        }
                    }
                    // Polynomial part: int_tau^b t^(m+s) dt.
                    for (long m = 0; m < (long)polyc.size(); m++) {
                        if (ring_is_zero(polyc[m])) continue;
                        BigC cm = mul_q(polyc[m], re / Rational(m + s + 1));
                        if ((long)dst.poly.size() <= m + s + 1)
                            dst.poly.resize(m + s + 2, BigC(prec));
                        dst.poly[0] = dst.poly[0] + cm * bp[m + s + 1];
                        dst.poly[m + s + 1] = dst.poly[m + s + 1] - cm;
                    }
                }
            }
            state = std::move(next);
        }

        std::vector<long> degs;
        for (auto& f : fd) degs.push_back(f.d);
        TensorPoly<BigC> coeffp(degs);
        BigC pref = two_pi_i_pow(pex, prec);
        Mag tail =
            tail_bound(N, std::min(ya, yb), wtot, n) * pref.abs_upper();
        for (auto& [key, acc] : final_acc) {
            BigC v = acc * pref;
            add_error(v, tail);
            coeffp.add_term(key, v);
        }
        out.set(w, std::move(coeffp));
    }
    return out;
}

NCSeries<BigC> iter_integral_to_cusp(const std::vector<FormLabel>& alphabet,
                                     const IntParams& par) {
    PrecGuard guard(par.prec);
    BigC tau0(BigReal(par.prec), BigReal::from_mpq(par.tau_im, par.prec));
    BigC zero(par.prec);
    NCSeries<BigC> ri = reg_series(alphabet, par);
    NCSeries<BigC> tanpart =
        i_infinity(tau0, zero, alphabet, par.L, par.prec);
    return ri * tanpart;
}

}  // namespace mmv
