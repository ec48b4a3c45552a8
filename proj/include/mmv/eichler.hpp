#pragma once

// Iterated integrals of weight-graded one-forms attached to level-one modular
// forms.  A form f of weight 2k contributes the letter
//     w_f(t) = (2 pi i)^{2k-1} f(t) (X - tY)^{2k-2} dt,
// split as w_f = w_f^tan + w_f^cusp into its constant q-term and the rest.
// Generating series of iterated integrals are stored as noncommutative power
// series in the letters, truncated at a fixed word length, with tensor-product
// polynomial coefficients (one (X,Y)-slot per letter).

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmv/bigmath.hpp"
#include "mmv/modforms.hpp"
#include "mmv/polyalg.hpp"
#include "mmv/rational.hpp"

namespace mmv {

using Word = std::vector<FormLabel>;

std::string word_str(const Word& w);

// Sum over the word of (weight - 1): the power of 2 pi i carried by the
// letters' prefactors.
long word_prefactor_exp(const Word& w);

// All words of length 1..L over the given alphabet (the empty word is not
// included).  If max_weight > 0, words of larger total weight are dropped.
std::vector<Word> words_up_to(const std::vector<FormLabel>& alphabet, int L,
                              long max_weight = 0);

// All ways to interleave a block of m items with a block of n items while
// keeping each block's internal order.  Entries are 0 (take from the first
// block) or 1 (take from the second).
std::vector<std::vector<int>> interleavings(int m, int n);

// ---------------------------------------------------------------------------
// Truncated noncommutative series: word -> tensor polynomial, slots in word
// order.  Missing words count as zero; the empty word holds the arity-0
// constant term.
// ---------------------------------------------------------------------------

template <class K>
struct NCSeries {
    int L = 0;
    std::map<Word, TensorPoly<K>> c;

    explicit NCSeries(int len = 0) : L(len) {}

    static NCSeries one(int len) {
        NCSeries r(len);
        r.c.emplace(Word{}, tensor_one<K>());
        return r;
    }

    TensorPoly<K> coeff(const Word& w) const {
        auto it = c.find(w);
        return it == c.end() ? TensorPoly<K>() : it->second;
    }

    void set(const Word& w, TensorPoly<K> p) {
        if (p.is_zero())
            c.erase(w);
        else
            c[w] = std::move(p);
    }

    void add(const Word& w, const TensorPoly<K>& p) {
        if (p.is_zero()) return;
        auto it = c.find(w);
        if (it == c.end()) {
            c.emplace(w, p);
        } else {
            it->second += p;
            if (it->second.is_zero()) c.erase(it);
        }
    }

    std::set<FormLabel> letters() const {
        std::set<FormLabel> s;
        for (auto& [w, p] : c) s.insert(w.begin(), w.end());
        return s;
    }
};

// Concatenation product: (A B)(w) = sum over splittings w = uv of
// A(u) tensor B(v), truncated at length max(A.L, B.L).
template <class K>
NCSeries<K> operator*(const NCSeries<K>& a, const NCSeries<K>& b) {
    NCSeries<K> r(std::max(a.L, b.L));
    for (auto& [u, pa] : a.c)
        for (auto& [v, pb] : b.c) {
            if ((int)(u.size() + v.size()) > r.L && !(u.empty() && v.empty()))
                continue;
            Word w(u);
            w.insert(w.end(), v.begin(), v.end());
            r.add(w, tensor(pa, pb));
        }
    return r;
}

template <class K>
NCSeries<K> operator+(const NCSeries<K>& a, const NCSeries<K>& b) {
    NCSeries<K> r(a);
    r.L = std::max(a.L, b.L);
    for (auto& [w, p] : b.c) r.add(w, p);
    return r;
}

template <class K>
NCSeries<K> operator-(const NCSeries<K>& a, const NCSeries<K>& b) {
    NCSeries<K> r(a);
    r.L = std::max(a.L, b.L);
    for (auto& [w, p] : b.c) r.add(w, neg(p));
    return r;
}

// Inverse for a series whose constant term is 1, solved degree by degree:
// B(w) = -sum over proper splittings w = uv, u nonempty, of A(u) tensor B(v).
template <class K>
NCSeries<K> nc_inverse(const NCSeries<K>& a) {
    if (a.coeff({}).is_zero())
        throw std::domain_error("nc_inverse: constant term must be 1");
    std::set<FormLabel> ls = a.letters();
    std::vector<FormLabel> alpha(ls.begin(), ls.end());
    NCSeries<K> b = NCSeries<K>::one(a.L);
    for (auto& w : words_up_to(alpha, a.L)) {
        TensorPoly<K> acc;
        for (size_t i = 1; i <= w.size(); i++) {
            Word u(w.begin(), w.begin() + i);
            Word v(w.begin() + i, w.end());
            auto pa = a.coeff(u);
            if (pa.is_zero()) continue;
            auto pb = b.coeff(v);
            if (pb.is_zero()) continue;
            acc -= tensor(pa, pb);
        }
        b.set(w, std::move(acc));
    }
    return b;
}

// Right action through the coefficients: (A|_g)(w) = A(w)|_g.
template <class K>
NCSeries<K> nc_act(const NCSeries<K>& a, const GammaElt& g) {
    NCSeries<K> r(a.L);
    for (auto& [w, p] : a.c) r.set(w, sl2_act(p, g));
    return r;
}

// Largest coefficient magnitude over all words and monomials (upper bound).
Mag nc_max_abs(const NCSeries<BigC>& a);
Mag poly_max_abs(const TensorPoly<BigC>& p);

// ---------------------------------------------------------------------------
// Regularization: rewriting a word as a signed combination of convergent
// words whose letters carry a variant marker.
// ---------------------------------------------------------------------------

enum class LetterKind {
    full,        // the whole one-form
    tangential,  // constant q-term only
    cuspidal,    // q-expansion with the constant term removed
};

struct RLetter {
    FormLabel form;
    LetterKind kind;
    int orig;  // slot of this letter in the source word (0-based)
};

struct RWord {
    int sign;  // +1 or -1
    std::vector<RLetter> letters;
};

// Expansion of a word into convergent pieces: for each position i, shuffle
// the (full) prefix before i with the reversed tangential suffix after i and
// append the cuspidal variant of letter i, with sign (-1)^(n-i-1).  R-words
// containing a tangential cusp form are dropped (their constant term is 0).
std::vector<RWord> r_map(const Word& w);

// ---------------------------------------------------------------------------
// Numerical integration
// ---------------------------------------------------------------------------

struct IntParams {
    int L = 2;            // maximum word length
    long N = 160;         // q-expansion truncation order
    long prec = 512;      // working precision in bits
    Rational tau_im = 1;  // base point tau0 = i * tau_im
};

// Integral of one regularization word over tau0 <= t_1 <= ... <= t_n < i*inf
// (letter j integrated against t_j), slots in R-word order, including the
// 2 pi i prefactors.  The last letter must be cuspidal.
TensorPoly<BigC> rword_integral(const std::vector<RWord>::value_type& rw,
                                const IntParams& par);

// Regularized integral of a word from tau0 to the cusp at i*inf: signed sum
// of its R-word integrals, slots restored to word order.
TensorPoly<BigC> reg_word_integral(const Word& w, const IntParams& par);

// Generating series of the regularized integrals to i*inf over all words of
// length <= par.L in the alphabet (constant term 1).
NCSeries<BigC> reg_series(const std::vector<FormLabel>& alphabet,
                          const IntParams& par);

// Iterated integrals of the tangential parts along a path from a to b
// (path-independent).  Exact version: rational endpoints, rational
// coefficients, 2 pi i prefactors omitted (reinstate (2 pi i)^
// word_prefactor_exp(w) per word).  Numeric version: prefactors included.
NCSeries<Rational> i_infinity_exact(const Rational& a, const Rational& b,
                                    const std::vector<FormLabel>& alphabet,
                                    int L);
NCSeries<BigC> i_infinity(const BigC& a, const BigC& b,
                          const std::vector<FormLabel>& alphabet, int L,
                          long prec = 0);

// Full iterated integral between two points of the upper half-plane.
NCSeries<BigC> iter_integral_interior(const BigC& a, const BigC& b,
                                      const std::vector<FormLabel>& alphabet,
                                      const IntParams& par);

// Regularized iterated integral from tau0 = i*par.tau_im to infinity, with
// the divergent tangential tail renormalized through the point 0:
// reg_series(tau0) * i_infinity(tau0, 0).
NCSeries<BigC> iter_integral_to_cusp(const std::vector<FormLabel>& alphabet,
                                     const IntParams& par);

}  // namespace mmv
