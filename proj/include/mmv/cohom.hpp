#pragma once
// Group cohomology of SL2(Z) with polynomial coefficients: 1-cochains stored
// on the generators S and T, cocycle relations, coboundaries, cup products on
// the pairs needed by the relative-H^2 evaluation h, the pairing frak_h, the
// Petersson-Haberlund bracket, and the Hecke-equivariant splitting of the
// cuspidal cocycle space.

#include <vector>

#include "mmv/polyalg.hpp"

namespace mmv {

enum class GenTok { S, T, Tinv };

inline GammaElt gen_matrix(GenTok t) {
    switch (t) {
        case GenTok::S: return GammaElt::S();
        case GenTok::T: return GammaElt::T();
        default: return GammaElt::Tinv();
    }
}

// Decompose an element into a word in S, T, T^{-1} reproducing it up to sign
// (-1 acts trivially on everything we evaluate).  Continued-fraction style:
// strip T-powers from the left, then an S, until the lower-left entry dies.
std::vector<GenTok> word_decompose(const GammaElt& g);

GammaElt word_eval(const std::vector<GenTok>& w);

// ---------------------------------------------------------------------------
// 1-cochains on generators.
// ---------------------------------------------------------------------------

template <class K>
struct Cochain1 {
    TensorPoly<K> S, T;

    // Values elsewhere come from the cocycle-rule lift c_{gh} = c_g|_h + c_h.
    TensorPoly<K> at_Tinv() const {
        return neg(sl2_act(T, GammaElt::Tinv()));
    }
    TensorPoly<K> at_U() const {  // U = TS
        return sl2_act(T, GammaElt::S()) + S;
    }
    TensorPoly<K> at_U2() const {
        TensorPoly<K> u = at_U();
        return sl2_act(u, GammaElt::U()) + u;
    }

    // Residuals of the two defining relations of a cocycle:
    //   c_S|_S + c_S = 0  and  c_U|_{U^2} + c_U|_U + c_U = 0.
    TensorPoly<K> residual_S() const { return sl2_act(S, GammaElt::S()) + S; }
    TensorPoly<K> residual_U() const {
        TensorPoly<K> u = at_U();
        GammaElt U = GammaElt::U();
        return sl2_act(u, U * U) + sl2_act(u, U) + u;
    }
    bool is_cocycle() const {
        return residual_S().is_zero() && residual_U().is_zero();
    }

    friend Cochain1 operator+(const Cochain1& a, const Cochain1& b) {
        return {a.S + b.S, a.T + b.T};
    }
    friend Cochain1 operator-(const Cochain1& a, const Cochain1& b) {
        return {a.S - b.S, a.T - b.T};
    }
    Cochain1 scaled_q(const Rational& q) const {
        return {S.scaled_q(q), T.scaled_q(q)};
    }
};

template <class K>
Cochain1<K> coboundary0(const TensorPoly<K>& v) {
    return {sl2_act(v, GammaElt::S()) - v, sl2_act(v, GammaElt::T()) - v};
}

// Evaluate a cocycle at an arbitrary group element by folding the word
// decomposition through c_{gh} = c_g|_h + c_h.
template <class K>
TensorPoly<K> eval_cocycle(const Cochain1<K>& c, const GammaElt& g,
                           bool check = true) {
    if (check && !c.is_cocycle())
        throw std::domain_error("eval_cocycle: relations violated");
    TensorPoly<K> acc;  // zero
    for (GenTok t : word_decompose(g)) {
        if (!acc.is_zero()) acc = sl2_act(acc, gen_matrix(t));
        switch (t) {
            case GenTok::S: acc += c.S; break;
            case GenTok::T: acc += c.T; break;
            case GenTok::Tinv: acc += c.at_Tinv(); break;
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Cup products and the relative-H^2 evaluation h.
// ---------------------------------------------------------------------------

// (a cup b)(g,h) = a_g|_h tensor b_h on the four pairs h needs.
template <class K>
struct CupPairs {
    TensorPoly<K> SS, TS, UU, U2U;
};

template <class K>
CupPairs<K> cup(const Cochain1<K>& a, const Cochain1<K>& b) {
    GammaElt S = GammaElt::S(), U = GammaElt::U();
    TensorPoly<K> aU = a.at_U(), bU = b.at_U();
    return {tensor(sl2_act(a.S, S), b.S), tensor(sl2_act(a.T, S), b.S),
            tensor(sl2_act(aU, U), bU), tensor(sl2_act(a.at_U2(), U), bU)};
}

// Invariant projection V_d tensor V_d -> V_0 induced by the pairing.
template <class K>
K pair_project(const TensorPoly<K>& p) {
    if (p.is_zero()) return K();
    if (p.arity != 2 || p.degree[0] != p.degree[1])
        throw std::invalid_argument("pair_project: arity-2 equal degrees");
    long d = p.degree[0];
    K acc{};
    for (auto& [e, c] : p.coef) {
        if (e[0] + e[1] != d) continue;
        Rational w((e[0] % 2) ? -1 : 1);
        w *= Rational(factorial(e[0]) * factorial(d - e[0])) /
             Rational(factorial(d));
        acc += c * RingTraits<K>::from_q(w);
    }
    return acc;
}

// h((alpha, beta)) for scalar-valued 2-cochain values.
template <class K>
K h_eval(const K& aSS, const K& aTS, const K& aUU, const K& aU2U,
         const K& betaT) {
    K two = RingTraits<K>::from_q(2), six = RingTraits<K>::from_q(6);
    K three = RingTraits<K>::from_q(3);
    K inner6 = two * aUU + two * aU2U + six * aTS - three * aSS;
    return betaT + inner6 * RingTraits<K>::from_q(Rational(1, 6));
}

// h applied to the cup of two equal-degree cochains, with beta_T scalar.
template <class K>
K h_cup(const Cochain1<K>& a, const Cochain1<K>& b, const K& betaT) {
    CupPairs<K> p = cup(a, b);
    return h_eval(pair_project(p.SS), pair_project(p.TS), pair_project(p.UU),
                  pair_project(p.U2U), betaT);
}

// frak_h(a, b) =
//   (1/3)(a_U + a_{U^2})|_U tensor b_U + (a_T - a_S/2)|_S tensor b_S,
// normalised so that {f, g} = -6 <frak_h(g, f)> for cocycles f and cuspidal g.
template <class K>
TensorPoly<K> frak_h(const Cochain1<K>& ap, const Cochain1<K>& a) {
    GammaElt S = GammaElt::S(), U = GammaElt::U();
    TensorPoly<K> left =
        sl2_act(ap.at_U() + ap.at_U2(), U).scaled_q(Rational(1, 3));
    TensorPoly<K> right = sl2_act(ap.T - ap.S.scaled_q(Rational(1, 2)), S);
    return tensor(left, a.at_U()) + tensor(right, a.S);
}

// ---------------------------------------------------------------------------
// Petersson-Haberlund bracket and the splitting.
// ---------------------------------------------------------------------------

// {P, Q} = <P_S, Q_S|_{T - T^{-1}}> - 2 <P_T, Q_S|_{1 + T}> for cuspidal Q.
template <class K>
K haberlund(const Cochain1<K>& P, const Cochain1<K>& Q) {
    if (!Q.T.is_zero())
        throw std::invalid_argument("haberlund: second argument not cuspidal");
    if (Q.S.is_zero()) return K();
    GammaElt T = GammaElt::T(), Ti = GammaElt::Tinv();
    K first = inner(P.S, sl2_act(Q.S, T) - sl2_act(Q.S, Ti));
    if (P.T.is_zero()) return first;
    K second = inner(P.T, Q.S + sl2_act(Q.S, T));
    return first - (second + second);
}

// The rational Eisenstein cocycle e0_{2k} in V_{2k-2}, from the generating
// series built out of c(x) = 1/(e^x - 1) + 1/2 - 1/x = sum B_{2j} x^{2j-1}/(2j)!:
//   e0(S) = c(X) c(Y),  e0(T) = (c(X+Y) - c(X))/Y - 1/12,
// scaled so that e0_{2k} is the (2k-2)-homogeneous part times (2k-2)!/2.
Cochain1<Rational> zagier_e0(long weight);

// Convert a rational cochain into another coefficient ring.
template <class K>
TensorPoly<K> convert_poly(const TensorPoly<Rational>& p) {
    TensorPoly<K> r(p.degree);
    for (auto& [e, c] : p.coef) r.add_term(e, RingTraits<K>::from_q(c));
    return r;
}
template <class K>
Cochain1<K> convert_cochain(const Cochain1<Rational>& c) {
    return {convert_poly<K>(c.S), convert_poly<K>(c.T)};
}

// Hecke-equivariant splitting: for cuspidal C with values in V_d,
//   s(C)_T = 0,  s(C)_S = C_S + alpha (X^d - Y^d),
// where alpha kills the pairing against the Eisenstein cocycle e0_{d+2}.
template <class K>
Cochain1<K> splitting_s(const Cochain1<K>& C) {
    if (!C.T.is_zero())
        throw std::invalid_argument("splitting_s: input not cuspidal");
    if (C.S.is_zero()) return C;
    long d = C.S.degree[0];
    Cochain1<K> e0 = convert_cochain<K>(zagier_e0(d + 2));
    Rational divisor = Rational(3) * bernoulli(d + 2) / Rational(d + 2);
    // divisor = {e0_{d+2}, delta0 Y^d}, nonzero for even d >= 2.
    K alpha = (K() - haberlund(e0, C)) *
              RingTraits<K>::from_q(1 / divisor);
    TensorPoly<Rational> xy({d});
    xy.add_term({d}, 1);
    xy.add_term({0}, -1);
    return {C.S + convert_poly<K>(xy) * alpha, TensorPoly<K>()};
}

}  // namespace mmv
