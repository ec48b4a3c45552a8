#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "mmv/polyalg.hpp"

using namespace mmv;
using QPoly = TensorPoly<Rational>;

static QPoly rand_poly(std::mt19937& rng, std::vector<long> degs) {
    QPoly p(degs);
    std::uniform_int_distribution<long> cd(-9, 9);
    std::vector<long> e(degs.size());
    // Dense-ish random fill.
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == degs.size()) {
            p.add_term(e, Rational(cd(rng)));
            return;
        }
        for (long x = 0; x <= degs[i]; x++) {
            e[i] = x;
            rec(i + 1);
        }
    };
    rec(0);
    return p;
}

static GammaElt rand_word(std::mt19937& rng, int maxlen) {
    std::uniform_int_distribution<int> len(0, maxlen), pick(0, 2);
    GammaElt g;
    int n = len(rng);
    for (int i = 0; i < n; i++) {
        switch (pick(rng)) {
            case 0: g = g * GammaElt::S(); break;
            case 1: g = g * GammaElt::T(); break;
            default: g = g * GammaElt::Tinv(); break;
        }
    }
    return g;
}

TEST_CASE("group constants") {
    GammaElt S = GammaElt::S(), T = GammaElt::T(), U = GammaElt::U();
    GammaElt mI(-1, 0, 0, -1);
    CHECK(S * S == mI);
    CHECK(U * U * U == mI);
    CHECK(T * T.inverse() == GammaElt::identity());
    CHECK(GammaElt::Tinv() == T.inverse());
}

TEST_CASE("sl2 action basics") {
    // X|_S = -Y, (X-Y)|_T = X, and S^2 acts trivially in even degree.
    QPoly X = QPoly::xy(1, 1, 1), Y = QPoly::xy(1, 0, 1);
    CHECK(sl2_act(X, GammaElt::S()) == neg(Y));
    CHECK(sl2_act(Y, GammaElt::S()) == X);
    CHECK(sl2_act(X - Y, GammaElt::T()) == X);

    std::mt19937 rng(7);
    QPoly p = rand_poly(rng, {8});
    CHECK(sl2_act(sl2_act(p, GammaElt::S()), GammaElt::S()) == p);

    // Right action: (P|_g)|_h = P|_{gh}.
    for (int trial = 0; trial < 20; trial++) {
        QPoly q = rand_poly(rng, {5, 3});
        GammaElt g = rand_word(rng, 4), h = rand_word(rng, 4);
        CHECK(sl2_act(sl2_act(q, g), h) == sl2_act(q, g * h));
    }
}

TEST_CASE("partial and pi_d") {
    // d^1 (X1 Y2 - Y1 X2) = 2.
    QPoly w({1, 1});
    w.add_term({1, 0}, 1);
    w.add_term({0, 1}, -1);
    QPoly r = partial_k(w, 1);
    CHECK(r.arity == 1);
    CHECK(r.coeff({0}) == 2);

    // d^0 (X1 Y2) = XY.
    QPoly x1y2 = QPoly::monomial({1, 1}, {1, 0}, 1);
    CHECK(partial_k(x1y2, 0) == QPoly::xy(2, 1, 1));

    // pi_d identities.
    CHECK(pi_d(QPoly::monomial({1, 1}, {1, 1}, 1)) == QPoly::xy(2, 2, 1));
    QPoly s({1, 1});
    s.add_term({1, 1}, 1);
    s.add_term({0, 0}, 1);
    QPoly expect({2});
    expect.add_term({2}, 1);
    expect.add_term({0}, 1);
    CHECK(pi_d(s) == expect);

    // k too large gives zero.
    CHECK(partial_k(QPoly::monomial({1, 1}, {1, 0}, 1), 2).is_zero());
}

TEST_CASE("partial_k equivariance and symmetry") {
    std::mt19937 rng(11);
    auto swap_slots = [](const QPoly& p) {
        QPoly r({p.degree[1], p.degree[0]});
        for (auto& [e, c] : p.coef) r.add_term({e[1], e[0]}, c);
        return r;
    };
    for (int trial = 0; trial < 200; trial++) {
        long d1 = 2 + (trial % 5), d2 = 2 + (trial % 4);
        long k = trial % (std::min(d1, d2) + 1);
        QPoly p = rand_poly(rng, {d1, d2});
        GammaElt g = rand_word(rng, 6);
        CHECK(partial_k(sl2_act(p, g), k) == sl2_act(partial_k(p, k), g));
        if (d1 == d2) {
            QPoly lhs = partial_k(swap_slots(p), k);
            QPoly rhs = partial_k(p, k);
            if (k % 2) rhs = neg(rhs);
            CHECK(lhs == rhs);
        }
    }
    // Full contraction intertwines with epsilon up to (-1)^k:
    // d^k on (P|_eps tensor Q|_eps) equals (-1)^k eps(d^k(P tensor Q)).
    for (int trial = 0; trial < 40; trial++) {
        long d1 = 2 + (trial % 4), d2 = 2 + (trial % 3);
        long k = trial % (std::min(d1, d2) + 1);
        QPoly p = rand_poly(rng, {d1}), q = rand_poly(rng, {d2});
        QPoly lhs = partial_k(tensor(eps_act(p), eps_act(q)), k);
        QPoly rhs = eps_act(partial_k(tensor(p, q), k));
        if (k % 2) rhs = neg(rhs);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("inner product") {
    CHECK(inner(QPoly::xy(2, 2, 1), QPoly::xy(2, 0, 1)) == 1);  // <X^2, Y^2>
    CHECK(inner(QPoly::xy(2, 2, 1), QPoly::xy(2, 2, 1)) == 0);  // <X^2, X^2>
    CHECK(inner(QPoly::xy(2, 1, 1), QPoly::xy(2, 1, 1)) ==
          Rational(-1, 2));  // <XY, XY>

    // <P, (aX+bY)^k> = P(-b, a).
    std::mt19937 rng(3);
    QPoly p = rand_poly(rng, {6});
    long a = 3, b = -2;
    QPoly lin({1});
    lin.add_term({1}, a);
    lin.add_term({0}, b);
    QPoly pw = lin;
    for (int i = 1; i < 6; i++) pw = pw * lin;
    Rational eval(0);
    for (auto& [e, c] : p.coef)
        eval += c * pow_q(Rational(-b), e[0]) * pow_q(Rational(a), 6 - e[0]);
    CHECK(inner(p, pw) == eval);

    // Invariance and graded symmetry.
    for (int trial = 0; trial < 30; trial++) {
        long k = 1 + (trial % 10);
        QPoly u = rand_poly(rng, {k}), v = rand_poly(rng, {k});
        GammaElt g = rand_word(rng, 6);
        CHECK(inner(sl2_act(u, g), sl2_act(v, g)) == inner(u, v));
        Rational sym = inner(v, u);
        if (k % 2) sym = -sym;
        CHECK(inner(u, v) == sym);
    }

    // Full contraction recovers the pairing:
    // d^k(P tensor Q) = (-1)^k (k!)^2 <P,Q>  (check k=1, P=X, Q=Y).
    for (long k = 1; k <= 10; k++) {
        QPoly u = rand_poly(rng, {k}), v = rand_poly(rng, {k});
        QPoly d = partial_k(tensor(u, v), k);
        Rational scale(factorial(k) * factorial(k));
        if (k % 2) scale = -scale;
        CHECK(d.coeff({0}) == scale * inner(u, v));
    }

    // inner_full agrees with iterated slotwise pairing on simple tensors.
    QPoly t1 = tensor(QPoly::xy(2, 2, 1), QPoly::xy(4, 1, 1));
    QPoly t2 = tensor(QPoly::xy(2, 0, 1), QPoly::xy(4, 3, 1));
    Rational expect = inner(QPoly::xy(2, 2, 1), QPoly::xy(2, 0, 1)) *
                      inner(QPoly::xy(4, 1, 1), QPoly::xy(4, 3, 1));
    CHECK(inner_full(t1, t2) == expect);
}

TEST_CASE("epsilon involution") {
    CHECK(eps_act(QPoly::xy(2, 1, 1)) == QPoly::xy(2, 1, -1));  // XY -> -XY
    QPoly s({2});
    s.add_term({2}, 1);
    s.add_term({0}, 1);
    CHECK(eps_act(s) == s);  // X^2 + Y^2 fixed
    std::mt19937 rng(5);
    QPoly p = rand_poly(rng, {7, 4});
    CHECK(eps_act(eps_act(p)) == p);
    CHECK(pi_d(eps_act(p)) == eps_act(pi_d(p)));
}

TEST_CASE("products in disjoint slots commute and associate") {
    std::mt19937 rng(13);
    QPoly a = rand_poly(rng, {3}), b = rand_poly(rng, {2}), c = rand_poly(rng, {4});
    QPoly ab = tensor(a, b), ba = tensor(b, a);
    // As polynomials in disjoint variables, a tensor b and b tensor a agree
    // after relabelling slots.
    QPoly ba_swapped({ab.degree});
    for (auto& [e, v] : ba.coef) ba_swapped.add_term({e[1], e[0]}, v);
    CHECK(ab == ba_swapped);
    CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
    CHECK(tensor(a, tensor_one<Rational>()) == a);
}

TEST_CASE("LinExpr ring") {
    LinExpr a = LinExpr::symbol(4), b = LinExpr::symbol(6);
    LinExpr e = LinExpr(Rational(2, 3)) * a + b + LinExpr(5);
    CHECK(e.sym.at(4) == Rational(2, 3));
    CHECK(e.c == 5);
    CHECK(ring_is_zero(e - e));
    CHECK_THROWS_AS(a * b, std::logic_error);
    // TensorPoly over LinExpr supports the action and pairing.
    TensorPoly<LinExpr> p({2});
    p.add_term({2}, a);
    p.add_term({0}, LinExpr(1));
    TensorPoly<LinExpr> ps = sl2_act(p, GammaElt::S());
    CHECK(ps.coeff({0}) == a);
    CHECK(ps.coeff({2}) == LinExpr(1));
    CHECK(inner(p, p) == a + a);  // <X^2,Y^2> both ways
}
