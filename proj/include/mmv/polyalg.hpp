#pragma once
// Algebra of homogeneous-polynomial models of SL2 representations and their
// tensor products: the right SL2 action, contraction operators, the invariant
// pairing and the epsilon involution.  The coefficient ring is generic so the
// same code serves exact rationals, rationals with formal symbols, and balls.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmv/bigmath.hpp"
#include "mmv/rational.hpp"

namespace mmv {

// ---------------------------------------------------------------------------
// Coefficient-ring helpers.  A ring K must support +, -, *, ==, default
// construction to zero; these shims supply "is zero" and "from rational".
// ---------------------------------------------------------------------------

inline bool ring_is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool ring_is_zero(const BigC& x) {
    return mpfr_zero_p(x.re.v) && mpfr_zero_p(x.im.v) && x.re.rad.is_zero() &&
           x.im.rad.is_zero();
}

template <class K>
struct RingTraits;

template <>
struct RingTraits<Rational> {
    static Rational from_q(const Rational& q) { return q; }
};
template <>
struct RingTraits<BigC> {
    static BigC from_q(const Rational& q) { return BigC::from_mpq(q); }
};

// Rational constants extended by formal symbols a_{2k}: elements c + sum
// coeff[2k] * a_{2k}.  Products of two symbol-bearing elements are rejected;
// the linear solves this ring exists for never produce them.
struct LinExpr {
    Rational c;
    std::map<long, Rational> sym;

    LinExpr() : c(0) {}
    LinExpr(const Rational& q) : c(q) {}
    LinExpr(long n) : c(n) {}
    static LinExpr symbol(long idx) {
        LinExpr e;
        e.sym[idx] = 1;
        return e;
    }

    bool is_constant() const { return sym.empty(); }

    LinExpr& operator+=(const LinExpr& o) {
        c += o.c;
        for (auto& [k, v] : o.sym) {
            Rational& r = sym[k];
            r += v;
            if (sgn(r) == 0) sym.erase(k);
        }
        return *this;
    }
    LinExpr& operator-=(const LinExpr& o) {
        c -= o.c;
        for (auto& [k, v] : o.sym) {
            Rational& r = sym[k];
            r -= v;
            if (sgn(r) == 0) sym.erase(k);
        }
        return *this;
    }
    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
    friend LinExpr operator-(const LinExpr& a) {
        LinExpr r;
        r.c = -a.c;
        for (auto& [k, v] : a.sym) r.sym[k] = -v;
        return r;
    }
    friend LinExpr operator*(const LinExpr& a, const LinExpr& b) {
        if (!a.is_constant() && !b.is_constant())
            throw std::logic_error("LinExpr: product of two non-constant elements");
        const LinExpr& lin = a.is_constant() ? b : a;
        const Rational& q = a.is_constant() ? a.c : b.c;
        LinExpr r;
        r.c = lin.c * q;
        if (sgn(q) != 0)
            for (auto& [k, v] : lin.sym) r.sym[k] = v * q;
        return r;
    }
    friend bool operator==(const LinExpr& a, const LinExpr& b) {
        return a.c == b.c && a.sym == b.sym;
    }
    std::string str() const {
        std::string s = c.get_str();
        for (auto& [k, v] : sym)
            s += " + (" + v.get_str() + ")*a" + std::to_string(k);
        return s;
    }
};

inline bool ring_is_zero(const LinExpr& x) {
    return sgn(x.c) == 0 && x.sym.empty();
}
template <>
struct RingTraits<LinExpr> {
    static LinExpr from_q(const Rational& q) { return LinExpr(q); }
};

// ---------------------------------------------------------------------------
// GammaElt: 2x2 integer matrix of determinant 1.
// ---------------------------------------------------------------------------

struct GammaElt {
    Integer a, b, c, d;

    GammaElt() : a(1), b(0), c(0), d(1) {}
    GammaElt(Integer a_, Integer b_, Integer c_, Integer d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (a * d - b * c != 1)
            throw std::invalid_argument("GammaElt: determinant must be 1");
    }

    static GammaElt identity() { return GammaElt(); }
    static GammaElt S() { return GammaElt(0, -1, 1, 0); }
    static GammaElt T() { return GammaElt(1, 1, 0, 1); }
    static GammaElt Tinv() { return GammaElt(1, -1, 0, 1); }
    static GammaElt U() { return T() * S(); }  // U = TS, so U^3 = -1

    friend GammaElt operator*(const GammaElt& x, const GammaElt& y) {
        return GammaElt(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                        x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
    }
    GammaElt inverse() const { return GammaElt(d, -b, -c, a); }
    friend bool operator==(const GammaElt& x, const GammaElt& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator<(const GammaElt& x, const GammaElt& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        if (x.c != y.c) return x.c < y.c;
        return x.d < y.d;
    }
    std::string str() const {
        return "[" + a.get_str() + "," + b.get_str() + ";" + c.get_str() + "," +
               d.get_str() + "]";
    }
};

// ---------------------------------------------------------------------------
// TensorPoly: multi-homogeneous polynomial in variable pairs (X_i, Y_i).
// Per slot i only the X-exponent is stored; the Y-exponent is degree[i] minus
// it.  Exponents may leave [0, degree[i]] (Laurent monomials), which the
// trivialisation machinery needs; operations that require genuine polynomials
// check for that.
// ---------------------------------------------------------------------------

template <class K>
struct TensorPoly {
    int arity = 0;
    std::vector<long> degree;               // homogeneous degree per slot
    std::map<std::vector<long>, K> coef;    // X-exponents per slot -> coeff

    TensorPoly() = default;
    explicit TensorPoly(std::vector<long> degs)
        : arity((int)degs.size()), degree(std::move(degs)) {}

    bool is_zero() const { return coef.empty(); }

    // Monomial constructor: coefficient * prod X_i^{xexp[i]} Y_i^{deg[i]-xexp[i]}.
    static TensorPoly monomial(std::vector<long> degs, std::vector<long> xexp,
                               K c) {
        TensorPoly p(std::move(degs));
        if (!ring_is_zero(c)) p.coef.emplace(std::move(xexp), std::move(c));
        return p;
    }
    // Arity-1 convenience: c * X^i Y^{d-i}.
    static TensorPoly xy(long d, long i, K c) {
        return monomial({d}, {i}, std::move(c));
    }

    void add_term(const std::vector<long>& xexp, const K& c) {
        if (ring_is_zero(c)) return;
        auto it = coef.find(xexp);
        if (it == coef.end()) {
            coef.emplace(xexp, c);
        } else {
            it->second += c;
            if (ring_is_zero(it->second)) coef.erase(it);
        }
    }

    K coeff(const std::vector<long>& xexp) const {
        auto it = coef.find(xexp);
        return it == coef.end() ? K() : it->second;
    }

    bool shape_matches(const TensorPoly& o) const {
        return arity == o.arity && degree == o.degree;
    }

    TensorPoly& operator+=(const TensorPoly& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) return *this = o;
        if (!shape_matches(o))
            throw std::invalid_argument("TensorPoly: shape mismatch in +");
        for (auto& [e, c] : o.coef) add_term(e, c);
        return *this;
    }
    TensorPoly& operator-=(const TensorPoly& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) return *this = neg(o);
        if (!shape_matches(o))
            throw std::invalid_argument("TensorPoly: shape mismatch in -");
        for (auto& [e, c] : o.coef) add_term(e, K() - c);
        return *this;
    }
    friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) {
        return a += b;
    }
    friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) {
        return a -= b;
    }
    friend TensorPoly neg(const TensorPoly& a) {
        TensorPoly r(a.degree);
        for (auto& [e, c] : a.coef) r.coef.emplace(e, K() - c);
        return r;
    }

    friend TensorPoly operator*(const TensorPoly& a, const K& s) {
        TensorPoly r(a.degree);
        if (ring_is_zero(s)) return r;
        for (auto& [e, c] : a.coef) r.add_term(e, c * s);
        return r;
    }
    TensorPoly scaled_q(const Rational& q) const {
        return *this * RingTraits<K>::from_q(q);
    }

    // Product of two polynomials on the same slots (degrees add slotwise).
    friend TensorPoly operator*(const TensorPoly& a, const TensorPoly& b) {
        if (a.is_zero() || b.is_zero())
            return TensorPoly();
        if (a.arity != b.arity)
            throw std::invalid_argument("TensorPoly: arity mismatch in *");
        std::vector<long> degs(a.degree);
        for (int i = 0; i < a.arity; i++) degs[i] += b.degree[i];
        TensorPoly r(degs);
        std::vector<long> e(a.arity);
        for (auto& [ea, ca] : a.coef)
            for (auto& [eb, cb] : b.coef) {
                for (int i = 0; i < a.arity; i++) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend bool operator==(const TensorPoly& a, const TensorPoly& b) {
        if (a.is_zero() && b.is_zero()) return true;
        return a.shape_matches(b) && a.coef == b.coef;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (auto& [e, c] : coef) {
            if (!s.empty()) s += " + ";
            s += "(" + coeff_str(c) + ")";
            for (int i = 0; i < arity; i++) {
                std::string suf = arity == 1 ? "" : std::to_string(i + 1);
                if (e[i] != 0)
                    s += "*X" + suf + "^" + std::to_string(e[i]);
                if (degree[i] - e[i] != 0)
                    s += "*Y" + suf + "^" + std::to_string(degree[i] - e[i]);
            }
        }
        return s;
    }

private:
    static std::string coeff_str(const Rational& c) { return c.get_str(); }
    static std::string coeff_str(const LinExpr& c) { return c.str(); }
    static std::string coeff_str(const BigC& c) { return c.to_string(12); }
};

// Tensor product: slots of b appended after slots of a.
template <class K>
TensorPoly<K> tensor(const TensorPoly<K>& a, const TensorPoly<K>& b) {
    if (a.is_zero() || b.is_zero()) return TensorPoly<K>();
    std::vector<long> degs(a.degree);
    degs.insert(degs.end(), b.degree.begin(), b.degree.end());
    TensorPoly<K> r(degs);
    std::vector<long> e(a.arity + b.arity);
    for (auto& [ea, ca] : a.coef)
        for (auto& [eb, cb] : b.coef) {
            std::copy(ea.begin(), ea.end(), e.begin());
            std::copy(eb.begin(), eb.end(), e.begin() + a.arity);
            r.add_term(e, ca * cb);
        }
    return r;
}

// The constant 1 as an arity-0 tensor (unit for tensor()).
template <class K>
TensorPoly<K> tensor_one() {
    TensorPoly<K> r(std::vector<long>{});
    r.coef.emplace(std::vector<long>{}, RingTraits<K>::from_q(1));
    return r;
}

// Reorder tensor slots: slot i of the result is slot perm[i] of the input.
template <class K>
TensorPoly<K> permute_slots(const TensorPoly<K>& p,
                            const std::vector<int>& perm) {
    if ((int)perm.size() != p.arity)
        throw std::invalid_argument("permute_slots: size mismatch");
    if (p.is_zero() || p.arity <= 1) return p;
    std::vector<long> degs(p.arity);
    for (int i = 0; i < p.arity; i++) degs[i] = p.degree[perm[i]];
    TensorPoly<K> r(degs);
    std::vector<long> e(p.arity);
    for (auto& [ee, c] : p.coef) {
        for (int i = 0; i < p.arity; i++) e[i] = ee[perm[i]];
        r.add_term(e, c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Right SL2 action: P|_g = P(aX + bY, cX + dY), applied in every slot.
// ---------------------------------------------------------------------------

template <class K>
TensorPoly<K> sl2_act(const TensorPoly<K>& p, const GammaElt& g) {
    if (p.is_zero()) return p;
    TensorPoly<K> r(p.degree);
    // Per-slot expansion caches: (aX+bY)^m and (cX+dY)^m as maps xexp -> coeff.
    auto binom_pow = [](const Integer& u, const Integer& v, long m) {
        // (u X + v Y)^m -> vector index i gives coeff of X^i Y^{m-i}.
        std::vector<Integer> out(m + 1);
        for (long i = 0; i <= m; i++)
            out[i] = binomial(m, i) * pow_int(u, i) * pow_int(v, m - i);
        return out;
    };
    for (auto& [e, c] : p.coef) {
        // Accumulate the product over slots of the substituted monomial.
        std::vector<std::vector<Integer>> slot_coeffs(p.arity);
        for (int i = 0; i < p.arity; i++) {
            long xe = e[i], ye = p.degree[i] - xe;
            if (xe < 0 || ye < 0)
                throw std::domain_error("sl2_act: Laurent monomial");
            auto px = binom_pow(g.a, g.b, xe);   // (aX+bY)^xe
            auto py = binom_pow(g.c, g.d, ye);   // (cX+dY)^ye
            std::vector<Integer> conv(p.degree[i] + 1);
            for (long s = 0; s <= xe; s++)
                for (long t = 0; t <= ye; t++) conv[s + t] += px[s] * py[t];
            slot_coeffs[i] = std::move(conv);
        }
        // Expand the outer product of slots.
        std::vector<long> idx(p.arity, 0);
        while (true) {
            Integer m = 1;
            for (int i = 0; i < p.arity; i++) m *= slot_coeffs[i][idx[i]];
            if (m != 0)
                r.add_term(idx, c * RingTraits<K>::from_q(Rational(m)));
            int i = p.arity - 1;
            for (; i >= 0; i--) {
                if (++idx[i] <= p.degree[i]) break;
                idx[i] = 0;
            }
            if (i < 0) break;
        }
    }
    return r;
}

// Epsilon involution (X, Y) -> (X, -Y) in every slot.
template <class K>
TensorPoly<K> eps_act(const TensorPoly<K>& p) {
    TensorPoly<K> r(p.degree);
    for (auto& [e, c] : p.coef) {
        long ysum = 0;
        for (int i = 0; i < p.arity; i++) ysum += p.degree[i] - e[i];
        r.coef.emplace(e, (ysum % 2) ? K() - c : c);
    }
    return r;
}

// Projection onto the diagonal: every (X_i, Y_i) -> (X, Y).
template <class K>
TensorPoly<K> pi_d(const TensorPoly<K>& p) {
    if (p.arity == 1) return p;
    long dsum = 0;
    for (long d : p.degree) dsum += d;
    TensorPoly<K> r({dsum});
    for (auto& [e, c] : p.coef) {
        long xsum = 0;
        for (long x : e) xsum += x;
        r.add_term({xsum}, c);
    }
    return r;
}

// The operator d12 = dX1 dY2 - dY1 dX2 on arity-2 polynomials.
template <class K>
TensorPoly<K> partial12(const TensorPoly<K>& p) {
    if (p.arity != 2)
        throw std::invalid_argument("partial12: arity-2 input required");
    TensorPoly<K> r({p.degree[0] - 1, p.degree[1] - 1});
    for (auto& [e, c] : p.coef) {
        long x1 = e[0], y1 = p.degree[0] - e[0];
        long x2 = e[1], y2 = p.degree[1] - e[1];
        if (x1 > 0 && y2 > 0)
            r.add_term({x1 - 1, x2},
                       c * RingTraits<K>::from_q(Rational(x1 * y2)));
        if (y1 > 0 && x2 > 0)
            r.add_term({x1, x2 - 1},
                       c * RingTraits<K>::from_q(Rational(-y1 * x2)));
    }
    return r;
}

// partial_k = pi_d (d12)^k, lowering an arity-2 input of degrees (d1, d2) to a
// single slot of degree d1 + d2 - 2k.  k beyond min(d1, d2) yields zero.
template <class K>
TensorPoly<K> partial_k(const TensorPoly<K>& p, long k) {
    if (p.arity != 2)
        throw std::invalid_argument("partial_k: arity-2 input required");
    if (k < 0) throw std::invalid_argument("partial_k: k < 0");
    if (k > std::min(p.degree[0], p.degree[1]))
        return TensorPoly<K>({p.degree[0] + p.degree[1] - 2 * k});
    TensorPoly<K> q = p;
    for (long i = 0; i < k; i++) q = partial12(q);
    return pi_d(q);
}

// Invariant pairing on a single slot of degree k:
//   <X^i Y^{k-i}, X^j Y^{k-j}> = (-1)^i i!(k-i)!/k! when i + j = k,
// equivalently <P, (aX+bY)^k> = P(-b, a).
template <class K>
K inner(const TensorPoly<K>& p, const TensorPoly<K>& q) {
    if (p.is_zero() || q.is_zero()) return K();
    if (p.arity != 1 || q.arity != 1 || p.degree[0] != q.degree[0])
        throw std::invalid_argument("inner: need equal-degree arity-1 inputs");
    long k = p.degree[0];
    K acc{};
    for (auto& [e, cp] : p.coef) {
        long i = e[0];
        if (i < 0 || i > k) throw std::domain_error("inner: Laurent monomial");
        auto it = q.coef.find({k - i});
        if (it == q.coef.end()) continue;
        Rational w((i % 2) ? -1 : 1);
        w *= Rational(factorial(i) * factorial(k - i)) / Rational(factorial(k));
        acc += cp * it->second * RingTraits<K>::from_q(w);
    }
    return acc;
}

// Slotwise invariant pairing of two tensors of identical shape.
template <class K>
K inner_full(const TensorPoly<K>& p, const TensorPoly<K>& q) {
    if (p.is_zero() || q.is_zero()) return K();
    if (!p.shape_matches(q))
        throw std::invalid_argument("inner_full: shape mismatch");
    K acc{};
    for (auto& [e, cp] : p.coef) {
        std::vector<long> comp(p.arity);
        Rational w(1);
        bool sign = false;
        for (int i = 0; i < p.arity; i++) {
            long a = e[i], k = p.degree[i];
            if (a < 0 || a > k)
                throw std::domain_error("inner_full: Laurent monomial");
            comp[i] = k - a;
            if (a % 2) sign = !sign;
            w *= Rational(factorial(a) * factorial(k - a)) /
                 Rational(factorial(k));
        }
        auto it = q.coef.find(comp);
        if (it == q.coef.end()) continue;
        if (sign) w = -w;
        acc += cp * it->second * RingTraits<K>::from_q(w);
    }
    return acc;
}

}  // namespace mmv
