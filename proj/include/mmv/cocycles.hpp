#pragma once

// Cocycles attached to the generating series of regularized iterated
// integrals: the value on S is assembled numerically from integrals to the
// cusp, the value on T is exact and is computed both by direct integration
// along the tangent space and from a closed commutative generating series.
// Also provides the formal trivialiser of the T-value over Laurent
// coefficients and the solution of the length-two mixing coefficients.

#include <map>

#include "mmv/cohom.hpp"
#include "mmv/eichler.hpp"

namespace mmv {

// Global orientation constants.  The path defining the T-value runs from -1
// to 0 on the tangent space at the cusp, which fixes every sign below.
// Relative to that choice:
//  * the rational cocycle zagier_e0 enters the comparison with the
//    abelianized S-value with a minus sign,
//  * the exact length-one T-coefficients are minus the closed form
//    b_{2k}/(4k(2k-1)) * ((X+Y)^{2k-1} - X^{2k-1})/Y.
inline constexpr int eis_cocycle_sign = -1;
inline constexpr int kappa_sign = -1;

// Orientation of the length-two mixing solve relative to the raw projection
// (partial_k)^r; fixed by requiring the closed Bernoulli-quotient form, and
// uniform across all weight pairs.
inline constexpr int lambda_proj_sign = -1;

// Value on S: I(i; infinity)|_S^{-1} * I(i; infinity), with base point
// tau0 = i * par.tau_im (the relations require the S-fixed point i).
NCSeries<BigC> canonical_C_S(const std::vector<FormLabel>& alphabet,
                             const IntParams& par);

// Value on T: iterated integral of the tangential parts from -1 to 0.
// Coefficients are rational; the coefficient of a word w carries an implicit
// factor (2 pi i)^word_prefactor_exp(w).  Words with a cusp-form letter
// vanish.
NCSeries<Rational> canonical_C_T_exact(const std::vector<FormLabel>& alphabet,
                                       int L);

// Numeric version of the T-value with the 2 pi i powers reinstated.
NCSeries<BigC> canonical_C_T(const std::vector<FormLabel>& alphabet, int L,
                             long prec);

// kappa(w): the exact rational coefficient of w in the T-value (the power of
// 2 pi i stripped).
TensorPoly<Rational> kappa(const Word& w);

// Closed form for the length-one coefficient at weight 2k:
//   b_{2k}/(4k(2k-1)) * ((X+Y)^{2k-1} - X^{2k-1})/Y.
// kappa of the corresponding word equals kappa_sign times this.
TensorPoly<Rational> kappa_e_closed(long weight);

// Rescaling of an Eisenstein letter of weight 2k that makes the T-value's
// coefficients rational without prefactors: the coefficient of a word in the
// normalized alphabet is kappa(w) times the product of
// tilde_factor = -4k / (b_{2k} (2k-2)!) over its letters.
Rational tilde_factor(const FormLabel& f);
TensorPoly<Rational> c_T_tilde(const Word& w);

// The same normalized coefficient from the closed generating series: the
// coefficient of s_1^{2k_1-2} ... s_n^{2k_n-2} in
//   e^{s_1 X_1 + ... + s_n X_n} *
//   sum_{i=0}^n (-1)^{n-i} e^{z_1+...+z_i} / (piL(z_1..z_i) piR(z_{i+1}..z_n))
// where z_j = s_j Y_j, piL(z_1..z_m) = (z_1+..+z_m)(z_2+..+z_m)...z_m and
// piR(z_1..z_m) = z_1(z_1+z_2)...(z_1+..+z_m).  Independent of the
// integrator; words with a cusp-form letter are rejected.
TensorPoly<Rational> c_T_tilde_closed(const Word& w);

// ---------------------------------------------------------------------------
// Formal trivialiser of the T-value
// ---------------------------------------------------------------------------

// Series V over the normalized alphabet whose coefficient on a word of slot
// degrees (a_1..a_n) is the expansion of
//   e^{s_1 X_1 + ... + s_n X_n} / prod_{i=1}^n (s_i Y_i + ... + s_n Y_n)
// in the sector s_1 << ... << s_n.  Coefficients are Laurent: negative Y
// exponents appear in the last slot only.
NCSeries<Rational> trivialiser_V(const std::vector<FormLabel>& alphabet,
                                 int L);

// X_i -> X_i + Y_i in every slot.  Valid on Laurent coefficients, where the
// generic group action is not defined.
TensorPoly<Rational> act_T_laurent(const TensorPoly<Rational>& p);
NCSeries<Rational> nc_act_T(const NCSeries<Rational>& a);

// ---------------------------------------------------------------------------
// Length-two mixing coefficients
// ---------------------------------------------------------------------------

// For the pair of Eisenstein weights (2m, 2n), the coefficients lambda^{m,n}_K
// determined by requiring that
//   d^r(kappa_{2m} (x) a_{2n} Y^{2n-2} - a_{2m} Y^{2m-2} (x) kappa_{2n})
//     - lambda_K (r!)^2 lambda_proj_sign kappa_{2K},   K = m + n - r - 1,
// lies in the image of T - 1 (equivalently its pure-X part vanishes), for
// every r with K >= 2.  The (r!)^2 matches the normalization that turns d^r
// into the invariant pairing.  Entries use the formal symbols a_{2k} of
// LinExpr, keyed by K; values that vanish are omitted.
std::map<long, LinExpr> solve_lambda(long m, long n);

// Closed form: lambda^{m,n}_K is nonzero only for K = n - m + 1 (with m < n),
// where it equals (n-m+1)/n * C(2n-2, 2n-2m) * b_{2n}/b_{2n-2m+2} * a_{2m}.
LinExpr lambda_closed(long m, long n, long K);

}  // namespace mmv
