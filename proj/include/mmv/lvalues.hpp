#pragma once
// Completed L-values of level-one eigenforms.
//
// For a cusp eigenform f of weight 2k the completed L-function
// Lambda(f,s) = (2 pi)^{-s} Gamma(s) L(f,s) is entire and is computed by the
// rapidly convergent incomplete-gamma series
//   Lambda(f,s) = sum_{n <= N} a_n [ (2 pi n)^{-s}  Gamma(s, 2 pi n)
//                      + (-1)^k (2 pi n)^{s-2k} Gamma(2k-s, 2 pi n) ],
// with a rigorous tail bound from |a_n| <= d(n) n^{(2k-1)/2} folded into the
// radius.  For Eisenstein series L(E_{2k},s) = zeta(s) zeta(s-2k+1) and the
// completed value is just a product of classical factors.

#include "mmv/bigmath.hpp"
#include "mmv/modforms.hpp"
#include "mmv/polyalg.hpp"

namespace mmv {

// Lambda(f,s) for a cusp eigenform, s an arbitrary complex ball.  Throws if
// the series tail bound at the given N cannot reach ~prec bits.
BigC lambda_cusp(const FormLabel& f, const BigC& s, long N = 64, long prec = 0);

// Lambda(E_{2k},s) = (2 pi)^{-s} Gamma(s) zeta(s) zeta(s-2k+1) at an exact
// rational s.  Throws at (and only at) the points where the product route
// breaks down: s <= 0, s = 1 and s = 2k.
BigC lambda_eisenstein(long weight, const Rational& s, long prec = 0);

// The period polynomial of a cusp eigenform of weight 2k: the value on S of
// its abelianized cocycle,
//   (2 pi i)^{2k-1} i sum_{r=1}^{2k-1} (-i)^{r-1} C(2k-2,r-1) Lambda(f,r)
//                                       X^{2k-1-r} Y^{r-1},
// i.e. the Fourier expansion of (2 pi i)^{2k-1} int_0^{i inf} f (X-tau Y)^{2k-2} dtau.
TensorPoly<BigC> critical_period_polynomial(const FormLabel& f, long prec = 0);

}  // namespace mmv
