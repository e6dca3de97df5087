#pragma once

#include <cmath>
#include <cstdint>

// Special functions used by the closed-form bounds: regularized incomplete
// gamma (both orientations), log-space variants for deep-tail arguments, and
// Poisson tails summed directly so the Gamma/Poisson identity can be checked
// through two genuinely different computations.

namespace fpp {

// P(a,x) = gamma(a,x)/Gamma(a): series for x < a+1, continued fraction
// otherwise (Lentz).  Requires a > 0, x >= 0.
double gamma_lower_regularized(double a, double x);

// Q(a,x) = 1 - P(a,x), computed on whichever branch is stable.
double gamma_upper_regularized(double a, double x);

// log P(a,x), exact deep into the left tail where P underflows.
double log_gamma_lower_regularized(double a, double x);

// P(Poisson(w) >= k) by direct stable summation (head sum when the tail is
// heavy, tail sum otherwise).  k >= 0; w >= 0.
double poisson_upper_tail(double w, std::int64_t k);

// CDF of a sum of k mean-1 exponentials, P(Gamma(k) <= x).
inline double gamma_cdf(double k, double x) { return gamma_lower_regularized(k, x); }

// Gamma(k,1) density x^{k-1} e^{-x} / Gamma(k).
double gamma_pdf(double k, double x);

// log of the falling factorial n (n-1) ... (n-k+1).
double log_falling_factorial(double n, std::int64_t k);

namespace detail {

inline double simpson_estimate(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double simpson_recurse(const F& f, double a, double fa, double b, double fb,
                       double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson_estimate(a, fa, m, fm, flm);
  const double right = simpson_estimate(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature on [a,b] with absolute tolerance.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = detail::simpson_estimate(a, fa, b, fb, fm);
  return detail::simpson_recurse(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

}  // namespace fpp
