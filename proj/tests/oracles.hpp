// Test-only reference implementations, kept independent of the library
// code paths they check.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "whq/special.hpp"
#include "whq/windows.hpp"

namespace oracle {

/// Adaptive Simpson quadrature.
inline double simpson_rec(const std::function<double(double)>& f, double a,
                          double b, double fa, double fm, double fb,
                          double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-15) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 60);
}

/// erfc from its defining integral (2/sqrt(pi)) Int_x^inf e^{-t^2} dt,
/// truncated where the tail is below 1e-70.
inline double erfc_quadrature(double x) {
  const double hi = std::max(x, 0.0) + 13.0;
  return 2.0 / std::sqrt(M_PI) *
         integrate([](double t) { return std::exp(-t * t); }, x, hi);
}

/// Exact-rational partial sums of the Gauss hypergeometric series; every
/// intermediate is a ratio of big integers, so the only rounding happens
/// in the final conversion to double.
using BigRat = boost::multiprecision::cpp_rational;

inline double hyp2f1_rational(const BigRat& a, const BigRat& b, const BigRat& c,
                              const BigRat& x, int terms = 220) {
  BigRat term = 1, sum = 1;
  for (int k = 0; k < terms; ++k) {
    term *= (a + k) * (b + k) * x / ((c + k) * (k + 1));
    sum += term;
    if (term == 0) break;
  }
  return static_cast<double>(sum);
}

/// Gauss-Legendre smoothing of g(t) 1_(a,b)(t) with a Gaussian of standard
/// deviation s, evaluated at x: the brute-force route for every wall
/// profile.
inline double smooth_truncated(const std::function<double(double)>& g, double a,
                               double b, double s, double x, int nodes = 400) {
  const whq::GaussLegendre gl(nodes);
  const double lo = std::max(a, x - 10.0 * s), hi = std::min(b, x + 10.0 * s);
  if (lo >= hi) return 0.0;
  return gl.integrate(
      [&](double t) { return g(t) * whq::gauss_pdf(x - t, s); }, lo, hi);
}

/// Brute-force 2-D portrait of f(q',p') chi_(a,b)(q') at one phase-space
/// point: (2 pi hbar)^{-1} Int K(q-q', p-p') f dq' dp' with the Gaussian
/// autocorrelation kernel, quadrature restricted to the interval so the
/// integrand stays smooth.
inline double portrait_point(const std::function<double(double, double)>& f,
                             const whq::GaussianWindow& w, double a, double b,
                             double q, double p, int nodes = 220) {
  const whq::AutocorrKernel K = whq::fs_autocorr_closed(w);
  const double wq = K.support_radius_q(), wp = K.support_radius_p();
  const double qlo = std::max(a, q - wq), qhi = std::min(b, q + wq);
  if (qlo >= qhi) return 0.0;
  const whq::GaussLegendre gl(nodes);
  const double norm = 1.0 / (2.0 * M_PI * w.hbar);
  return gl.integrate(
      [&](double qp) {
        return gl.integrate(
            [&](double pp) { return K(q - qp, p - pp) * f(qp, pp) * norm; },
            p - wp, p + wp);
      },
      qlo, qhi);
}

/// Five-point central first derivative.
template <typename F>
double deriv5(F&& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) /
         (12.0 * h);
}

}  // namespace oracle
