#include "whq/special.hpp"

#include <cmath>
#include <cstdlib>

#include "whq/errors.hpp"

namespace whq {

double erfc(double x) {
  // libm's erfc is correctly rounded to a couple of ulp across the
  // needed range and saturates cleanly: erfc(-10) == 2, erfc(27) == 0.
  return std::erfc(x);
}

double pochhammer(double a, int s) {
  if (s < 0) throw DomainError("pochhammer: order must be >= 0");
  double acc = 1.0;
  for (int k = 0; k < s; ++k) acc *= a + k;
  return acc;
}

Hyp2F1Result gauss_2f1_full(double a, double b, double c, double x) {
  if (!(std::abs(x) < 1.0))
    throw DomainError("gauss_2f1: series requires |x| < 1");
  if (c <= 0.0 && c == std::floor(c))
    throw DomainError("gauss_2f1: c must not be a non-positive integer");

  constexpr double kTol = 1e-12;
  constexpr int kMaxTerms = 500;

  double term = 1.0, sum = 1.0;
  int k = 0;
  double rel = 1.0;
  while (k < kMaxTerms) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    sum += term;
    ++k;
    rel = std::abs(term) / std::max(std::abs(sum), 1e-300);
    if (rel < kTol) break;
    if (term == 0.0) {  // terminating series (a or b a non-positive integer)
      rel = 0.0;
      break;
    }
  }
  return {sum, rel, k};
}

double gauss_2f1(double a, double b, double c, double x) {
  return gauss_2f1_full(a, b, c, x).value;
}

GaussLegendre::GaussLegendre(int n) {
  if (n < 1) throw DomainError("GaussLegendre: need n >= 1");
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration on P_n from the Chebyshev initial guess; nodes come
  // out symmetric, which keeps downstream reductions order-stable.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

double gauss_pdf(double u, double s) {
  return std::exp(-u * u / (2.0 * s * s)) / (s * std::sqrt(2.0 * M_PI));
}

}  // namespace whq
