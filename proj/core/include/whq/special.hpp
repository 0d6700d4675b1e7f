#pragma once

#include <utility>
#include <vector>

namespace whq {

/// Complementary error function. Total on the reals; relative accuracy
/// better than 1e-14 on |x| <= 10, saturating to 2 (resp. 0) far left
/// (resp. right) of that range.
double erfc(double x);

/// Rising factorial a (a+1) ... (a+s-1); equals 1 for s = 0.
double pochhammer(double a, int s);

struct Hyp2F1Result {
  double value = 0.0;
  double rel_err = 0.0;  // last-term estimate of the truncation error
  int terms = 0;
};

/// Gauss hypergeometric series 2F1(a, b; c; x), summed directly to a
/// relative tolerance of 1e-12 or 500 terms, whichever comes first.
/// Requires |x| < 1 and c not a non-positive integer (DomainError).
Hyp2F1Result gauss_2f1_full(double a, double b, double c, double x);
double gauss_2f1(double a, double b, double c, double x);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
  explicit GaussLegendre(int n);

  /// Integrate f over [lo, hi].
  template <typename F>
  double integrate(F&& f, double lo, double hi) const {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
      acc += weights[k] * f(mid + half * nodes[k]);
    return acc * half;
  }
};

/// Standard normal density scaled to standard deviation s.
double gauss_pdf(double u, double s);

}  // namespace whq
