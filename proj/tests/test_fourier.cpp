#include <cmath>

#include "doctest.h"
#include "whq/errors.hpp"
#include "whq/fourier.hpp"

using namespace whq;

namespace {

PhaseField gaussian_field(const PhaseGrid& g, double sq, double sp) {
  return PhaseField::sample(g, [=](double q, double p) {
    return std::exp(-q * q / (2.0 * sq * sq) - p * p / (2.0 * sp * sp));
  });
}

}  // namespace

TEST_CASE("fourier1: Gaussian pair and round trip") {
  const double hbar = 0.7, s = 1.3;
  const Grid1D g = Grid1D::centered(14.0, 256);
  Eigen::ArrayXcd f(g.n);
  for (int j = 0; j < g.n; ++j) {
    const double x = g.point(j);
    f[j] = std::exp(-x * x / (2.0 * s * s));
  }
  const Grid1D k = g.dual(hbar);
  const Eigen::ArrayXcd F = fourier1(f, g, hbar);

  // F[e^{-x^2/2s^2}](k) = (s/sqrt(hbar)) e^{-s^2 k^2 / 2 hbar^2}
  for (int m = 0; m < k.n; m += 7) {
    const double kk = k.point(m);
    const double expect =
        s / std::sqrt(hbar) * std::exp(-s * s * kk * kk / (2.0 * hbar * hbar));
    CHECK(F[m].real() == doctest::Approx(expect).epsilon(1e-10));
    CHECK(std::abs(F[m].imag()) < 1e-12);  // even input -> real transform
  }

  const Eigen::ArrayXcd back = fourier1_bar(F, k, hbar);
  double resid = 0.0;
  for (int j = 0; j < g.n; ++j) resid = std::max(resid, std::abs(back[j] - f[j]));
  CHECK(resid < 1e-10);
}

TEST_CASE("convolve1: Gaussian widths add in quadrature") {
  const Grid1D g = Grid1D::centered(16.0, 512);
  const double s1 = 0.8, s2 = 1.1;
  Eigen::ArrayXd f(g.n), h(g.n);
  for (int j = 0; j < g.n; ++j) {
    const double x = g.point(j);
    f[j] = std::exp(-x * x / (2.0 * s1 * s1));
    h[j] = std::exp(-x * x / (2.0 * s2 * s2));
  }
  const Eigen::ArrayXd c = convolve1(f, h, g);
  const double s12 = std::sqrt(s1 * s1 + s2 * s2);
  const double amp = std::sqrt(2.0 * M_PI) * s1 * s2 / s12;
  for (int j = 100; j < g.n - 100; j += 31) {
    const double x = g.point(j);
    const double expect = amp * std::exp(-x * x / (2.0 * s12 * s12));
    CHECK(c[j] == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("sympl_ft: coherent-state Gaussian closed form") {
  // For Pi_l(q,p) = e^{-q^2/4l^2} e^{-p^2/4w^2} with l*w = hbar the
  // transform is 2 e^{-q^2/l^2 - p^2/w^2}: this anchor pins every phase
  // and axis-swap convention in the implementation.
  const double hbar = 1.0, ell = 1.0, wp = hbar / ell;
  const PhaseGrid g = PhaseGrid::self_dual(12.0, 128, hbar);
  const PhaseField pi = PhaseField::sample(g, [=](double q, double p) {
    return std::exp(-q * q / (4.0 * ell * ell) - p * p / (4.0 * wp * wp));
  });
  const PhaseField F = sympl_ft(pi);
  CHECK_FALSE(F.edge_leakage);
  double worst = 0.0;
  for (int i = 0; i < g.q.n; i += 5) {
    for (int j = 0; j < g.p.n; j += 5) {
      const double q = g.q.point(i), p = g.p.point(j);
      const double expect =
          2.0 * std::exp(-q * q / (ell * ell) - p * p / (wp * wp));
      worst = std::max(worst, std::abs(F.data(i, j).real() - expect));
      worst = std::max(worst, std::abs(F.data(i, j).imag()));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("sympl_ft: separable Gaussian closed form at the peak") {
  const double hbar = 1.0, sl = 1.4, sp = 0.9;
  const PhaseGrid g = PhaseGrid::self_dual(14.0, 128, hbar);
  const PhaseField pi = gaussian_field(g, sl, sp);
  const PhaseField F = sympl_ft(pi);
  const double peak = sl * sp / hbar;
  // peak sits at the origin index (n/2, n/2)
  const int i0 = g.q.n / 2, j0 = g.p.n / 2;
  CHECK(F.data(i0, j0).real() == doctest::Approx(peak).epsilon(1e-6));
  const double q = g.q.point(i0 + 6), p = g.p.point(j0 - 4);
  const double expect = peak * std::exp(-sp * sp * q * q / (2.0 * hbar * hbar) -
                                        sl * sl * p * p / (2.0 * hbar * hbar));
  CHECK(F.data(i0 + 6, j0 - 4).real() == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("sympl_ft: involution") {
  const PhaseGrid g = PhaseGrid::self_dual(12.0, 128, 1.0);
  PhaseField f = PhaseField::sample(g, [](double q, double p) {
    return (q + 0.3) * std::exp(-0.4 * (q * q + p * p)) +
           0.2 * std::exp(-0.7 * ((q - 1) * (q - 1) + p * p));
  });
  const PhaseField ff = sympl_ft(sympl_ft(f));
  CHECK(ff.max_abs_diff(f) < 1e-8);
}

TEST_CASE("sympl_ft of 1 approximates 2 pi hbar delta") {
  const PhaseGrid g = PhaseGrid::self_dual(10.0, 64, 1.0);
  PhaseField one = PhaseField::sample(g, [](double, double) { return 1.0; });
  const PhaseField F = sympl_ft(one);
  CHECK(F.edge_leakage);  // constant field cannot decay at the edges
  // Discretized 2 pi hbar delta(q,p) has height 2 pi hbar/(dq dp) = n at
  // the origin and ~0 elsewhere.
  const int i0 = g.q.n / 2;
  CHECK(F.data(i0, i0).real() == doctest::Approx(g.q.n).epsilon(1e-9));
  CHECK(std::abs(F.data(i0 + 3, i0 - 2)) < 1e-8 * g.q.n);
}

TEST_CASE("sympl_ft_reflected: parity relations") {
  const PhaseGrid g = PhaseGrid::self_dual(12.0, 128, 1.0);
  // Even input: the two transforms agree.
  const PhaseField even = gaussian_field(g, 1.0, 1.2);
  CHECK(sympl_ft_reflected(even).max_abs_diff(sympl_ft(even)) < 1e-12);

  // q * Gaussian: reflected transform equals the parity image.
  PhaseField odd = PhaseField::sample(g, [](double q, double p) {
    return q * std::exp(-0.5 * (q * q + p * p));
  });
  const PhaseField a = sympl_ft_reflected(odd);
  const PhaseField b = sympl_ft(odd).parity();
  CHECK(a.max_abs_diff(b) < 1e-9);

  // Composition is the parity operator.
  PhaseField f = PhaseField::sample(g, [](double q, double p) {
    return (q - 0.5 * p) * std::exp(-0.45 * (q * q + p * p));
  });
  const PhaseField round = sympl_ft_reflected(sympl_ft(f));
  CHECK(round.max_abs_diff(f.parity()) < 1e-8);
}

TEST_CASE("convolve2: delta spike translates") {
  const PhaseGrid g = PhaseGrid::self_dual(8.0, 64, 1.0);
  PhaseField spike(g);
  const int iq = g.q.n / 2 + 3, jp = g.p.n / 2 - 2;
  spike.data(iq, jp) = 1.0 / (g.q.dx * g.p.dx);  // unit-mass cell
  const PhaseField f = gaussian_field(g, 1.0, 1.0);
  const PhaseField c = convolve2(spike, f);
  // spike at (q*, p*) shifts f by (q*, p*)
  const double qs = g.q.point(iq), ps = g.p.point(jp);
  for (int i = 10; i < g.q.n - 10; i += 9)
    for (int j = 10; j < g.p.n - 10; j += 9) {
      const double q = g.q.point(i), p = g.p.point(j);
      const double expect = std::exp(-0.5 * ((q - qs) * (q - qs) + (p - ps) * (p - ps)));
      CHECK(c.data(i, j).real() == doctest::Approx(expect).epsilon(5e-7));
    }
}

TEST_CASE("convolve2: Gaussian variances add") {
  const PhaseGrid g = PhaseGrid::self_dual(12.0, 96, 1.0);
  const PhaseField f = gaussian_field(g, 0.9, 1.0);
  const PhaseField h = gaussian_field(g, 1.2, 0.8);
  const PhaseField c = convolve2(f, h);
  const double sq = std::hypot(0.9, 1.2), sp = std::hypot(1.0, 0.8);
  const double amp = 2.0 * M_PI * (0.9 * 1.2 / sq) * (1.0 * 0.8 / sp);
  const int i0 = g.q.n / 2;
  CHECK(c.data(i0, i0).real() == doctest::Approx(amp).epsilon(1e-7));
  const double q = g.q.point(i0 + 8), p = g.p.point(i0 + 5);
  const double expect =
      amp * std::exp(-q * q / (2 * sq * sq) - p * p / (2 * sp * sp));
  CHECK(c.data(i0 + 8, i0 + 5).real() == doctest::Approx(expect).epsilon(1e-7));
}

TEST_CASE("convolution theorem: Fs[f*g] = 2 pi hbar Fs[f] Fs[g]") {
  const double hbar = 1.0;
  const PhaseGrid g = PhaseGrid::self_dual(12.0, 96, hbar);
  const PhaseField f = gaussian_field(g, 1.0, 1.3);
  const PhaseField h = gaussian_field(g, 1.5, 0.9);
  const PhaseField lhs = sympl_ft(convolve2(f, h));
  const PhaseField Ff = sympl_ft(f), Fh = sympl_ft(h);
  double resid = 0.0;
  for (int i = 0; i < g.q.n; ++i)
    for (int j = 0; j < g.p.n; ++j)
      resid = std::max(resid,
                       std::abs(lhs.data(i, j) -
                                2.0 * M_PI * hbar * Ff.data(i, j) * Fh.data(i, j)));
  CHECK(resid < 1e-8);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid1D(0.0, -0.1, 8), GridError);
  CHECK_THROWS_AS(Grid1D(0.0, 0.1, 1), GridError);
  // non-self-dual phase grid rejected by the symplectic transform
  const PhaseGrid bad(Grid1D::centered(4.0, 32), Grid1D::centered(4.0, 32), 1.0);
  CHECK_FALSE(bad.is_self_dual());
  PhaseField f = PhaseField::sample(bad, [](double, double) { return 0.0; });
  CHECK_THROWS_AS(sympl_ft(f), GridError);
  // incompatible grids rejected by convolve2
  const PhaseGrid g1 = PhaseGrid::self_dual(8.0, 32, 1.0);
  const PhaseGrid g2 = PhaseGrid::self_dual(9.0, 32, 1.0);
  PhaseField a(g1), b(g2);
  CHECK_THROWS_AS(convolve2(a, b), GridError);
}
