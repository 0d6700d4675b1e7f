#include "whq/windows.hpp"

#include <cmath>

#include "whq/errors.hpp"

namespace whq {

namespace {
constexpr Complex kI{0.0, 1.0};
}

GaussianWindow::GaussianWindow(double sl, double sp, double g, double hb)
    : sigma_l(sl), sigma_p(sp), gamma(g), hbar(hb) {
  if (!(sigma_l > 0.0) || !(sigma_p > 0.0))
    throw InvalidWindow("GaussianWindow: widths must be positive");
  if (!(hbar > 0.0)) throw InvalidWindow("GaussianWindow: hbar must be positive");
  if (!(lambda2() > 0.0))
    throw InvalidWindow(
        "GaussianWindow: coupling too strong, need |gamma| < 2/(sigma_l*sigma_p)");
}

SqueezedWindow::SqueezedWindow(double ell_, std::complex<double> eta_,
                               double hbar_)
    : ell(ell_), eta(eta_), hbar(hbar_) {
  if (!(ell > 0.0)) throw InvalidWindow("SqueezedWindow: ell must be positive");
  if (!(hbar > 0.0)) throw InvalidWindow("SqueezedWindow: hbar must be positive");
  if (!(std::abs(eta) < 1.0))
    throw InvalidWindow("SqueezedWindow: need |eta| < 1");
  if (!(kappa_r() > 0.0))
    throw InvalidWindow("SqueezedWindow: Re kappa must be positive");
}

double window_hbar(const WindowKind& w) {
  return std::visit([](const auto& v) { return v.hbar; }, w);
}

namespace {

double sinc(double u) {
  // sin(u)/u with the removable singularity expanded near 0 to avoid
  // cancellation.
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

}  // namespace

double pi_eval(const WindowKind& w, double q, double p) {
  struct Visitor {
    double q, p;
    double operator()(const UnitWindow&) const { return 1.0; }
    double operator()(const BornJordanWindow& b) const {
      return sinc(q * p / b.hbar);
    }
    double operator()(const GaussianWindow& g) const {
      return std::exp(-q * q / (2.0 * g.sigma_l * g.sigma_l) -
                      p * p / (2.0 * g.sigma_p * g.sigma_p) +
                      0.5 * g.gamma * q * p);
    }
    double operator()(const SqueezedWindow& s) const {
      const double kr = s.kappa_r(), ki = s.kappa_i();
      const double k2 = std::norm(s.kappa());
      const double wp = s.wp();
      return std::exp(-q * q / (4.0 * s.ell * s.ell) * (k2 / kr) -
                      p * p / (4.0 * wp * wp * kr) -
                      (ki / kr) * q * p / (2.0 * s.hbar));
    }
  };
  return std::visit(Visitor{q, p}, w);
}

double AutocorrKernel::operator()(double q, double p) const {
  return prefactor * std::exp(-cq * q * q - cp * p * p + cqp * q * p);
}

double AutocorrKernel::support_radius_q() const {
  // exp(-cq q^2 (1 - rho^2)) <= 1e-14 accounting for the cross term tilt.
  const double rho2 = cqp * cqp / (4.0 * cq * cp);
  return std::sqrt(14.0 * M_LN10 / (cq * (1.0 - rho2)));
}

double AutocorrKernel::support_radius_p() const {
  const double rho2 = cqp * cqp / (4.0 * cq * cp);
  return std::sqrt(14.0 * M_LN10 / (cp * (1.0 - rho2)));
}

AutocorrKernel fs_autocorr_closed(const GaussianWindow& w) {
  const double L2 = w.lambda2();
  if (!(L2 > 0.0)) throw InvalidWindow("fs_autocorr_closed: Lambda^2 <= 0");
  const double L = std::sqrt(L2);
  const double h2 = w.hbar * w.hbar;
  return AutocorrKernel{w.sigma_l * w.sigma_p / (2.0 * L * w.hbar),
                        w.lambda_l2() / (4.0 * h2), w.lambda_p2() / (4.0 * h2),
                        w.lambda_0() / h2, w.hbar};
}

GaussianWindow squeezed_to_gaussian(const SqueezedWindow& s) {
  const double kr = s.kappa_r(), ki = s.kappa_i();
  const double k2 = std::norm(s.kappa());
  const double sl = s.ell * std::sqrt(2.0 * kr / k2);
  const double sp = s.wp() * std::sqrt(2.0 * kr);
  const double gamma = -ki / (kr * s.hbar);
  return GaussianWindow(sl, sp, gamma, s.hbar);
}

StateWindowResult pi_from_state(const Eigen::ArrayXcd& psi, const Grid1D& g,
                                double hbar) {
  if (psi.size() != g.n) throw GridError("pi_from_state: sample count != grid");
  const double norm2 = (psi.abs2().sum()) * g.dx;
  if (std::abs(norm2 - 1.0) > 1e-8)
    throw NormError("pi_from_state: state not unit-norm on grid");

  const int n = g.n;
  Grid1D qg = Grid1D::centered(0.5 * n * g.dx, n);  // q offsets on the x lattice
  Grid1D pg = g.dual(hbar);
  PhaseGrid pgrid(qg, pg, hbar);

  PhaseField out(pgrid);
  for (int k = 0; k < n; ++k) {
    const double q = qg.point(k);
    const int shift = k - n / 2;  // q = shift * dx exactly
    const int jlo = std::max(0, -shift);
    const int jhi = std::min(n, n - shift);
    for (int m = 0; m < n; ++m) {
      const double p = pg.point(m);
      Complex acc = 0.0;
      for (int j = jlo; j < jhi; ++j) {
        const double x = g.point(j);
        acc += std::conj(psi[j]) * psi[j + shift] *
               std::exp(-kI * (p * (x + 0.5 * q) / hbar));
      }
      out.data(k, m) = acc * g.dx;
    }
  }

  StateWindowResult res;
  res.imag_residual = out.data.imag().abs().maxCoeff();
  res.real_to_tolerance = res.imag_residual < 1e-8;
  res.field = std::move(out);
  return res;
}

}  // namespace whq
