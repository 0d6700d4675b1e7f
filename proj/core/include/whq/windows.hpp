#pragma once

#include <complex>
#include <variant>

#include "whq/fourier.hpp"
#include "whq/grid.hpp"

namespace whq {

/// Gaussian apodization window
///   Pi(q,p) = exp(-q^2/(2 sigma_l^2)) exp(-p^2/(2 sigma_p^2)) exp(gamma q p / 2),
/// separable when gamma = 0. The coupling is constrained by
/// |gamma| < 2/(sigma_l sigma_p); the Lambda quantities derived from it
/// parameterize the closed-form autocorrelation transform.
struct GaussianWindow {
  double sigma_l = 1.0;  // length
  double sigma_p = 1.0;  // momentum
  double gamma = 0.0;    // 1/action
  double hbar = 1.0;     // action

  GaussianWindow() = default;
  GaussianWindow(double sl, double sp, double g, double hb);

  bool separable() const { return gamma == 0.0; }

  // Derived quantities, always recomputed from the primary parameters.
  double lambda2() const {
    const double s = sigma_l * sigma_p * gamma;
    return (4.0 - s * s) / 4.0;
  }
  double lambda_l2() const { return sigma_p * sigma_p / lambda2(); }
  double lambda_p2() const { return sigma_l * sigma_l / lambda2(); }
  double lambda_0() const {
    return sigma_l * sigma_l * sigma_p * sigma_p * gamma / (4.0 * lambda2());
  }
};

/// Squeezed-vacuum window with squeezing parameter eta, |eta| < 1.
/// wp = hbar / ell; kappa = (1 + eta)/(1 - eta) must have Re kappa > 0.
struct SqueezedWindow {
  double ell = 1.0;  // length
  std::complex<double> eta{0.0, 0.0};
  double hbar = 1.0;

  SqueezedWindow() = default;
  SqueezedWindow(double ell_, std::complex<double> eta_, double hbar_);

  double wp() const { return hbar / ell; }
  std::complex<double> kappa() const { return (1.0 + eta) / (1.0 - eta); }
  double kappa_r() const { return kappa().real(); }
  double kappa_i() const { return kappa().imag(); }
};

struct UnitWindow {
  double hbar = 1.0;
};

/// Born-Jordan window hbar*sin(qp/hbar)/(qp), 1 at qp = 0.
struct BornJordanWindow {
  double hbar = 1.0;
};

using WindowKind =
    std::variant<UnitWindow, BornJordanWindow, GaussianWindow, SqueezedWindow>;

double window_hbar(const WindowKind& w);

/// Pointwise evaluation of Pi(q,p). All catalogued windows are real and
/// satisfy Pi(-q,-p) = Pi(q,p).
double pi_eval(const WindowKind& w, double q, double p);

/// Closed form of Fs[Pi_G Pi_G~](q,p) for a Gaussian window:
///   (sigma_l sigma_p / (2 Lambda hbar)) *
///   exp(-Lambda_l^2 q^2 / 4 hbar^2) exp(-Lambda_p^2 p^2 / 4 hbar^2)
///   exp(Lambda_0 q p / hbar^2).
/// Integrates to 2*pi*hbar, so (2*pi*hbar)^{-1} of it is the portrait kernel.
struct AutocorrKernel {
  double prefactor;  // sigma_l*sigma_p / (2*Lambda*hbar)
  double cq;         // Lambda_l^2 / (4 hbar^2)
  double cp;         // Lambda_p^2 / (4 hbar^2)
  double cqp;        // Lambda_0 / hbar^2
  double hbar;

  double operator()(double q, double p) const;
  /// Half-width beyond which the kernel is below ~1e-14 of its peak.
  double support_radius_q() const;
  double support_radius_p() const;
};

AutocorrKernel fs_autocorr_closed(const GaussianWindow& w);

/// Map a squeezed window onto the Gaussian family:
///   sigma_l^2 = 2 ell^2 kappa_R / |kappa|^2,  sigma_p^2 = 2 wp^2 kappa_R,
///   gamma = -kappa_I / (kappa_R hbar),
/// chosen so that pi_eval agrees pointwise between the two forms.
GaussianWindow squeezed_to_gaussian(const SqueezedWindow& s);

/// Window of a pure state psi on a position grid:
///   Pi(q,p) = <psi| U(-q,-p) |psi>
///           = Integral psi*(x) psi(x+q) e^{-i p (x + q/2)/hbar} dx,
/// evaluated on the phase grid built from the state grid (q offsets on the
/// x lattice, p on the dual grid). psi must be unit-norm on the grid
/// (NormError). imag_residual reports the largest |Im Pi|.
struct StateWindowResult {
  PhaseField field;
  double imag_residual = 0.0;
  bool real_to_tolerance = false;  // true when imag_residual < 1e-8
};

StateWindowResult pi_from_state(const Eigen::ArrayXcd& psi, const Grid1D& g,
                                double hbar);

}  // namespace whq
