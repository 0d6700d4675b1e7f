#pragma once

#include <Eigen/Dense>
#include <functional>

#include "whq/grid.hpp"
#include "whq/windows.hpp"

namespace whq {

/// Confinement region (a, b) on the line.
struct Interval {
  double a = 0.0;
  double b = 1.0;

  Interval() = default;
  Interval(double a_, double b_) : a(a_), b(b_) {
    if (!(a < b)) throw DomainError("Interval: need a < b");
  }
  double width() const { return b - a; }
  double midpoint() const { return 0.5 * (a + b); }
  bool contains(double x) const { return x > a && x < b; }
};

/// Nonlinear oscillator with mass m(q) = m0 L^2 / ((q-a)(b-q)) and
/// potential (V0/2)(q-q0)^2, both truncated to the interval.
struct PdmOscillator {
  double m0 = 1.0;  // mass
  double L = 1.0;   // length
  double V0 = 0.0;  // energy / length^2
  double q0 = 0.0;  // length
  Interval interval;

  PdmOscillator() = default;
  PdmOscillator(double m0_, double L_, double V0_, double q0_, Interval iv)
      : m0(m0_), L(L_), V0(V0_), q0(q0_), interval(iv) {
    if (!(m0 > 0.0) || !(L > 0.0))
      throw DomainError("PdmOscillator: m0 and L must be positive");
    if (V0 < 0.0) throw DomainError("PdmOscillator: V0 must be >= 0");
  }

  /// Truncated classical inverse mass (q-a)(b-q)/(m0 L^2) on (a,b), else 0.
  double inv_mass_classical(double q) const {
    if (!interval.contains(q)) return 0.0;
    return (q - interval.a) * (interval.b - q) / (m0 * L * L);
  }

  /// Truncated classical potential (V0/2)(q-q0)^2 on (a,b), else 0.
  double potential_classical(double q) const {
    if (!interval.contains(q)) return 0.0;
    return 0.5 * V0 * (q - q0) * (q - q0);
  }
};

/// B_sigma(a,b;x) = (Erfc[sigma (x-b)/hbar] - Erfc[sigma (x-a)/hbar]) / 2.
/// Equivalently the Gaussian CDF mass of (a,b) around x at standard
/// deviation hbar/(sqrt(2) sigma); always in [0,1].
double b_sigma(double sigma, const Interval& iv, double x, double hbar);

/// Gaussian smoothing of interval-truncated polynomials, shared by the
/// semi-classical (s = sqrt(2) hbar / sigma_p) and quantum
/// (s = hbar / sigma_p) profiles. Everything is closed-form in erfc and
/// Gaussians, including derivatives, so no finite differences enter the
/// force evaluation.
struct WallSmoothing {
  double a, b, s;

  WallSmoothing(const Interval& iv, double s_) : a(iv.a), b(iv.b), s(s_) {
    if (!(s > 0.0)) throw DomainError("WallSmoothing: width must be positive");
  }

  /// Smoothed indicator and its first derivative.
  double indicator(double x) const;
  double indicator_d1(double x) const;

  struct Quartic {  // smoothed (t-a)(b-t) with three derivatives
    double f, d1, d2, d3;
  };
  Quartic wall_quadratic(double x) const;

  struct Osc {  // smoothed (V0/2)(t-q0)^2 with one derivative
    double f, d1;
  };
  Osc osc_potential(double x, double V0, double q0) const;
};

/// Value and derivatives of the regularized inverse-mass function
///   M_sigma(x) = [(x-a)(b-x) - hbar^2/sigma^2] B_{sigma/sqrt2}(a,b;x)
///       + (hbar/sqrt(2 pi sigma^2)) [(x-a) e^{-sigma^2 (x-b)^2 / 2 hbar^2}
///                                  - (x-b) e^{-sigma^2 (x-a)^2 / 2 hbar^2}],
/// all divided by m0 L^2. Positive everywhere, decaying outside the walls.
struct MassJet {
  double f, d1, d2, d3;
};
double mass_profile(double sigma, const PdmOscillator& model, double x,
                    double hbar);
MassJet mass_profile_jet(double sigma, const PdmOscillator& model, double x,
                         double hbar);

/// Model + Gaussian window with the derived smoothing widths. chi and the
/// mass terms depend only on sigma_p; gamma enters through the minimal
/// coupling and the gamma^2 potential correction.
struct PortraitContext {
  PdmOscillator model;
  GaussianWindow window;

  PortraitContext(PdmOscillator m, GaussianWindow w)
      : model(std::move(m)), window(std::move(w)) {}

  double hbar() const { return window.hbar; }
  double s_semi() const { return std::sqrt(2.0) * hbar() / window.sigma_p; }
  double s_quant() const { return hbar() / window.sigma_p; }

  /// Inverse-mass floor: below this the regularized 1/m is treated as
  /// confinement rather than inverted.
  double eps_mass() const {
    const double w = model.interval.width();
    return 1e-12 * w * w / (4.0 * model.m0 * model.L * model.L);
  }
};

/// Semi-classical profiles at a point, with the derivatives the dynamics
/// needs. All closed-form; one erfc/exp evaluation set per call.
struct SemiPoint {
  double chi;          // smoothed indicator
  double chi_d1;
  double minv, minv_d1, minv_d2, minv_d3;  // inverse mass M and derivatives
  double vosc, vosc_d1;                    // smoothed oscillator potential
  double veff, veff_d1;                    // full effective potential
  double coupling_a;                       // A(q) = hbar^2 gamma m'/m = -hbar^2 gamma M'/M
  bool floored;                            // gamma-terms hit the mass floor
};
SemiPoint semi_point(const PortraitContext& ctx, double q);

/// chi-check (semi-classical portrait of the indicator) and the
/// multiplication-operator profiles of the quantum side.
double chi_check(const PortraitContext& ctx, double q);
double chi_hat_profile(const PortraitContext& ctx, double x);

/// Inverse-mass values: callers invert only above the mass floor.
double m_check_inv(const PortraitContext& ctx, double q);   // M_{sigma_p/sqrt2}
double m_hat_inv(const PortraitContext& ctx, double x);     // M_{sigma_p}

/// Effective potential
///   V_eff(q) = (V0/2)[(q-q0)^2 + 2 hbar^2/sigma_p^2] chi(q)
///            + (1/2m)[-hbar^4 gamma^2 (m'/m)' + 2 hbar^2/sigma_l^2]
///            - (V0 hbar / sqrt(4 pi sigma_p^2)) [(q+b-2q0) e^{-sigma_p^2 (q-b)^2/4hbar^2}
///                                              - (q+a-2q0) e^{-sigma_p^2 (q-a)^2/4hbar^2}].
/// Throws MassFloorError when gamma != 0 and the inverse mass is below the
/// floor (the gamma^2 term needs 1/M).
double v_eff_check(const PortraitContext& ctx, double q);

/// Full semi-classical Hamiltonian (1/2m)(p - A)^2 + V_eff(q).
double h_check(const PortraitContext& ctx, double q, double p);
double coupling_a(const PortraitContext& ctx, double q);

/// Portrait of p^2 h(q) given the portrait jet of h(q) itself:
///   h (p + hbar^2 gamma h'/h)^2 + h [hbar^4 gamma^2 (h'/h)' + 2 hbar^2/sigma_l^2].
struct ProfileJet {
  double v, d1, d2;
};
double portrait_p2h(const ProfileJet& h, double gamma, double sigma_l,
                    double hbar, double p, double eps_floor);

/// Grid portrait: (2 pi hbar)^{-1} (Fs[Pi Pi~] * f) using the closed-form
/// autocorrelation kernel; the brute-force route every closed-form profile
/// above is checked against. Kernel tails below ~1e-14 of the peak are
/// dropped. Sets edge_leakage if f does not decay inside the grid.
PhaseField portrait_numeric(const PhaseField& f, const GaussianWindow& w);

/// Separable-window portrait of u(q) v(p): the product of two 1-D
/// convolutions against the kernels (2 pi hbar)^{-1/2} Fbar[mu mu~] (in q)
/// and (2 pi hbar)^{-1/2} F[lambda lambda~] (in p), computed through the
/// grid transforms. Requires gamma = 0 and a self-dual grid.
struct SeparablePortrait {
  PhaseGrid grid;
  Eigen::ArrayXd uq;  // smoothed u on the q axis
  Eigen::ArrayXd vp;  // smoothed v on the p axis
  double operator()(int i, int j) const { return uq[i] * vp[j]; }
};
SeparablePortrait portrait_separable(const Eigen::ArrayXd& u,
                                     const Eigen::ArrayXd& v,
                                     const GaussianWindow& w,
                                     const PhaseGrid& grid);

}  // namespace whq
