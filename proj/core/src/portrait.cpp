#include "whq/portrait.hpp"

#include <cmath>

#include "whq/special.hpp"

namespace whq {

double b_sigma(double sigma, const Interval& iv, double x, double hbar) {
  if (!(sigma > 0.0)) throw DomainError("b_sigma: sigma must be positive");
  return 0.5 * (erfc(sigma * (x - iv.b) / hbar) - erfc(sigma * (x - iv.a) / hbar));
}

double WallSmoothing::indicator(double x) const {
  const double r = 1.0 / (std::sqrt(2.0) * s);
  return 0.5 * (erfc((x - b) * r) - erfc((x - a) * r));
}

double WallSmoothing::indicator_d1(double x) const {
  return gauss_pdf(x - a, s) - gauss_pdf(x - b, s);
}

WallSmoothing::Quartic WallSmoothing::wall_quadratic(double x) const {
  const double B = indicator(x);
  const double na = gauss_pdf(x - a, s), nb = gauss_pdf(x - b, s);
  const double s2 = s * s;
  const double w = (x - a) * (b - x);
  Quartic out;
  out.f = (w - s2) * B + s2 * ((b - x) * na + (x - a) * nb);
  out.d1 = (a + b - 2.0 * x) * B - 2.0 * s2 * (na - nb);
  out.d2 = -2.0 * B + (b - a) * (na + nb);
  out.d3 = -2.0 * (na - nb) - (b - a) / s2 * ((x - a) * na + (x - b) * nb);
  return out;
}

WallSmoothing::Osc WallSmoothing::osc_potential(double x, double V0,
                                                double q0) const {
  const double B = indicator(x);
  const double na = gauss_pdf(x - a, s), nb = gauss_pdf(x - b, s);
  const double s2 = s * s;
  const double d = x - q0;
  Osc out;
  out.f = 0.5 * V0 * ((d * d + s2) * B +
                      s2 * ((x + a - 2.0 * q0) * na - (x + b - 2.0 * q0) * nb));
  // d/dx picks up the smoothed slope plus the boundary values of the
  // truncated parabola, which do not vanish at the walls.
  out.d1 = V0 * (d * B + s2 * (na - nb)) +
           0.5 * V0 * ((a - q0) * (a - q0) * na - (b - q0) * (b - q0) * nb);
  return out;
}

double mass_profile(double sigma, const PdmOscillator& model, double x,
                    double hbar) {
  return mass_profile_jet(sigma, model, x, hbar).f;
}

MassJet mass_profile_jet(double sigma, const PdmOscillator& model, double x,
                         double hbar) {
  if (!(sigma > 0.0)) throw DomainError("mass_profile: sigma must be positive");
  WallSmoothing ws(model.interval, hbar / sigma);
  const WallSmoothing::Quartic q = ws.wall_quadratic(x);
  const double inv = 1.0 / (model.m0 * model.L * model.L);
  return MassJet{q.f * inv, q.d1 * inv, q.d2 * inv, q.d3 * inv};
}

SemiPoint semi_point(const PortraitContext& ctx, double q) {
  const PdmOscillator& m = ctx.model;
  WallSmoothing ws(m.interval, ctx.s_semi());
  const double B = ws.indicator(q);
  const double na = gauss_pdf(q - m.interval.a, ws.s);
  const double nb = gauss_pdf(q - m.interval.b, ws.s);
  const double s2 = ws.s * ws.s;
  const double a = m.interval.a, b = m.interval.b;

  SemiPoint out{};
  out.chi = B;
  out.chi_d1 = na - nb;

  const double w = (q - a) * (b - q);
  const double invml = 1.0 / (m.m0 * m.L * m.L);
  out.minv = ((w - s2) * B + s2 * ((b - q) * na + (q - a) * nb)) * invml;
  out.minv_d1 = ((a + b - 2.0 * q) * B - 2.0 * s2 * (na - nb)) * invml;
  out.minv_d2 = (-2.0 * B + (b - a) * (na + nb)) * invml;
  out.minv_d3 =
      (-2.0 * (na - nb) - (b - a) / s2 * ((q - a) * na + (q - b) * nb)) * invml;

  const double d = q - m.q0;
  out.vosc = 0.5 * m.V0 *
             ((d * d + s2) * B +
              s2 * ((q + a - 2.0 * m.q0) * na - (q + b - 2.0 * m.q0) * nb));
  out.vosc_d1 = m.V0 * (d * B + s2 * (na - nb)) +
                0.5 * m.V0 *
                    ((a - m.q0) * (a - m.q0) * na - (b - m.q0) * (b - m.q0) * nb);

  const double hb = ctx.hbar();
  const double hb2 = hb * hb;
  const double sl2 = ctx.window.sigma_l * ctx.window.sigma_l;
  const double gamma = ctx.window.gamma;

  out.veff = out.vosc + hb2 / sl2 * out.minv;
  out.veff_d1 = out.vosc_d1 + hb2 / sl2 * out.minv_d1;
  out.coupling_a = 0.0;
  out.floored = false;

  if (gamma != 0.0) {
    const double eps = ctx.eps_mass();
    if (out.minv < eps) {
      out.floored = true;
    } else {
      const double g2h4 = gamma * gamma * hb2 * hb2;
      const double r = out.minv_d1 / out.minv;
      // A = hbar^2 gamma m'/m with m = 1/M, so A = -hbar^2 gamma M'/M.
      out.coupling_a = -hb2 * gamma * r;
      out.veff += 0.5 * g2h4 * (out.minv_d2 - out.minv_d1 * r);
      out.veff_d1 += 0.5 * g2h4 *
                     (out.minv_d3 -
                      (2.0 * out.minv_d1 * out.minv_d2 -
                       out.minv_d1 * out.minv_d1 * r) /
                          out.minv);
    }
  }
  return out;
}

double chi_check(const PortraitContext& ctx, double q) {
  return b_sigma(0.5 * ctx.window.sigma_p, ctx.model.interval, q, ctx.hbar());
}

double chi_hat_profile(const PortraitContext& ctx, double x) {
  return b_sigma(ctx.window.sigma_p / std::sqrt(2.0), ctx.model.interval, x,
                 ctx.hbar());
}

double m_check_inv(const PortraitContext& ctx, double q) {
  return mass_profile(ctx.window.sigma_p / std::sqrt(2.0), ctx.model, q,
                      ctx.hbar());
}

double m_hat_inv(const PortraitContext& ctx, double x) {
  return mass_profile(ctx.window.sigma_p, ctx.model, x, ctx.hbar());
}

double v_eff_check(const PortraitContext& ctx, double q) {
  const SemiPoint sp = semi_point(ctx, q);
  if (sp.floored)
    throw MassFloorError("v_eff_check: inverse mass below floor in gamma term");
  return sp.veff;
}

double coupling_a(const PortraitContext& ctx, double q) {
  const SemiPoint sp = semi_point(ctx, q);
  if (sp.floored)
    throw MassFloorError("coupling_a: inverse mass below floor");
  return sp.coupling_a;
}

double h_check(const PortraitContext& ctx, double q, double p) {
  const SemiPoint sp = semi_point(ctx, q);
  if (sp.floored)
    throw MassFloorError("h_check: inverse mass below floor in gamma term");
  const double kin = p - sp.coupling_a;
  return 0.5 * sp.minv * kin * kin + sp.veff;
}

double portrait_p2h(const ProfileJet& h, double gamma, double sigma_l,
                    double hbar, double p, double eps_floor) {
  if (!(h.v > eps_floor))
    throw MassFloorError("portrait_p2h: profile below floor");
  const double hb2 = hbar * hbar;
  const double r = h.d1 / h.v;
  const double shifted = p + hb2 * gamma * r;
  const double rprime = h.d2 / h.v - r * r;  // (h'/h)'
  return h.v * shifted * shifted +
         h.v * (hb2 * hb2 * gamma * gamma * rprime + 2.0 * hb2 / (sigma_l * sigma_l));
}

PhaseField portrait_numeric(const PhaseField& f, const GaussianWindow& w) {
  const PhaseGrid& g = f.grid;
  if (std::abs(w.hbar - g.hbar) > 1e-12 * g.hbar)
    throw GridError("portrait_numeric: window hbar != grid hbar");

  const AutocorrKernel K = fs_autocorr_closed(w);
  const double norm = 1.0 / (2.0 * M_PI * g.hbar);

  // Displaced-kernel table, truncated where it drops below ~1e-14 of peak.
  const int rq = std::min(g.q.n, static_cast<int>(std::ceil(K.support_radius_q() / g.q.dx)));
  const int rp = std::min(g.p.n, static_cast<int>(std::ceil(K.support_radius_p() / g.p.dx)));
  Eigen::ArrayXXd kern(2 * rq + 1, 2 * rp + 1);
  for (int dqi = -rq; dqi <= rq; ++dqi)
    for (int dpj = -rp; dpj <= rp; ++dpj)
      kern(dqi + rq, dpj + rp) = K(dqi * g.q.dx, dpj * g.p.dx) * norm;

  const int nq = g.q.n, np = g.p.n;
  PhaseField out(g);
  const double cell = g.q.dx * g.p.dx;
  for (int j = 0; j < np; ++j) {
    for (int i = 0; i < nq; ++i) {
      Complex acc = 0.0;
      const int lmin = std::max(0, j - rp), lmax = std::min(np - 1, j + rp);
      const int kmin = std::max(0, i - rq), kmax = std::min(nq - 1, i + rq);
      for (int l = lmin; l <= lmax; ++l)
        for (int k = kmin; k <= kmax; ++k)
          acc += kern(i - k + rq, j - l + rp) * f.data(k, l);
      out.data(i, j) = acc * cell;
    }
  }
  out.edge_leakage = f.edge_leakage || f.leaks_at_edges();
  return out;
}

SeparablePortrait portrait_separable(const Eigen::ArrayXd& u,
                                     const Eigen::ArrayXd& v,
                                     const GaussianWindow& w,
                                     const PhaseGrid& grid) {
  if (!w.separable())
    throw InvalidWindow("portrait_separable: requires gamma = 0");
  if (!grid.is_self_dual())
    throw GridError("portrait_separable: requires a self-dual grid");
  if (u.size() != grid.q.n || v.size() != grid.p.n)
    throw GridError("portrait_separable: profile sizes do not match grid");

  const double hbar = grid.hbar;
  const double root = std::sqrt(2.0 * M_PI * hbar);

  // q-axis kernel (2 pi hbar)^{-1/2} Fbar[mu mu~], computed on the dual of
  // the p grid, which is the q grid for a self-dual layout.
  Eigen::ArrayXcd mu2(grid.p.n);
  for (int j = 0; j < grid.p.n; ++j) {
    const double p = grid.p.point(j);
    mu2[j] = std::exp(-p * p / (w.sigma_p * w.sigma_p));
  }
  Eigen::ArrayXd kq = fourier1_bar(mu2, grid.p, hbar).real() / root;

  Eigen::ArrayXcd la2(grid.q.n);
  for (int i = 0; i < grid.q.n; ++i) {
    const double q = grid.q.point(i);
    la2[i] = std::exp(-q * q / (w.sigma_l * w.sigma_l));
  }
  Eigen::ArrayXd kp = fourier1(la2, grid.q, hbar).real() / root;

  SeparablePortrait out;
  out.grid = grid;
  out.uq = convolve1(kq, u, grid.q);
  out.vp = convolve1(kp, v, grid.p);
  return out;
}

}  // namespace whq
