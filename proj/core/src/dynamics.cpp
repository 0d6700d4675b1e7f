#include "whq/dynamics.hpp"

#include <cmath>
#include <limits>

namespace whq {

namespace {

// RHS from a precomputed profile point. qdot = M p + hbar^2 gamma M'
// (exact rewrite of (1/m)(p - A) with m = 1/M, A = -hbar^2 gamma M'/M),
// pdot = -(M'/2)(p-A)^2 - (p-A) hbar^2 gamma (M'' - M'^2/M) - V_eff'.
PhaseVelocity rhs_from_point(const PortraitContext& ctx, const SemiPoint& sp,
                             double p) {
  const double hb2 = ctx.hbar() * ctx.hbar();
  const double gamma = ctx.window.gamma;
  const double rel = p - sp.coupling_a;
  PhaseVelocity out;
  out.qdot = sp.minv * p + hb2 * gamma * sp.minv_d1;
  double pdot = -0.5 * sp.minv_d1 * rel * rel - sp.veff_d1;
  if (gamma != 0.0 && !sp.floored) {
    const double curv = sp.minv_d2 - sp.minv_d1 * sp.minv_d1 / sp.minv;
    pdot -= rel * hb2 * gamma * curv;
  }
  out.pdot = pdot;
  return out;
}

double energy_from_point(const SemiPoint& sp, double p) {
  const double rel = p - sp.coupling_a;
  return 0.5 * sp.minv * rel * rel + sp.veff;
}

}  // namespace

PhaseVelocity hamilton_rhs(const PortraitContext& ctx, const PhasePoint& s) {
  const SemiPoint sp = semi_point(ctx, s.q);
  if (sp.floored)
    throw MassFloorError("hamilton_rhs: inverse mass below floor");
  return rhs_from_point(ctx, sp, s.p);
}

VectorField vector_field(const PortraitContext& ctx, const PhaseGrid& grid) {
  VectorField out;
  out.grid = grid;
  out.qdot = Eigen::ArrayXXd::Zero(grid.q.n, grid.p.n);
  out.pdot = Eigen::ArrayXXd::Zero(grid.q.n, grid.p.n);
  out.mask.setConstant(grid.q.n, grid.p.n, false);
  const double eps = ctx.eps_mass();
  for (int i = 0; i < grid.q.n; ++i) {
    const SemiPoint sp = semi_point(ctx, grid.q.point(i));
    if (sp.floored || sp.minv < eps) continue;
    for (int j = 0; j < grid.p.n; ++j) {
      const PhaseVelocity v = rhs_from_point(ctx, sp, grid.p.point(j));
      out.qdot(i, j) = v.qdot;
      out.pdot(i, j) = v.pdot;
      out.mask(i, j) = true;
    }
  }
  return out;
}

Trajectory integrate(const PortraitContext& ctx, const PhasePoint& s0,
                     double dt, long n_steps, int record_stride) {
  if (!(dt > 0.0)) throw StepError("integrate: dt must be positive");
  if (record_stride < 1) record_stride = 1;
  const double eps = ctx.eps_mass();

  SemiPoint sp = semi_point(ctx, s0.q);
  if (sp.floored || sp.minv < eps)
    throw MassFloorError("integrate: initial point below the mass floor");

  Trajectory tr;
  tr.dt = dt;
  const double e0 = energy_from_point(sp, s0.p);
  const double step_drift_cap = 1e-3 * std::max(std::abs(e0), 1e-30);

  double q = s0.q, p = s0.p;
  double e_prev = e0;
  {
    const PhaseVelocity v0 = rhs_from_point(ctx, sp, p);
    tr.samples.push_back({0.0, q, p, e0, v0.qdot});
  }

  for (long step = 1; step <= n_steps; ++step) {
    const PhaseVelocity k1 = rhs_from_point(ctx, sp, p);
    const SemiPoint sp2 = semi_point(ctx, q + 0.5 * dt * k1.qdot);
    const PhaseVelocity k2 = rhs_from_point(ctx, sp2, p + 0.5 * dt * k1.pdot);
    const SemiPoint sp3 = semi_point(ctx, q + 0.5 * dt * k2.qdot);
    const PhaseVelocity k3 = rhs_from_point(ctx, sp3, p + 0.5 * dt * k2.pdot);
    const SemiPoint sp4 = semi_point(ctx, q + dt * k3.qdot);
    const PhaseVelocity k4 = rhs_from_point(ctx, sp4, p + dt * k3.pdot);

    q += dt / 6.0 * (k1.qdot + 2.0 * k2.qdot + 2.0 * k3.qdot + k4.qdot);
    p += dt / 6.0 * (k1.pdot + 2.0 * k2.pdot + 2.0 * k3.pdot + k4.pdot);

    sp = semi_point(ctx, q);
    const bool escaped = sp.floored || sp.minv < eps;

    double energy = e_prev, qdot = 0.0;
    if (!escaped) {
      energy = energy_from_point(sp, p);
      qdot = rhs_from_point(ctx, sp, p).qdot;
      if (std::abs(energy - e_prev) > step_drift_cap)
        throw StepError("integrate: single-step energy drift exceeds 1e-3 |E0|");
      tr.max_energy_drift = std::max(tr.max_energy_drift, std::abs(energy - e0));
      e_prev = energy;
    }

    if (escaped || step == n_steps || step % record_stride == 0)
      tr.samples.push_back({step * dt, q, p, energy, qdot});

    if (escaped) {
      tr.status = TrajectoryStatus::Escaped;
      return tr;
    }
  }
  tr.status = TrajectoryStatus::Completed;
  return tr;
}

LevelSet level_set(const PortraitContext& ctx, double energy,
                   const Grid1D& qgrid) {
  LevelSet out;
  out.q = qgrid.points();
  out.p_plus.assign(qgrid.n, std::nullopt);
  out.p_minus.assign(qgrid.n, std::nullopt);
  const double eps = ctx.eps_mass();
  for (int i = 0; i < qgrid.n; ++i) {
    const SemiPoint sp = semi_point(ctx, qgrid.point(i));
    if (sp.floored || sp.minv < eps) continue;
    const double excess = energy - sp.veff;
    if (excess < 0.0) continue;
    const double half = std::sqrt(2.0 * excess / sp.minv);
    out.p_plus[i] = sp.coupling_a + half;
    out.p_minus[i] = sp.coupling_a - half;
  }
  return out;
}

double reparam_h(const PortraitContext& ctx, double q, double qdot) {
  const SemiPoint sp = semi_point(ctx, q);
  if (sp.floored || sp.minv < ctx.eps_mass())
    throw MassFloorError("reparam_h: inverse mass below floor");
  return 0.5 * qdot * qdot / sp.minv + sp.veff;
}

double min_return_distance(const Trajectory& tr, const PhasePoint& s0,
                           double t_min) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : tr.samples) {
    if (s.t < t_min) continue;
    best = std::min(best, std::hypot(s.q - s0.q, s.p - s0.p));
  }
  return best;
}

}  // namespace whq
