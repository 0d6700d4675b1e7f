#pragma once

#include <optional>
#include <vector>

#include "whq/portrait.hpp"

namespace whq {

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

struct TrajectorySample {
  double t, q, p, energy, qdot;
};

enum class TrajectoryStatus {
  Completed,  // ran the full step budget
  Escaped,    // entered the mass-floor zone; confinement region left for good
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double dt = 0.0;
  TrajectoryStatus status = TrajectoryStatus::Completed;
  double max_energy_drift = 0.0;  // max |E(t) - E(0)| over all steps
};

/// Hamilton equations of the semi-classical Hamiltonian:
///   qdot = (1/m)(p - A),
///   pdot = (m'/2m^2)(p - ...)(p - A) - dV_eff/dq   (expanded in the
/// inverse-mass profile M = 1/m, whose derivatives are closed-form).
/// Throws MassFloorError below the floor when the coupling divides by M.
struct PhaseVelocity {
  double qdot, pdot;
};
PhaseVelocity hamilton_rhs(const PortraitContext& ctx, const PhasePoint& s);

/// (qdot, pdot) per node; nodes below the mass floor are masked, not errors.
struct VectorField {
  PhaseGrid grid;
  Eigen::ArrayXXd qdot, pdot;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask;  // true = valid
};
VectorField vector_field(const PortraitContext& ctx, const PhaseGrid& grid);

/// Classic fixed-step RK4 with a per-step energy audit. Stops with
/// status Escaped once the trajectory enters the mass-floor zone. Throws
/// MassFloorError if s0 already sits there and StepError if a single step
/// drifts the energy by more than 1e-3 |E(0)|.
/// record_stride controls how often samples are kept (the initial and
/// final points always are).
Trajectory integrate(const PortraitContext& ctx, const PhasePoint& s0,
                     double dt, long n_steps, int record_stride = 1);

/// Constant-energy branches p+-(q) = A(q) +- sqrt(2 m (E - V_eff)).
/// Masked (nullopt) where E < V_eff or the mass floor triggers.
struct LevelSet {
  Eigen::ArrayXd q;
  std::vector<std::optional<double>> p_plus, p_minus;
};
LevelSet level_set(const PortraitContext& ctx, double energy,
                   const Grid1D& qgrid);

/// Velocity-space Hamiltonian m qdot^2 / 2 + V_eff(q); the minimal
/// coupling drops out of this chart.
double reparam_h(const PortraitContext& ctx, double q, double qdot);

/// Smallest |s - s0| over samples with t >= t_min: closed-orbit detector.
double min_return_distance(const Trajectory& tr, const PhasePoint& s0,
                           double t_min);

}  // namespace whq
