#pragma once

#include <optional>
#include <string>
#include <vector>

#include "whq/portrait.hpp"

namespace whq {

/// Dense operator on a position grid; Hermitian by construction (real
/// symmetric when the window coupling vanishes).
struct GridOperator {
  Grid1D grid;
  Eigen::MatrixXcd matrix;

  double hermiticity_residual() const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  }
  bool is_hermitian(double rel = 1e-12) const {
    return hermiticity_residual() <= rel * matrix.cwiseAbs().maxCoeff();
  }
};

struct EigenSystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // columns
};
EigenSystem eigensystem(const GridOperator& op);
Eigen::VectorXd eigenvalues(const GridOperator& op);

/// Central-difference momentum P = -i hbar d/dx and P^2 = -hbar^2 d^2/dx^2
/// (3-point), with hard truncation at the grid ends.
Eigen::MatrixXcd momentum_matrix(const Grid1D& g, double hbar);
Eigen::MatrixXcd momentum_sq_matrix(const Grid1D& g, double hbar);
Eigen::MatrixXcd position_matrix(const Grid1D& g);

/// Regularized PDM Hamiltonian
///   H = 1/2 { 1/(2M), (P - (hbar^2 gamma/2) M'/M)^2 } + V_eff(Q)
/// with 1/M = M_{sigma_p}(x) and the quantum effective potential
///   (V0/2)[(Q-q0)^2 + hbar^2/sigma_p^2] chi_hat(Q)
///   + (1/M)[-(hbar^4 gamma^2/4)((M'/M))' + hbar^2/sigma_l^2]
///   - (V0 hbar/sqrt(2 pi sigma_p^2)) [(Q+b-2q0) e^{-sigma_p^2 (Q-b)^2/2hbar^2}
///                                   - (Q+a-2q0) e^{-sigma_p^2 (Q-a)^2/2hbar^2}].
/// Anticommutator assembled factor-by-factor, then symmetrized exactly.
/// Grid must span [a - 4 hbar/sigma_p, b + 4 hbar/sigma_p] with n >= 64.
GridOperator build_hamiltonian(const PortraitContext& ctx, const Grid1D& grid);

/// Window operator E(Q) = Fbar[Pi(0,.) * F[chi]](Q): the quantized
/// indicator as a multiplication operator, via the grid transforms.
/// Requires a separable window (Unit, Born-Jordan, Gaussian gamma=0).
GridOperator window_operator(const WindowKind& w, const Interval& iv,
                             const Grid1D& grid);
Eigen::ArrayXd window_operator_profile(const WindowKind& w, const Interval& iv,
                                       const Grid1D& grid);

/// Multiplication operator (2 pi hbar)^{-1/2} (V * Fbar[Pi(0,.)])(Q).
GridOperator quantize_potential(const Eigen::ArrayXd& V, const WindowKind& w,
                                const Grid1D& grid);
Eigen::ArrayXd quantize_potential_profile(const Eigen::ArrayXd& V,
                                          const WindowKind& w,
                                          const Grid1D& grid);

/// Operator function of P built in the discrete Fourier basis from the
/// smoothed profile (2 pi hbar)^{-1/2} (v * F[Pi(.,0)]). v is sampled on
/// grid.dual(hbar).
GridOperator quantize_momentum_fn(const Eigen::ArrayXd& v, const WindowKind& w,
                                  const Grid1D& grid);

/// Quantization of L(q) p^n for n in {0,1,2}, with
/// T = (2 pi hbar)^{-1/2} (Fbar[mu] * L):
///   n=0:  lambda(0) T(Q)
///   n=1:  lambda(0) (T P + P T)/2                  [lambda'(0) = 0]
///   n=2:  lambda(0) (T P^2 + P^2 T)/2
///         + hbar^2 (-lambda''(0) T + lambda(0) T''/4).
/// OrderError for n > 2.
GridOperator quantize_L_pn(const Eigen::ArrayXd& L, int n, const WindowKind& w,
                           const Grid1D& grid);

/// Truncated Hermitian matrix in the oscillator number basis.
struct FockMatrix {
  int n_max = 0;
  Eigen::MatrixXcd entries;

  double trace_real() const { return entries.trace().real(); }
  double min_eigenvalue() const;
  double hermiticity_residual() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  }
};

/// <m|D(alpha)|n> for the displacement operator D(alpha) = e^{alpha a+ - alpha* a},
/// alpha = (q + i p)/sqrt(2 hbar), filled by the stable two-term recurrence.
Eigen::MatrixXcd displacement_matrix(Complex alpha, int n_max);

struct QuadratureSpec {
  int nodes = 200;        // Gauss-Legendre nodes per axis
  double halfwidth = 0.0; // 0 = auto: 8 x max window/displacement width
};

/// Q0 = Integral U(q,p) Pi(q,p) dq dp/(2 pi hbar) in the number basis.
/// Requires a decaying window (Gaussian or squeezed). Throws
/// QuadratureError when the recovered trace deviates from 1 by > 1e-4.
FockMatrix fock_q0_numeric(const WindowKind& w, int n_max,
                           const QuadratureSpec& spec = {});

/// Candidate readings of the underdetermined index N in the closed-form
/// triple-sum expression for the Q0 matrix elements.
enum class NRule { NPlusM, N, M, NPlus2M, MPlusRMinusS };
std::string nrule_name(NRule r);

/// Closed-form triple sum for <n+2M|Q0|n> (hbar = 1 units), with the
/// reciprocal-factorial convention that the k = M term of the second sum
/// vanishes. Lower triangle filled by conjugation. A cross-check against
/// fock_q0_numeric, never the source of truth.
FockMatrix fock_q0_closed(const GaussianWindow& w, int n_max, NRule rule);

struct CandidateFit {
  NRule rule;
  double max_abs_err;
};
struct FockCalibration {
  int n_max;
  double tol;
  double entry00_abs_err;           // closed-vs-numeric at (0,0), rule-free
  std::vector<CandidateFit> fits;   // per candidate, worst entry error
  std::optional<NRule> matched;     // first rule with max_abs_err < tol
};

/// Compare every candidate N resolution against the numeric oracle on a
/// small truncation. Entries of fock_q0_closed remain unverified unless a
/// candidate matches.
FockCalibration calibrate_fock_closed(const GaussianWindow& w, int n_max = 6,
                                      double tol = 1e-6,
                                      const QuadratureSpec& spec = {});

/// Calibrated closed form: throws CalibrationError when no candidate N
/// reproduces the numeric oracle.
FockMatrix fock_q0_closed_verified(const GaussianWindow& w, int n_max,
                                   const QuadratureSpec& spec = {});

/// Trace formula: lhs = Tr(A_f) with A_f assembled in the truncated number
/// basis from the grid samples of f; rhs = Integral f dq dp/(2 pi hbar) on
/// the same grid. Equal up to truncation and grid error.
struct TracePair {
  double lhs, rhs;
};
TracePair trace_formula_check(const PhaseField& f, const WindowKind& w,
                              int n_max = 16);

/// Normalized coherent-state sample e^{-(x-q)^2/(2 ell^2)} e^{i p x/hbar}
/// on a grid, for diagonal expectation checks.
Eigen::VectorXcd coherent_vector(const Grid1D& g, double q, double p,
                                 double ell, double hbar);
double expectation(const GridOperator& op, const Eigen::VectorXcd& v);

}  // namespace whq
