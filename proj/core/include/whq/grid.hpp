#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "whq/errors.hpp"

namespace whq {

using Complex = std::complex<double>;

/// Uniform 1-D grid  x_j = x0 + j*dx,  j = 0..n-1.
struct Grid1D {
  double x0 = 0.0;
  double dx = 1.0;
  int n = 2;

  Grid1D() = default;
  Grid1D(double x0_, double dx_, int n_) : x0(x0_), dx(dx_), n(n_) {
    if (n < 2) throw GridError("Grid1D: need n >= 2");
    if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x0))
      throw GridError("Grid1D: dx must be positive and finite");
  }

  double point(int j) const { return x0 + j * dx; }
  double back() const { return point(n - 1); }
  double span() const { return n * dx; }

  Eigen::ArrayXd points() const {
    Eigen::ArrayXd x(n);
    for (int j = 0; j < n; ++j) x[j] = point(j);
    return x;
  }

  /// Grid symmetric about 0 covering [-half, half), includes 0 for even n.
  static Grid1D centered(double half, int n) {
    if (n < 2) throw GridError("Grid1D::centered: need n >= 2");
    const double dx = 2.0 * half / n;
    return Grid1D(-half, dx, n);
  }

  /// Conjugate grid under the 1-D transform with kernel e^{-i k x / hbar}:
  /// spacing dk = 2*pi*hbar / (n*dx), centered like this one.
  Grid1D dual(double hbar) const {
    const double dk = 2.0 * M_PI * hbar / (n * dx);
    return Grid1D(-0.5 * n * dk, dk, n);
  }

  bool same_layout(const Grid1D& o, double tol = 1e-9) const {
    return n == o.n && std::abs(dx - o.dx) <= tol * dx &&
           std::abs(x0 - o.x0) <= tol * span();
  }
};

/// Phase-space grid carrying the measure dq dp / (2*pi*hbar).
struct PhaseGrid {
  Grid1D q;
  Grid1D p;
  double hbar = 1.0;

  PhaseGrid() = default;
  PhaseGrid(Grid1D q_, Grid1D p_, double hbar_) : q(q_), p(p_), hbar(hbar_) {
    if (!(hbar > 0.0)) throw GridError("PhaseGrid: hbar must be > 0");
  }

  /// Square grid with dq*dp*n = 2*pi*hbar, so that the symplectic
  /// transform maps fields back onto the same grid.
  static PhaseGrid self_dual(double qmax, int n, double hbar) {
    Grid1D qg = Grid1D::centered(qmax, n);
    const double dp = 2.0 * M_PI * hbar / (n * qg.dx);
    Grid1D pg(-0.5 * n * dp, dp, n);
    return PhaseGrid(qg, pg, hbar);
  }

  bool is_self_dual(double tol = 1e-9) const {
    if (q.n != p.n) return false;
    const double prod = q.dx * p.dx * q.n;
    return std::abs(prod - 2.0 * M_PI * hbar) <= tol * 2.0 * M_PI * hbar;
  }

  bool same_layout(const PhaseGrid& o) const {
    return q.same_layout(o.q) && p.same_layout(o.p) &&
           std::abs(hbar - o.hbar) <= 1e-12 * hbar;
  }
};

/// Complex field sampled on a PhaseGrid; data(i, j) = f(q_i, p_j).
/// edge_leakage is set by transforms when the input does not decay at the
/// grid boundary (outermost ring above 1e-10 of the interior maximum).
struct PhaseField {
  PhaseGrid grid;
  Eigen::ArrayXXcd data;
  bool edge_leakage = false;

  PhaseField() = default;
  PhaseField(const PhaseGrid& g)
      : grid(g), data(Eigen::ArrayXXcd::Zero(g.q.n, g.p.n)) {}

  template <typename F>
  static PhaseField sample(const PhaseGrid& g, F&& f) {
    PhaseField out(g);
    for (int i = 0; i < g.q.n; ++i)
      for (int j = 0; j < g.p.n; ++j)
        out.data(i, j) = f(g.q.point(i), g.p.point(j));
    return out;
  }

  double max_abs() const { return data.abs().maxCoeff(); }

  /// Largest |f| on the outermost ring of grid points.
  double boundary_max_abs() const {
    const int nq = grid.q.n, np = grid.p.n;
    double m = 0.0;
    for (int j = 0; j < np; ++j) {
      m = std::max(m, std::abs(data(0, j)));
      m = std::max(m, std::abs(data(nq - 1, j)));
    }
    for (int i = 0; i < nq; ++i) {
      m = std::max(m, std::abs(data(i, 0)));
      m = std::max(m, std::abs(data(i, np - 1)));
    }
    return m;
  }

  bool leaks_at_edges(double rel = 1e-10) const {
    const double m = max_abs();
    return m > 0.0 && boundary_max_abs() > rel * m;
  }

  /// Parity-flipped field f(-q, -p), using the periodic index reflection
  /// j -> (n - j) mod n natural to the centered grid layout.
  PhaseField parity() const {
    PhaseField out(grid);
    const int nq = grid.q.n, np = grid.p.n;
    for (int i = 0; i < nq; ++i)
      for (int j = 0; j < np; ++j)
        out.data(i, j) = data((nq - i) % nq, (np - j) % np);
    out.edge_leakage = edge_leakage;
    return out;
  }

  double max_abs_diff(const PhaseField& o) const {
    return (data - o.data).abs().maxCoeff();
  }
};

}  // namespace whq
