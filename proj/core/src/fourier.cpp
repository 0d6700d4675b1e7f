#include "whq/fourier.hpp"

#include <cmath>

#include "whq/errors.hpp"

namespace whq {

namespace {

constexpr Complex kI{0.0, 1.0};

// Kernel matrix K(m, j) = e^{sign * i * k_m * x_j / hbar} * dx / sqrt(2*pi*hbar).
Eigen::MatrixXcd kernel1d(const Grid1D& x, const Grid1D& k, double hbar,
                          double sign) {
  Eigen::MatrixXcd E(k.n, x.n);
  const double scale = x.dx / std::sqrt(2.0 * M_PI * hbar);
  for (int m = 0; m < k.n; ++m)
    for (int j = 0; j < x.n; ++j)
      E(m, j) = scale * std::exp(kI * (sign * k.point(m) * x.point(j) / hbar));
  return E;
}

// Index of the sample holding f(x_i - x_j), or -1 when it falls off-grid.
// Requires the grid lattice to contain the origin so that differences of
// grid points are again grid points.
int diff_offset(const Grid1D& g) {
  const double ratio = -g.x0 / g.dx;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9)
    throw GridError("convolution grid must contain the origin lattice");
  return static_cast<int>(rounded);
}

}  // namespace

Eigen::ArrayXcd fourier1(const Eigen::ArrayXcd& f, const Grid1D& g,
                         double hbar) {
  return fourier1(f, g, hbar, g.dual(hbar));
}

Eigen::ArrayXcd fourier1_bar(const Eigen::ArrayXcd& f, const Grid1D& g,
                             double hbar) {
  return fourier1_bar(f, g, hbar, g.dual(hbar));
}

Eigen::ArrayXcd fourier1(const Eigen::ArrayXcd& f, const Grid1D& g, double hbar,
                         const Grid1D& out) {
  if (f.size() != g.n) throw GridError("fourier1: sample count != grid size");
  return (kernel1d(g, out, hbar, -1.0) * f.matrix()).array();
}

Eigen::ArrayXcd fourier1_bar(const Eigen::ArrayXcd& f, const Grid1D& g,
                             double hbar, const Grid1D& out) {
  if (f.size() != g.n) throw GridError("fourier1_bar: sample count != grid size");
  return (kernel1d(g, out, hbar, +1.0) * f.matrix()).array();
}

Eigen::ArrayXcd convolve1(const Eigen::ArrayXcd& f, const Eigen::ArrayXcd& g,
                          const Grid1D& grid) {
  if (f.size() != grid.n || g.size() != grid.n)
    throw GridError("convolve1: sample count != grid size");
  const int off = diff_offset(grid);
  Eigen::ArrayXcd out = Eigen::ArrayXcd::Zero(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    Complex acc = 0.0;
    for (int j = 0; j < grid.n; ++j) {
      const int m = i - j + off;
      if (m >= 0 && m < grid.n) acc += f[m] * g[j];
    }
    out[i] = acc * grid.dx;
  }
  return out;
}

Eigen::ArrayXd convolve1(const Eigen::ArrayXd& f, const Eigen::ArrayXd& g,
                         const Grid1D& grid) {
  if (f.size() != grid.n || g.size() != grid.n)
    throw GridError("convolve1: sample count != grid size");
  const int off = diff_offset(grid);
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < grid.n; ++j) {
      const int m = i - j + off;
      if (m >= 0 && m < grid.n) acc += f[m] * g[j];
    }
    out[i] = acc * grid.dx;
  }
  return out;
}

Eigen::ArrayXd convolve1_kernel(const Eigen::ArrayXd& kern,
                                const Grid1D& kern_grid,
                                const Eigen::ArrayXd& g, const Grid1D& grid) {
  if (kern.size() != kern_grid.n || g.size() != grid.n)
    throw GridError("convolve1_kernel: sample counts do not match grids");
  if (std::abs(kern_grid.dx - grid.dx) > 1e-12 * grid.dx)
    throw GridError("convolve1_kernel: kernel and data spacing differ");
  const int koff = diff_offset(kern_grid);
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < grid.n; ++j) {
      const int m = i - j + koff;
      if (m >= 0 && m < kern_grid.n) acc += kern[m] * g[j];
    }
    out[i] = acc * grid.dx;
  }
  return out;
}

namespace {

PhaseField sympl_transform(const PhaseField& f, double sign) {
  const PhaseGrid& g = f.grid;
  if (!g.is_self_dual())
    throw GridError("sympl_ft: PhaseGrid must be self-dual (dq*dp*n = 2*pi*hbar)");
  if (f.data.rows() != g.q.n || f.data.cols() != g.p.n)
    throw GridError("sympl_ft: field shape does not match grid");

  const int nq = g.q.n, np = g.p.n;
  // Out(a,b) = c * sum_{j,l} e^{-sign*i*q_a*p_l/hbar} e^{sign*i*p_b*q_j/hbar} f(j,l)
  Eigen::MatrixXcd A(nq, np), B(np, nq);
  for (int a = 0; a < nq; ++a)
    for (int l = 0; l < np; ++l)
      A(a, l) = std::exp(-sign * kI * (g.q.point(a) * g.p.point(l) / g.hbar));
  for (int b = 0; b < np; ++b)
    for (int j = 0; j < nq; ++j)
      B(b, j) = std::exp(sign * kI * (g.p.point(b) * g.q.point(j) / g.hbar));

  const double c = g.q.dx * g.p.dx / (2.0 * M_PI * g.hbar);
  PhaseField out(g);
  out.data = (A * f.data.matrix().transpose() * B.transpose()).array() * c;
  out.edge_leakage = f.edge_leakage || f.leaks_at_edges();
  return out;
}

}  // namespace

PhaseField sympl_ft(const PhaseField& f) { return sympl_transform(f, +1.0); }

PhaseField sympl_ft_reflected(const PhaseField& f) {
  return sympl_transform(f, -1.0);
}

PhaseField convolve2(const PhaseField& f, const PhaseField& g) {
  if (!f.grid.same_layout(g.grid))
    throw GridError("convolve2: incompatible grids");
  const int nq = f.grid.q.n, np = f.grid.p.n;
  const int offq = diff_offset(f.grid.q);
  const int offp = diff_offset(f.grid.p);

  PhaseField out(f.grid);
  const double cell = f.grid.q.dx * f.grid.p.dx;
  for (int j = 0; j < np; ++j) {
    for (int i = 0; i < nq; ++i) {
      Complex acc = 0.0;
      for (int l = 0; l < np; ++l) {
        const int mp = j - l + offp;
        if (mp < 0 || mp >= np) continue;
        const int kmin = std::max(0, i + offq - (nq - 1));
        const int kmax = std::min(nq - 1, i + offq);
        for (int k = kmin; k <= kmax; ++k)
          acc += f.data(i - k + offq, mp) * g.data(k, l);
      }
      out.data(i, j) = acc * cell;
    }
  }
  out.edge_leakage = f.edge_leakage || g.edge_leakage;
  return out;
}

}  // namespace whq
