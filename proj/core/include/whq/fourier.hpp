#pragma once

#include <Eigen/Dense>

#include "whq/grid.hpp"

namespace whq {

// 1-D transforms with the convention
//   F[f](k)    = (2*pi*hbar)^(-1/2) * Integral f(x) e^{-i k x / hbar} dx,
//   Fbar[f](k) = F[f](-k),
// evaluated on grid.dual(hbar). Plain quadrature against the exact kernel;
// spectrally accurate for fields that decay inside the grid.
Eigen::ArrayXcd fourier1(const Eigen::ArrayXcd& f, const Grid1D& g, double hbar);
Eigen::ArrayXcd fourier1_bar(const Eigen::ArrayXcd& f, const Grid1D& g, double hbar);

// Same transforms evaluated on an explicit output grid (e.g. mapping back
// onto an off-center position grid, where the round trip is exact as long
// as the output points sit on the conjugate lattice).
Eigen::ArrayXcd fourier1(const Eigen::ArrayXcd& f, const Grid1D& g, double hbar,
                         const Grid1D& out);
Eigen::ArrayXcd fourier1_bar(const Eigen::ArrayXcd& f, const Grid1D& g,
                             double hbar, const Grid1D& out);

/// Discrete convolution (f * g)(x_i) = sum_j f(x_i - x_j) g(x_j) dx on a
/// common grid, with f extended by zero outside of it.
Eigen::ArrayXcd convolve1(const Eigen::ArrayXcd& f, const Eigen::ArrayXcd& g,
                          const Grid1D& grid);
Eigen::ArrayXd convolve1(const Eigen::ArrayXd& f, const Eigen::ArrayXd& g,
                         const Grid1D& grid);

/// Convolution of data g on `grid` against a kernel sampled on its own
/// grid (same spacing, origin on the kernel lattice):
///   out(x_i) = sum_j kern(x_i - x_j) g(x_j) dx.
/// Lifts the origin-on-lattice requirement from the data grid.
Eigen::ArrayXd convolve1_kernel(const Eigen::ArrayXd& kern,
                                const Grid1D& kern_grid,
                                const Eigen::ArrayXd& g, const Grid1D& grid);

/// Symplectic Fourier transform
///   Fs[f](q,p) = Integral e^{-i(q p' - p q')/hbar} f(q',p') dq' dp' / (2 pi hbar),
/// an involution; requires a self-dual PhaseGrid (GridError otherwise).
/// Sets edge_leakage on the result when the input does not decay at the
/// grid boundary.
PhaseField sympl_ft(const PhaseField& f);

/// Reflected transform Fs_bar[f](q,p) = Fs[f](-q,-p); composing the two in
/// either order gives the parity operator.
PhaseField sympl_ft_reflected(const PhaseField& f);

/// Direct-sum 2-D convolution (f * g)(q,p) = Integral f(q-q',p-p') g(q',p') dq' dp'
/// with f zero-extended. Satisfies Fs[f*g] = 2*pi*hbar * Fs[f] * Fs[g]
/// on-grid, which the tests check against sympl_ft as an independent route.
PhaseField convolve2(const PhaseField& f, const PhaseField& g);

}  // namespace whq
