#include <cmath>
#include <complex>

#include "doctest.h"
#include "whq/errors.hpp"
#include "whq/quantum.hpp"

using namespace whq;

namespace {

PortraitContext paper_ctx(double sigma = 4.0, double gamma = 0.0,
                          double V0 = 3.0, double q0 = 3.0) {
  return PortraitContext(
      PdmOscillator(1.0, 1.0, V0, q0, Interval(1.0, 5.0)),
      GaussianWindow(sigma, sigma, gamma, 1.0));
}

Grid1D paper_grid(int n, double margin = 1.0) {
  const double lo = 1.0 - margin, hi = 5.0 + margin;
  return Grid1D(lo, (hi - lo) / (n - 1), n);
}

// Index of the lowest eigenvector carrying at least half its probability
// mass inside the interval: the bound well state, as opposed to the
// near-zero-energy states living in the regularized exterior.
int well_state_index(const EigenSystem& es, const Grid1D& g, const Interval& iv) {
  for (int k = 0; k < es.values.size(); ++k) {
    double inside = 0.0, total = 0.0;
    for (int j = 0; j < g.n; ++j) {
      const double w = std::norm(es.vectors(j, k));
      total += w;
      if (iv.contains(g.point(j))) inside += w;
    }
    if (inside > 0.5 * total) return k;
  }
  return -1;
}

}  // namespace

TEST_CASE("canonical commutator on interior test vectors") {
  const Grid1D g = paper_grid(512);
  const double hbar = 1.0;
  const Eigen::MatrixXcd Q = position_matrix(g), P = momentum_matrix(g, hbar);
  Eigen::VectorXcd psi(g.n);
  for (int j = 0; j < g.n; ++j) {
    const double x = g.point(j);
    psi[j] = std::exp(-(x - 3.0) * (x - 3.0));
  }
  const Eigen::VectorXcd comm = Q * (P * psi) - P * (Q * psi);
  const Eigen::VectorXcd target = Complex(0.0, hbar) * psi;
  // central differences leave an O(dx^2 psi'') defect
  const double bound = 1.1 * hbar * g.dx * g.dx;  // max|psi''| = 2 for this state
  double worst = 0.0;
  for (int j = 2; j < g.n - 2; ++j)
    worst = std::max(worst, std::abs(comm[j] - target[j]));
  CHECK(worst < bound);
}

TEST_CASE("build_hamiltonian: grid preconditions") {
  const PortraitContext ctx = paper_ctx();
  CHECK_THROWS_AS(build_hamiltonian(ctx, Grid1D(0.0, 0.1, 32)), GridError);
  CHECK_THROWS_AS(build_hamiltonian(ctx, Grid1D(0.5, 0.02, 256)), GridError);
  CHECK_NOTHROW(build_hamiltonian(ctx, paper_grid(128)));
}

TEST_CASE("build_hamiltonian: exact hermiticity, real bounded spectrum") {
  for (double gamma : {0.0, 0.1}) {
    const PortraitContext ctx = paper_ctx(4.0, gamma);
    const GridOperator H = build_hamiltonian(ctx, paper_grid(256));
    CHECK(H.hermiticity_residual() == 0.0);  // symmetrized by construction
    const Eigen::VectorXd ev = eigenvalues(H);
    CHECK(ev.minCoeff() > -0.05);
    CHECK(ev.maxCoeff() < 1e6);
  }
}

TEST_CASE("build_hamiltonian: low spectrum converges under grid refinement") {
  const PortraitContext ctx = paper_ctx();
  Eigen::VectorXd prev;
  double prev_diff = -1.0;
  for (int n : {128, 256, 512}) {
    const Eigen::VectorXd ev = eigenvalues(build_hamiltonian(ctx, paper_grid(n)));
    if (prev.size()) {
      double diff = 0.0;
      for (int k = 0; k < 5; ++k) diff = std::max(diff, std::abs(ev[k] - prev[k]));
      if (prev_diff > 0.0) CHECK(diff < prev_diff / 3.0);
      prev_diff = diff;
    }
    prev = ev;
  }
}

TEST_CASE("build_hamiltonian: well ground state decays past the walls") {
  // Deep well so the bound state sits far below the wall barrier.
  const PortraitContext ctx = paper_ctx(6.0, 0.0, 12.0, 3.0);
  const Grid1D g = paper_grid(512);
  const EigenSystem es = eigensystem(build_hamiltonian(ctx, g));
  const int k = well_state_index(es, g, ctx.model.interval);
  REQUIRE(k >= 0);

  // log-amplitude strictly decreasing and concave on the skin beyond b:
  // faster-than-exponential (Gaussian-like) falloff.
  std::vector<double> logs;
  const double peak = es.vectors.col(k).cwiseAbs().maxCoeff();
  for (int j = 0; j < g.n; ++j) {
    const double x = g.point(j);
    if (x < 5.02 || x > 5.75) continue;
    const double a = std::abs(es.vectors(j, k));
    if (a < 1e-9 * peak) break;
    logs.push_back(std::log(a));
  }
  REQUIRE(logs.size() > 12);
  int concave = 0, falling = 0;
  for (std::size_t i = 1; i + 1 < logs.size(); ++i) {
    if (logs[i + 1] < logs[i]) ++falling;
    if (logs[i + 1] - 2.0 * logs[i] + logs[i - 1] < 0.0) ++concave;
  }
  CHECK(falling >= static_cast<int>(logs.size()) - 3);
  CHECK(concave >= static_cast<int>(0.8 * (logs.size() - 2)));
}

TEST_CASE("ground well energy decreases as the window widens") {
  double prev = 1e9;
  for (double sigma : {4.0, 6.0, 10.0}) {
    const PortraitContext ctx = paper_ctx(sigma);
    const Grid1D g = paper_grid(384);
    const EigenSystem es = eigensystem(build_hamiltonian(ctx, g));
    const int k = well_state_index(es, g, ctx.model.interval);
    REQUIRE(k >= 0);
    CHECK(es.values[k] < prev);
    prev = es.values[k];
  }
}

TEST_CASE("coherent-state expectations of H track the semi-classical portrait") {
  const PortraitContext ctx = paper_ctx();
  const Grid1D g = paper_grid(384);
  const GridOperator H = build_hamiltonian(ctx, g);
  std::vector<double> quantum, semi;
  for (double q : {2.2, 3.0, 3.8})
    for (double p : {-1.0, 0.0, 1.2}) {
      quantum.push_back(expectation(H, coherent_vector(g, q, p, 1.0, 1.0)));
      semi.push_back(h_check(ctx, q, p));
    }
  // qualitative monotone agreement: strong positive correlation
  const auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
  };
  const double mq = mean(quantum), ms = mean(semi);
  double num = 0.0, dq = 0.0, ds = 0.0;
  for (std::size_t i = 0; i < semi.size(); ++i) {
    num += (quantum[i] - mq) * (semi[i] - ms);
    dq += (quantum[i] - mq) * (quantum[i] - mq);
    ds += (semi[i] - ms) * (semi[i] - ms);
  }
  CHECK(num / std::sqrt(dq * ds) > 0.95);
}

TEST_CASE("window_operator: Gaussian window reproduces the erfc profile") {
  const PortraitContext ctx = paper_ctx();
  // walls on grid nodes: dx = 8/1024 divides b - a
  const Grid1D g(-1.0, 8.0 / 1024, 1025);
  const Eigen::ArrayXd prof =
      window_operator_profile(WindowKind{ctx.window}, ctx.model.interval, g);
  for (int j = 8; j < g.n - 8; j += 5)
    CHECK(prof[j] ==
          doctest::Approx(chi_hat_profile(ctx, g.point(j))).epsilon(1e-4).scale(1.0));
  // diagonal of a [0,1] profile
  CHECK(prof.minCoeff() > -1e-8);
  CHECK(prof.maxCoeff() < 1.0 + 1e-8);
}

TEST_CASE("window_operator: unit window gives back the sharp indicator") {
  const Grid1D g = paper_grid(256, 2.0);
  const Interval iv(1.0, 5.0);
  const Eigen::ArrayXd prof = window_operator_profile(UnitWindow{1.0}, iv, g);
  for (int j = 4; j < g.n - 4; ++j) {
    const double expect = iv.contains(g.point(j)) ? 1.0 : 0.0;
    CHECK(prof[j] == doctest::Approx(expect).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("window_operator: coupled Gaussian rejected") {
  const Grid1D g = paper_grid(128);
  CHECK_THROWS_AS(
      window_operator(GaussianWindow(4.0, 4.0, 0.1, 1.0), Interval(1.0, 5.0), g),
      InvalidWindow);
}

TEST_CASE("quantize_potential: unit window is the identity rule") {
  const Grid1D g = paper_grid(256, 2.0);
  Eigen::ArrayXd V(g.n);
  for (int j = 0; j < g.n; ++j) {
    const double x = g.point(j);
    V[j] = std::sin(0.7 * x) + 0.2 * x;
  }
  const Eigen::ArrayXd prof = quantize_potential_profile(V, UnitWindow{1.0}, g);
  for (int j = 0; j < g.n; j += 7)
    CHECK(prof[j] == doctest::Approx(V[j]).epsilon(1e-9).scale(1.0));
}

TEST_CASE("quantize_potential: Gaussian window smooths the truncated parabola") {
  const PortraitContext ctx = paper_ctx();
  const Grid1D g = paper_grid(512, 2.5);
  Eigen::ArrayXd V(g.n);
  for (int j = 0; j < g.n; ++j)
    V[j] = ctx.model.potential_classical(g.point(j));
  const Eigen::ArrayXd prof =
      quantize_potential_profile(V, WindowKind{ctx.window}, g);
  // analytic Gaussian convolution of the truncated parabola at the quantum
  // smoothing width hbar/sigma_p
  const WallSmoothing ws(ctx.model.interval, ctx.s_quant());
  for (int j = 30; j < g.n - 30; j += 11)
    CHECK(prof[j] ==
          doctest::Approx(ws.osc_potential(g.point(j), 3.0, 3.0).f)
              .epsilon(2e-4).scale(1.0));
}

TEST_CASE("quantize_momentum_fn: v(p) = p maps to P with no constant") {
  const Grid1D g = paper_grid(128, 2.0);
  const Grid1D dual = g.dual(1.0);
  Eigen::ArrayXd v(dual.n);
  for (int m = 0; m < dual.n; ++m) v[m] = dual.point(m);
  // lambda must decay inside the position span for the p-kernel to hold mass
  const GridOperator A =
      quantize_momentum_fn(v, GaussianWindow(1.0, 4.0, 0.0, 1.0), g);
  // Fourier modes are exact eigenvectors of the discrete construction
  for (int m0 : {dual.n / 2 - 9, dual.n / 2 + 4}) {
    Eigen::VectorXcd mode(g.n);
    for (int j = 0; j < g.n; ++j)
      mode[j] = std::exp(Complex(0.0, dual.point(m0) * g.point(j)));
    const Eigen::VectorXcd out = A.matrix * mode;
    const double k = dual.point(m0);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j) worst = std::max(worst, std::abs(out[j] - k * mode[j]));
    CHECK(worst < 1e-8 * std::max(1.0, std::abs(k)));
  }
}

TEST_CASE("quantize_L_pn: constant L at n = 2 gives P^2 plus the window shift") {
  const Grid1D g = paper_grid(256, 2.0);
  const WindowKind w = GaussianWindow(4.0, 4.0, 0.0, 1.0);
  const GridOperator A = quantize_L_pn(Eigen::ArrayXd::Ones(g.n), 2, w, g);
  const Eigen::MatrixXcd expect =
      momentum_sq_matrix(g, 1.0) +
      (1.0 / 16.0) * Eigen::MatrixXcd::Identity(g.n, g.n);
  // interior rows agree; the convolution loses mass only near the ends
  double worst = 0.0;
  for (int i = 20; i < g.n - 20; ++i)
    for (int j = std::max(0, i - 3); j < std::min(g.n, i + 4); ++j)
      worst = std::max(worst, std::abs(A.matrix(i, j) - expect(i, j)));
  CHECK(worst < 1e-7);
}

TEST_CASE("quantize_L_pn: n = 0 is the smoothed multiplication operator") {
  const PortraitContext ctx = paper_ctx();
  const Grid1D g = paper_grid(256, 2.0);
  Eigen::ArrayXd L(g.n);
  for (int j = 0; j < g.n; ++j) L[j] = ctx.model.inv_mass_classical(g.point(j));
  const GridOperator A = quantize_L_pn(L, 0, WindowKind{ctx.window}, g);
  for (int j = 20; j < g.n - 20; j += 9)
    CHECK(A.matrix(j, j).real() ==
          doctest::Approx(m_hat_inv(ctx, g.point(j))).epsilon(1e-4).scale(1.0));
}

TEST_CASE("quantize_L_pn: kinetic block matches the assembled Hamiltonian") {
  // L = (1/2) classical inverse mass, n = 2: the anticommutator part must
  // coincide with the gamma = 0 kinetic block of build_hamiltonian on
  // interior-supported vectors.
  const PortraitContext ctx = paper_ctx();
  const Grid1D g = paper_grid(384, 1.0);
  Eigen::ArrayXd L(g.n);
  for (int j = 0; j < g.n; ++j)
    L[j] = 0.5 * ctx.model.inv_mass_classical(g.point(j));
  const GridOperator A = quantize_L_pn(L, 2, WindowKind{ctx.window}, g);
  const GridOperator H = build_hamiltonian(ctx, g);

  Eigen::VectorXcd psi(g.n);
  for (int j = 0; j < g.n; ++j) {
    const double x = g.point(j);
    psi[j] = std::exp(-(x - 3.0) * (x - 3.0) / 0.8);
  }
  // strip the diagonal potential parts of both, leaving the kinetic blocks
  Eigen::MatrixXcd Ak = A.matrix, Hk = H.matrix;
  const WallSmoothing ws(ctx.model.interval, ctx.s_quant());
  for (int j = 0; j < g.n; ++j) {
    const double x = g.point(j);
    const MassJet mj = mass_profile_jet(4.0, ctx.model, x, 1.0);
    Hk(j, j) -= ws.osc_potential(x, 3.0, 3.0).f + mj.f / 16.0;
    const double T = 0.5 * mj.f;      // smoothed L
    const double T2 = 0.5 * mj.d2;    // its curvature
    Ak(j, j) -= (1.0 / 16.0) * T + 0.25 * T2;
  }
  const Eigen::VectorXcd da = Ak * psi, dh = Hk * psi;
  double rel = 0.0, scale = 0.0;
  for (int j = 30; j < g.n - 30; ++j) {
    rel = std::max(rel, std::abs(da[j] - dh[j]));
    scale = std::max(scale, std::abs(dh[j]));
  }
  CHECK(rel < 1e-4 * scale);
}

TEST_CASE("quantize_L_pn: order error") {
  const Grid1D g = paper_grid(128);
  CHECK_THROWS_AS(
      quantize_L_pn(Eigen::ArrayXd::Ones(g.n), 3, UnitWindow{1.0}, g),
      OrderError);
}

TEST_CASE("displacement_matrix: unitary columns and coherent overlap") {
  const Complex alpha(0.6, -0.4);
  const int n_max = 48;
  const Eigen::MatrixXcd D = displacement_matrix(alpha, n_max);
  // <n|D|0> is the coherent-state expansion
  const double a2 = std::norm(alpha);
  Complex expect = std::exp(-0.5 * a2);
  for (int n = 0; n < 12; ++n) {
    CHECK(std::abs(D(n, 0) - expect) < 1e-13);
    expect *= alpha / std::sqrt(double(n + 1));
  }
  // low columns have near-unit norm at this truncation
  for (int n = 0; n < 8; ++n)
    CHECK(D.col(n).norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("fock_q0_numeric: coherent window is the vacuum projector") {
  const WindowKind w = GaussianWindow(std::sqrt(2.0), std::sqrt(2.0), 0.0, 1.0);
  const FockMatrix q0 = fock_q0_numeric(w, 24, {160, 0.0});
  CHECK(q0.trace_real() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(q0.entries(0, 0) - 1.0) < 1e-6);
  double off = 0.0;
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j)
      if (i || j) off = std::max(off, std::abs(q0.entries(i, j)));
  CHECK(off < 1e-6);
  CHECK(q0.min_eigenvalue() > -1e-8);
}

TEST_CASE("fock_q0_numeric: isotropic window gives the geometric diagonal") {
  const double sigma = 1.0;
  const WindowKind w = GaussianWindow(sigma, sigma, 0.0, 1.0);
  const int n_max = 24;
  const FockMatrix q0 = fock_q0_numeric(w, n_max, {160, 0.0});
  const double D2 = 0.5 + 1.0 / (sigma * sigma);
  const double ratio = 1.0 - 1.0 / D2;
  double geom = 1.0 / D2;
  for (int n = 0; n < n_max; ++n) {
    CHECK(std::abs(q0.entries(n, n).real() - geom) < 1e-8);
    geom *= ratio;
  }
  // truncated geometric series: trace within the tail of 1
  CHECK(std::abs(q0.trace_real() - 1.0) < std::pow(ratio, n_max) + 1e-8);
  CHECK(q0.min_eigenvalue() > -1e-8);
  // off-diagonals vanish for the isotropic window
  double off = 0.0;
  for (int i = 0; i < n_max; ++i)
    for (int j = 0; j < n_max; ++j)
      if (i != j) off = std::max(off, std::abs(q0.entries(i, j)));
  CHECK(off < 1e-9);
}

TEST_CASE("fock_q0_numeric: squeezed window stays a positive state") {
  const WindowKind w = SqueezedWindow(1.0, {0.35, 0.0}, 1.0);
  const FockMatrix q0 = fock_q0_numeric(w, 28, {180, 0.0});
  CHECK(q0.trace_real() == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(q0.min_eigenvalue() > -1e-8);
  CHECK(q0.hermiticity_residual() < 1e-14);
}

TEST_CASE("fock_q0_numeric: checkerboard selection rule for even windows") {
  const WindowKind w = GaussianWindow(1.2, 1.2, 0.5, 1.0);  // coupled but even
  const FockMatrix q0 = fock_q0_numeric(w, 20, {160, 0.0});
  double odd = 0.0;
  for (int m = 0; m < 20; ++m)
    for (int n = 0; n < 20; ++n)
      if ((m - n) % 2 != 0) odd = std::max(odd, std::abs(q0.entries(m, n)));
  CHECK(odd < 1e-10);
  // the coupling makes the even off-diagonals genuinely complex
  CHECK(std::abs(q0.entries(2, 0).imag()) > 1e-6);
}

TEST_CASE("fock_q0_numeric: windows without decay are rejected") {
  CHECK_THROWS_AS(fock_q0_numeric(UnitWindow{1.0}, 8), InvalidWindow);
  CHECK_THROWS_AS(fock_q0_numeric(BornJordanWindow{1.0}, 8), InvalidWindow);
}

TEST_CASE("fock_q0_numeric: under-resolved quadrature is flagged") {
  const WindowKind w = GaussianWindow(1.0, 1.0, 0.0, 1.0);
  CHECK_THROWS_AS(fock_q0_numeric(w, 16, {6, 30.0}), QuadratureError);
}

TEST_CASE("fock_q0_closed: rule-free entry (0,0) matches the oracle") {
  const GaussianWindow w(2.0, 1.5, 0.2, 1.0);
  const double Dl2 = 0.5 + 1.0 / 4.0, Dp2 = 0.5 + 1.0 / 2.25;
  const double exact = 1.0 / std::sqrt(Dl2 * Dp2 - 0.04 / 4.0);
  const FockMatrix closed = fock_q0_closed(w, 4, NRule::N);
  CHECK(closed.entries(0, 0).real() == doctest::Approx(exact).epsilon(1e-12));
  const FockMatrix numeric = fock_q0_numeric(WindowKind{w}, 24, {200, 0.0});
  CHECK(std::abs(closed.entries(0, 0) - numeric.entries(0, 0)) < 1e-8);
}

TEST_CASE("fock_q0_closed: calibration against the numeric oracle") {
  const GaussianWindow w(1.5, 1.2, 0.15, 1.0);
  const FockCalibration cal = calibrate_fock_closed(w, 6, 1e-6, {200, 0.0});
  CHECK(cal.fits.size() == 5);
  CHECK(cal.entry00_abs_err < 1e-8);
  if (cal.matched) {
    // a matching rule must also reproduce the thermal diagonal
    const GaussianWindow th(1.0, 1.0, 0.0, 1.0);
    const FockMatrix closed = fock_q0_closed(th, 6, *cal.matched);
    const double D2 = 1.5;
    for (int n = 0; n < 6; ++n)
      CHECK(closed.entries(n, n).real() ==
            doctest::Approx((1.0 / D2) * std::pow(1.0 - 1.0 / D2, n)).epsilon(1e-6));
  } else {
    // documented failure path: every candidate misses beyond (0,0)
    for (const CandidateFit& f : cal.fits) CHECK(f.max_abs_err > 1e-6);
    CHECK_THROWS_AS(fock_q0_closed_verified(w, 12), CalibrationError);
  }
}

TEST_CASE("trace formula: phase-space average against the operator trace") {
  const WindowKind w = GaussianWindow(1.0, 1.0, 0.0, 1.0);
  const PhaseGrid g = PhaseGrid::self_dual(8.0, 40, 1.0);

  SUBCASE("Gaussian blob") {
    const PhaseField f = PhaseField::sample(g, [](double q, double p) {
      return std::exp(-0.5 * (q * q + p * p));
    });
    const TracePair tp = trace_formula_check(f, w, 20);
    CHECK(tp.rhs == doctest::Approx(1.0).epsilon(1e-6));  // integral = 2 pi / (2 pi)
    CHECK(tp.lhs == doctest::Approx(tp.rhs).epsilon(1e-4));
  }
  SUBCASE("delta spike at the origin quantizes to Q0") {
    PhaseField f(g);
    f.data(g.q.n / 2, g.p.n / 2) = 2.0 * M_PI / (g.q.dx * g.p.dx);
    const TracePair tp = trace_formula_check(f, w, 20);
    CHECK(tp.rhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tp.lhs == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("odd observable has vanishing trace") {
    const PhaseField f = PhaseField::sample(g, [](double q, double p) {
      return q * std::exp(-0.5 * (q * q + p * p));
    });
    const TracePair tp = trace_formula_check(f, w, 20);
    CHECK(std::abs(tp.lhs) < 1e-10);
    CHECK(std::abs(tp.rhs) < 1e-10);
  }
}
