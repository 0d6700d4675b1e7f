#include "whq_cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "whq/quantum.hpp"

namespace whq::cli {

namespace fs = std::filesystem;
using nlohmann::json;

void write_table(const Table& t, const std::string& path,
                 const std::string& format) {
  std::ostringstream body;
  if (format == "csv") {
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      body << (c ? "," : "") << t.columns[c];
    body << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) body << ",";
        if (row[c]) body << format_number(*row[c]);
      }
      body << "\n";
    }
  } else if (format == "json") {
    json j;
    j["columns"] = t.columns;
    json rows = json::array();
    for (const auto& row : t.rows) {
      json r = json::array();
      for (const auto& cell : row)
        r.push_back(cell ? json(*cell) : json(nullptr));
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    body << j.dump(1) << "\n";
  } else {
    throw ConfigError("unknown output format '" + format + "'");
  }

  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  out << body.str();
  if (!out) throw IoError("failed writing '" + path + "'");
}

namespace {

std::string value_tag(double v) {
  std::string s = format_number(v);
  for (char& c : s) {
    if (c == '.') c = 'p';
    if (c == '-') c = 'm';
  }
  return s;
}

std::string suffixed(const std::string& out, const std::string& tag) {
  const fs::path p(out);
  fs::path q = p.parent_path() / (p.stem().string() + "_" + tag +
                                  (p.has_extension() ? p.extension().string()
                                                     : std::string(".csv")));
  return q.string();
}

Grid1D qgrid_from(const ConfigMap& cfg, const std::string& section,
                  const PdmOscillator& model) {
  const double lo =
      cfg.get_double_or(section, "q_min", model.interval.a - 2.0);
  const double hi =
      cfg.get_double_or(section, "q_max", model.interval.b + 2.0);
  const int n = cfg.get_int_or(section, "n", 801);
  if (!(hi > lo)) throw ConfigError("config: need q_max > q_min");
  if (n < 2) throw ConfigError("config: need n >= 2");
  return Grid1D(lo, (hi - lo) / (n - 1), n);
}

// One (q, value) file per swept parameter value.
std::vector<std::string> profile_sweep(
    const ConfigMap& cfg, const Options& opt, const std::string& section,
    const std::string& sweep_key, const std::vector<double>& sweep_default,
    const std::function<double(double /*param*/, double /*q*/)>& eval) {
  const PdmOscillator model = model_from(cfg);
  const Grid1D grid = qgrid_from(cfg, section, model);
  const std::vector<double> sweep =
      cfg.get_list_or(section, sweep_key, sweep_default);

  std::vector<std::string> written;
  for (double param : sweep) {
    Table t;
    t.columns = {"q", "value"};
    for (int i = 0; i < grid.n; ++i) {
      const double q = grid.point(i);
      t.rows.push_back({q, eval(param, q)});
    }
    const std::string path =
        sweep.size() == 1 ? opt.out_path
                          : suffixed(opt.out_path, sweep_key + value_tag(param));
    write_table(t, path, opt.format);
    written.push_back(path);
  }
  return written;
}

}  // namespace

std::vector<std::string> cmd_chi(const ConfigMap& cfg, const Options& opt) {
  const PdmOscillator model = model_from(cfg);
  const GaussianWindow base = gaussian_window_from(cfg);
  return profile_sweep(cfg, opt, "chi", "sigma_p_values", {3.0, 5.0, 10.0},
                       [&](double sp, double q) {
                         GaussianWindow w(base.sigma_l, sp, 0.0, base.hbar);
                         return chi_check(PortraitContext(model, w), q);
                       });
}

std::vector<std::string> cmd_mass(const ConfigMap& cfg, const Options& opt) {
  const PdmOscillator model = model_from(cfg);
  const GaussianWindow base = gaussian_window_from(cfg);
  return profile_sweep(cfg, opt, "mass", "sigma_p_values", {3.0, 5.0, 10.0},
                       [&](double sp, double q) {
                         GaussianWindow w(base.sigma_l, sp, 0.0, base.hbar);
                         return m_check_inv(PortraitContext(model, w), q);
                       });
}

std::vector<std::string> cmd_veff(const ConfigMap& cfg, const Options& opt) {
  const PdmOscillator base = model_from(cfg);
  const GaussianWindow w = gaussian_window_from(cfg);
  return profile_sweep(
      cfg, opt, "veff", "q0_values", {base.q0}, [&](double q0, double q) {
        PdmOscillator m(base.m0, base.L, base.V0, q0, base.interval);
        return semi_point(PortraitContext(m, w), q).veff;
      });
}

namespace {

Table level_set_table(const PortraitContext& ctx,
                      const std::vector<double>& energies, const Grid1D& grid) {
  Table t;
  t.columns = {"q"};
  std::vector<LevelSet> sets;
  for (double e : energies) {
    t.columns.push_back("p_plus_E" + value_tag(e));
    t.columns.push_back("p_minus_E" + value_tag(e));
    sets.push_back(level_set(ctx, e, grid));
  }
  for (int i = 0; i < grid.n; ++i) {
    std::vector<std::optional<double>> row{grid.point(i)};
    for (const LevelSet& ls : sets) {
      row.push_back(ls.p_plus[i]);
      row.push_back(ls.p_minus[i]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table field_table(const PortraitContext& ctx, const Grid1D& qg, double pmax,
                  int np) {
  const PhaseGrid grid(qg, Grid1D::centered(pmax, np), ctx.hbar());
  const VectorField f = vector_field(ctx, grid);
  Table t;
  t.columns = {"q", "p", "qdot", "pdot"};
  for (int i = 0; i < grid.q.n; ++i)
    for (int j = 0; j < grid.p.n; ++j) {
      std::vector<std::optional<double>> row{grid.q.point(i), grid.p.point(j)};
      if (f.mask(i, j)) {
        row.push_back(f.qdot(i, j));
        row.push_back(f.pdot(i, j));
      } else {
        row.push_back(std::nullopt);
        row.push_back(std::nullopt);
      }
      t.rows.push_back(std::move(row));
    }
  return t;
}

}  // namespace

std::vector<std::string> cmd_phase(const ConfigMap& cfg, const Options& opt) {
  const PortraitContext ctx(model_from(cfg), gaussian_window_from(cfg));
  const Grid1D grid = qgrid_from(cfg, "phase", ctx.model);
  const std::vector<double> energies =
      cfg.get_list_or("phase", "energies", {0.5, 2.0, 3.5});

  std::vector<std::string> written;
  write_table(level_set_table(ctx, energies, grid), opt.out_path, opt.format);
  written.push_back(opt.out_path);

  const double pmax = cfg.get_double_or("phase", "p_max", 4.0);
  const int field_n = cfg.get_int_or("phase", "field_n", 24);
  const Grid1D fq(grid.x0, grid.span() / field_n, field_n);
  const std::string field_path = suffixed(opt.out_path, "field");
  write_table(field_table(ctx, fq, pmax, field_n), field_path, opt.format);
  written.push_back(field_path);
  return written;
}

namespace {

Table trajectory_table(const Trajectory& tr) {
  Table t;
  t.columns = {"t", "q", "p", "E", "qdot"};
  for (const auto& s : tr.samples)
    t.rows.push_back({s.t, s.q, s.p, s.energy, s.qdot});
  return t;
}

PhasePoint initial_point(const ConfigMap& cfg, const PortraitContext& ctx) {
  const double q = cfg.get_double_or("traj", "q_init", ctx.model.q0);
  if (cfg.has("traj", "p_init"))
    return {q, cfg.get_double("traj", "p_init")};
  const double energy = cfg.get_double_or("traj", "energy", 0.5);
  const double dir = cfg.get_double_or("traj", "direction", 1.0);
  const SemiPoint sp = semi_point(ctx, q);
  const double excess = energy - sp.veff;
  if (excess < 0.0)
    throw ConfigError("config: [traj] energy below the effective potential at q_init");
  return {q, sp.coupling_a + (dir < 0 ? -1.0 : 1.0) *
                                 std::sqrt(2.0 * excess / sp.minv)};
}

}  // namespace

std::vector<std::string> cmd_traj(const ConfigMap& cfg, const Options& opt) {
  const PortraitContext ctx(model_from(cfg), gaussian_window_from(cfg));
  const double dt = cfg.get_double_or("traj", "dt", 1e-4);
  const double t_max = cfg.get_double_or("traj", "t_max", 20.0);
  const int stride = cfg.get_int_or("traj", "record_stride", 10);
  const PhasePoint s0 = initial_point(cfg, ctx);
  const Trajectory tr =
      integrate(ctx, s0, dt, static_cast<long>(t_max / dt), stride);
  write_table(trajectory_table(tr), opt.out_path, opt.format);
  return {opt.out_path};
}

std::vector<std::string> cmd_qqdot(const ConfigMap& cfg, const Options& opt) {
  const PortraitContext ctx(model_from(cfg), gaussian_window_from(cfg));
  const Grid1D grid = qgrid_from(cfg, "qqdot", ctx.model);
  const std::vector<double> energies =
      cfg.get_list_or("qqdot", "energies", {0.5, 2.0, 3.5});
  const double eps = ctx.eps_mass();

  Table t;
  t.columns = {"q"};
  for (double e : energies) {
    t.columns.push_back("qdot_plus_E" + value_tag(e));
    t.columns.push_back("qdot_minus_E" + value_tag(e));
  }
  for (int i = 0; i < grid.n; ++i) {
    const double q = grid.point(i);
    std::vector<std::optional<double>> row{q};
    const SemiPoint sp = semi_point(ctx, q);
    for (double e : energies) {
      // m qdot^2/2 + V_eff = E  ->  qdot = +- sqrt(2 (E - V_eff) M)
      if (sp.floored || sp.minv < eps || e < sp.veff) {
        row.push_back(std::nullopt);
        row.push_back(std::nullopt);
      } else {
        const double qd = std::sqrt(2.0 * (e - sp.veff) * sp.minv);
        row.push_back(qd);
        row.push_back(-qd);
      }
    }
    t.rows.push_back(std::move(row));
  }
  write_table(t, opt.out_path, opt.format);
  return {opt.out_path};
}

std::vector<std::string> cmd_spectrum(const ConfigMap& cfg, const Options& opt) {
  const PortraitContext ctx(model_from(cfg), gaussian_window_from(cfg));
  const double margin_min = 4.0 * ctx.hbar() / ctx.window.sigma_p;
  const double margin = cfg.get_double_or("spectrum", "margin", margin_min);
  std::vector<double> ns = cfg.get_list_or("spectrum", "n_values", {256.0});

  std::vector<std::string> written;
  for (double nd : ns) {
    const int n = static_cast<int>(nd);
    const double lo = ctx.model.interval.a - margin;
    const double hi = ctx.model.interval.b + margin;
    const Grid1D grid(lo, (hi - lo) / (n - 1), n);
    const Eigen::VectorXd ev = eigenvalues(build_hamiltonian(ctx, grid));
    Table t;
    t.columns = {"index", "eigenvalue"};
    for (int k = 0; k < ev.size(); ++k)
      t.rows.push_back({static_cast<double>(k), ev[k]});
    const std::string path =
        ns.size() == 1 ? opt.out_path : suffixed(opt.out_path, "n" + value_tag(nd));
    write_table(t, path, opt.format);
    written.push_back(path);
  }
  return written;
}

std::vector<std::string> cmd_fock(const ConfigMap& cfg, const Options& opt) {
  const WindowKind w = window_from(cfg);
  const int n_max = cfg.get_int_or("fock", "n_max", 64);
  QuadratureSpec spec;
  spec.nodes = cfg.get_int_or("fock", "quad_nodes", 200);
  spec.halfwidth = cfg.get_double_or("fock", "quad_halfwidth", 0.0);

  const FockMatrix q0 = fock_q0_numeric(w, n_max, spec);

  json j;
  j["n_max"] = q0.n_max;
  j["trace"] = q0.trace_real();
  j["min_eigenvalue"] = q0.min_eigenvalue();
  json entries = json::array();
  for (int m = 0; m < q0.n_max; ++m)
    for (int n = 0; n < q0.n_max; ++n)
      entries.push_back({q0.entries(m, n).real(), q0.entries(m, n).imag()});
  j["entries"] = std::move(entries);  // row-major [re, im] pairs

  // Closed-form calibration report (hbar = 1 only).
  if (const auto* g = std::get_if<GaussianWindow>(&w);
      g && std::abs(g->hbar - 1.0) < 1e-12) {
    const int cal_n = cfg.get_int_or("fock", "calibration_n_max", 6);
    const FockCalibration cal = calibrate_fock_closed(*g, cal_n, 1e-6, spec);
    json jc;
    jc["n_max"] = cal.n_max;
    jc["tolerance"] = cal.tol;
    jc["entry00_abs_err"] = cal.entry00_abs_err;
    json fits = json::array();
    for (const CandidateFit& f : cal.fits)
      fits.push_back({{"rule", nrule_name(f.rule)},
                      {"max_abs_err", f.max_abs_err}});
    jc["candidates"] = std::move(fits);
    jc["matched"] = cal.matched ? json(nrule_name(*cal.matched)) : json(nullptr);
    jc["note"] = cal.matched
                     ? "closed form verified against the numeric oracle"
                     : "no candidate N reproduces the numeric oracle beyond "
                       "the (0,0) entry; closed-form entries are unverified "
                       "and the quadrature result above is authoritative";
    j["closed_form_calibration"] = std::move(jc);
  }

  std::ofstream out(opt.out_path);
  if (!out) throw IoError("cannot open output file '" + opt.out_path + "'");
  out << j.dump(1) << "\n";
  return {opt.out_path};
}

ClosureCell classify_confinement(const PortraitContext& ctx, double energy) {
  const Interval& iv = ctx.model.interval;
  const double s = ctx.s_semi();
  const double out_l = iv.a - 6.0 * s, out_r = iv.b + 6.0 * s;
  const int n = 4001;
  const double dq = (out_r - out_l) / (n - 1);

  // interior minimum of the effective potential
  double qmin = iv.a, vmin = std::numeric_limits<double>::infinity();
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    const double q = out_l + i * dq;
    v[i] = semi_point(ctx, q).veff;
    if (q > iv.a && q < iv.b && v[i] < vmin) {
      vmin = v[i];
      qmin = q;
    }
  }
  const int imin = static_cast<int>((qmin - out_l) / dq);
  double barrier_r = -std::numeric_limits<double>::infinity();
  for (int i = imin; i < n; ++i) barrier_r = std::max(barrier_r, v[i]);
  double barrier_l = -std::numeric_limits<double>::infinity();
  for (int i = imin; i >= 0; --i) barrier_l = std::max(barrier_l, v[i]);
  const double threshold = std::min(barrier_l, barrier_r);

  ClosureCell cell;
  cell.q0 = ctx.model.q0;
  cell.gamma = ctx.window.gamma;
  cell.energy = energy;
  cell.e_min = vmin;
  cell.e_threshold = threshold;
  cell.closed = energy > vmin && energy < threshold;
  return cell;
}

namespace {

struct FigJob {
  std::string name;
  std::function<Table()> make;
};

PdmOscillator paper_model(double V0, double q0) {
  return PdmOscillator(1.0, 1.0, V0, q0, Interval(1.0, 5.0));
}

Grid1D fig_qgrid() { return Grid1D(-1.0, 8.0 / 800, 801); }

Table multi_profile(const std::vector<std::string>& names,
                    const std::vector<std::function<double(double)>>& fns,
                    const Grid1D& grid) {
  Table t;
  t.columns = {"q"};
  for (const auto& nm : names) t.columns.push_back(nm);
  for (int i = 0; i < grid.n; ++i) {
    const double q = grid.point(i);
    std::vector<std::optional<double>> row{q};
    for (const auto& f : fns) row.push_back(f(q));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table multi_level_set(const std::vector<PortraitContext>& ctxs,
                      const std::vector<std::string>& tags,
                      const std::vector<double>& energies, const Grid1D& grid) {
  Table t;
  t.columns = {"q"};
  std::vector<LevelSet> sets;
  std::vector<std::string> names;
  for (std::size_t c = 0; c < ctxs.size(); ++c)
    for (double e : energies) {
      sets.push_back(level_set(ctxs[c], e, grid));
      t.columns.push_back("p_plus_" + tags[c] + "_E" + value_tag(e));
      t.columns.push_back("p_minus_" + tags[c] + "_E" + value_tag(e));
    }
  for (int i = 0; i < grid.n; ++i) {
    std::vector<std::optional<double>> row{grid.point(i)};
    for (const LevelSet& ls : sets) {
      row.push_back(ls.p_plus[i]);
      row.push_back(ls.p_minus[i]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table qqdot_contours(const PortraitContext& ctx,
                     const std::vector<double>& energies, const Grid1D& grid) {
  Table t;
  t.columns = {"q"};
  for (double e : energies) {
    t.columns.push_back("qdot_plus_E" + value_tag(e));
    t.columns.push_back("qdot_minus_E" + value_tag(e));
  }
  const double eps = ctx.eps_mass();
  for (int i = 0; i < grid.n; ++i) {
    const double q = grid.point(i);
    const SemiPoint sp = semi_point(ctx, q);
    std::vector<std::optional<double>> row{q};
    for (double e : energies) {
      if (sp.floored || sp.minv < eps || e < sp.veff) {
        row.push_back(std::nullopt);
        row.push_back(std::nullopt);
      } else {
        const double qd = std::sqrt(2.0 * (e - sp.veff) * sp.minv);
        row.push_back(qd);
        row.push_back(-qd);
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

std::vector<std::string> cmd_reproduce_all(const Options& opt) {
  if (opt.out_path.empty())
    throw ConfigError("reproduce-all: --out must name a directory");
  fs::create_directories(opt.out_path);

  const std::vector<double> energies{0.5, 2.0, 3.5};
  const double hbar = 1.0;
  const Grid1D grid = fig_qgrid();

  std::vector<FigJob> jobs;

  // Family 1: regularized indicator for sigma_p in {3,5,10}.
  jobs.push_back({"fig1_chi.csv", [=] {
    std::vector<std::string> names;
    std::vector<std::function<double(double)>> fns;
    for (double sp : {3.0, 5.0, 10.0}) {
      names.push_back("chi_sp" + value_tag(sp));
      PortraitContext ctx(paper_model(3.0, 3.0), GaussianWindow(4.0, sp, 0.0, hbar));
      fns.push_back([ctx](double q) { return chi_check(ctx, q); });
    }
    return multi_profile(names, fns, grid);
  }});

  // Family 2: classical truncated potential and regularized inverse mass.
  jobs.push_back({"fig2a_vclassical.csv", [=] {
    std::vector<std::string> names;
    std::vector<std::function<double(double)>> fns;
    for (double q0 : {3.0, 3.5, 5.0}) {
      names.push_back("V_q0" + value_tag(q0));
      const PdmOscillator m = paper_model(3.0, q0);
      fns.push_back([m](double q) { return m.potential_classical(q); });
    }
    return multi_profile(names, fns, grid);
  }});
  jobs.push_back({"fig2b_invmass.csv", [=] {
    std::vector<std::string> names;
    std::vector<std::function<double(double)>> fns;
    for (double sp : {3.0, 5.0, 10.0}) {
      names.push_back("invmass_sp" + value_tag(sp));
      PortraitContext ctx(paper_model(3.0, 3.0), GaussianWindow(4.0, sp, 0.0, hbar));
      fns.push_back([ctx](double q) { return m_check_inv(ctx, q); });
    }
    return multi_profile(names, fns, grid);
  }});

  // Family 3: pure-confinement potential (V0 = 0) and its E = 1/4 contours.
  jobs.push_back({"fig3a_veff_v00.csv", [=] {
    std::vector<std::string> names;
    std::vector<std::function<double(double)>> fns;
    for (double s : {2.0, 4.0, 6.0}) {
      names.push_back("veff_s" + value_tag(s));
      PortraitContext ctx(paper_model(0.0, 3.0), GaussianWindow(s, s, 0.0, hbar));
      fns.push_back([ctx](double q) { return semi_point(ctx, q).veff; });
    }
    return multi_profile(names, fns, grid);
  }});
  jobs.push_back({"fig3b_levelset_v00.csv", [=] {
    std::vector<PortraitContext> ctxs;
    std::vector<std::string> tags;
    for (double s : {2.0, 4.0, 6.0}) {
      ctxs.emplace_back(paper_model(0.0, 3.0), GaussianWindow(s, s, 0.0, hbar));
      tags.push_back("s" + value_tag(s));
    }
    return multi_level_set(ctxs, tags, {0.25}, grid);
  }});
  jobs.push_back({"fig3b_field_v00_s4.csv", [=] {
    PortraitContext ctx(paper_model(0.0, 3.0), GaussianWindow(4.0, 4.0, 0.0, hbar));
    return field_table(ctx, Grid1D(-1.0, 8.0 / 24, 25), 2.0, 25);
  }});

  // Family 4: effective potential with the oscillator on.
  for (double s : {4.0, 10.0}) {
    jobs.push_back({s == 4.0 ? "fig4a_veff_s4.csv" : "fig4b_veff_s10.csv", [=] {
      std::vector<std::string> names;
      std::vector<std::function<double(double)>> fns;
      for (double q0 : {3.0, 3.5, 5.0}) {
        names.push_back("veff_q0" + value_tag(q0));
        PortraitContext ctx(paper_model(3.0, q0), GaussianWindow(s, s, 0.0, hbar));
        fns.push_back([ctx](double q) { return semi_point(ctx, q).veff; });
      }
      return multi_profile(names, fns, grid);
    }});
  }

  // Families 5 and 7: phase-space contours, separable and coupled.
  const std::vector<std::pair<double, std::string>> gammas{{0.0, "fig5"},
                                                           {0.1, "fig7"}};
  const std::vector<std::pair<double, std::string>> q0s{
      {3.0, "a"}, {3.5, "b"}, {5.0, "c"}};
  for (const auto& [gamma, fig] : gammas)
    for (const auto& [q0, sub] : q0s) {
      jobs.push_back({fig + sub + "_levelset_q0" + value_tag(q0) + ".csv", [=] {
        PortraitContext ctx(paper_model(3.0, q0), GaussianWindow(4.0, 4.0, gamma, hbar));
        return multi_level_set({ctx}, {"g" + value_tag(gamma)}, energies, grid);
      }});
      jobs.push_back({fig + sub + "_field_q0" + value_tag(q0) + ".csv", [=] {
        PortraitContext ctx(paper_model(3.0, q0), GaussianWindow(4.0, 4.0, gamma, hbar));
        return field_table(ctx, Grid1D(-1.0, 8.0 / 24, 25), 4.0, 25);
      }});
    }

  // Families 6 and 8a: velocity-space contours.
  for (const auto& [q0, sub] : q0s) {
    jobs.push_back({"fig6" + sub + "_qqdot_q0" + value_tag(q0) + ".csv", [=] {
      PortraitContext ctx(paper_model(3.0, q0), GaussianWindow(4.0, 4.0, 0.0, hbar));
      return qqdot_contours(ctx, energies, grid);
    }});
  }
  jobs.push_back({"fig8a_qqdot_g0p1.csv", [=] {
    PortraitContext ctx(paper_model(3.0, 3.0), GaussianWindow(4.0, 4.0, 0.1, hbar));
    return qqdot_contours(ctx, energies, grid);
  }});

  // Family 8b/8c: time series for a confined and a wall-bound run.
  jobs.push_back({"fig8b_traj_closed.csv", [=] {
    PortraitContext ctx(paper_model(3.0, 3.0), GaussianWindow(4.0, 4.0, 0.1, hbar));
    const SemiPoint sp = semi_point(ctx, 3.0);
    const double p0 = sp.coupling_a + std::sqrt(2.0 * (2.0 - sp.veff) / sp.minv);
    return trajectory_table(integrate(ctx, {3.0, p0}, 1e-4, 60000, 20));
  }});
  jobs.push_back({"fig8c_traj_wall.csv", [=] {
    PortraitContext ctx(paper_model(3.0, 3.0), GaussianWindow(4.0, 4.0, 0.1, hbar));
    const SemiPoint sp = semi_point(ctx, 3.0);
    const double p0 = sp.coupling_a + std::sqrt(2.0 * (3.5 - sp.veff) / sp.minv);
    return trajectory_table(integrate(ctx, {3.0, p0}, 1e-3, 40000, 40));
  }});

  // Closed-contour classification across the figure parameter sets.
  jobs.push_back({"closure_table.csv", [=] {
    Table t;
    t.columns = {"q0", "gamma", "E", "closed", "e_min", "e_threshold"};
    for (double gamma : {0.0, 0.1})
      for (double q0 : {3.0, 3.5, 5.0})
        for (double e : energies) {
          PortraitContext ctx(paper_model(3.0, q0), GaussianWindow(4.0, 4.0, gamma, hbar));
          const ClosureCell c = classify_confinement(ctx, e);
          t.rows.push_back({c.q0, c.gamma, c.energy,
                            c.closed ? 1.0 : 0.0, c.e_min, c.e_threshold});
        }
    return t;
  }});

  // Run jobs, fanning out when asked; each job owns its output file.
  std::vector<std::string> written;
  for (const FigJob& job : jobs)
    written.push_back((fs::path(opt.out_path) / job.name).string());

  const int workers = std::max(1, opt.threads);
  std::vector<std::future<void>> pending;
  std::size_t next = 0;
  const auto run_one = [&](std::size_t idx) {
    const Table t = jobs[idx].make();
    write_table(t, written[idx], "csv");
  };
  while (next < jobs.size() || !pending.empty()) {
    while (next < jobs.size() && static_cast<int>(pending.size()) < workers)
      pending.push_back(std::async(std::launch::async, run_one, next++));
    pending.front().get();
    pending.erase(pending.begin());
  }

  // Manifest of everything emitted.
  json manifest;
  manifest["files"] = json::array();
  for (const auto& f : written)
    manifest["files"].push_back(fs::path(f).filename().string());
  const std::string mpath = (fs::path(opt.out_path) / "manifest.json").string();
  std::ofstream mout(mpath);
  if (!mout) throw IoError("cannot write manifest");
  mout << manifest.dump(1) << "\n";
  written.push_back(mpath);
  return written;
}

}  // namespace whq::cli
