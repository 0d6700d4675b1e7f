#pragma once

#include <optional>
#include <string>
#include <vector>

#include "whq/dynamics.hpp"
#include "whq_cli/config.hpp"

namespace whq::cli {

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";  // csv | json
  int threads = 1;
  long seed = 0;  // reserved
};

/// Column-oriented output table; empty cells stand for masked points.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
};
void write_table(const Table& t, const std::string& path,
                 const std::string& format);

// Each command writes its files and returns their paths.
std::vector<std::string> cmd_chi(const ConfigMap& cfg, const Options& opt);
std::vector<std::string> cmd_mass(const ConfigMap& cfg, const Options& opt);
std::vector<std::string> cmd_veff(const ConfigMap& cfg, const Options& opt);
std::vector<std::string> cmd_phase(const ConfigMap& cfg, const Options& opt);
std::vector<std::string> cmd_traj(const ConfigMap& cfg, const Options& opt);
std::vector<std::string> cmd_qqdot(const ConfigMap& cfg, const Options& opt);
std::vector<std::string> cmd_spectrum(const ConfigMap& cfg, const Options& opt);
std::vector<std::string> cmd_fock(const ConfigMap& cfg, const Options& opt);

/// Emit the full figure-data set (families 1-8) plus the closed-contour
/// classification table and a manifest, into the out_path directory.
std::vector<std::string> cmd_reproduce_all(const Options& opt);

/// Confinement classification from the effective-potential landscape:
/// closed contours exist iff e_min < energy < e_threshold, where the
/// threshold is the lower of the two barrier tops separating the interior
/// minimum from the exterior falloff.
struct ClosureCell {
  double q0, gamma, energy;
  bool closed;
  double e_min, e_threshold;
};
ClosureCell classify_confinement(const PortraitContext& ctx, double energy);

}  // namespace whq::cli
