#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "whq/errors.hpp"
#include "whq_cli/commands.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericError = 3;
constexpr int kIoError = 4;

using Runner = std::vector<std::string> (*)(const whq::cli::ConfigMap&,
                                            const whq::cli::Options&);

int run(Runner fn, bool needs_config, const whq::cli::Options& opt) {
  try {
    std::vector<std::string> files;
    if (needs_config) {
      if (opt.config_path.empty())
        throw whq::ConfigError("missing --config");
      const whq::cli::ConfigMap cfg =
          whq::cli::ConfigMap::parse_file(opt.config_path);
      files = fn(cfg, opt);
    } else {
      files = whq::cli::cmd_reproduce_all(opt);
    }
    for (const auto& f : files) std::printf("wrote %s\n", f.c_str());
    return kOk;
  } catch (const whq::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const whq::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kIoError;
  } catch (const whq::NumericError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kNumericError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "whquant: phase-space portraits, semi-classical dynamics and "
      "regularized quantum operators for interval-confined variable-mass "
      "oscillators"};
  app.require_subcommand(1);

  whq::cli::Options opt;
  app.add_option("--config", opt.config_path, "configuration file (key = value sections)");
  app.add_option("--out", opt.out_path, "output file (or directory for reproduce-all)")
      ->required();
  app.add_option("--format", opt.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", opt.threads, "worker threads for sweeps")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "reserved");

  struct Sub {
    const char* name;
    const char* help;
    Runner fn;
  };
  const Sub subs[] = {
      {"chi", "regularized indicator profile sweep", whq::cli::cmd_chi},
      {"mass", "regularized inverse-mass profile sweep", whq::cli::cmd_mass},
      {"veff", "semi-classical effective potential sweep", whq::cli::cmd_veff},
      {"phase", "constant-energy contours and velocity field", whq::cli::cmd_phase},
      {"traj", "integrated trajectory time series", whq::cli::cmd_traj},
      {"qqdot", "velocity-space energy contours", whq::cli::cmd_qqdot},
      {"spectrum", "grid Hamiltonian eigenvalues", whq::cli::cmd_spectrum},
      {"fock", "number-basis density operator with calibration report", whq::cli::cmd_fock},
  };

  Runner chosen = nullptr;
  bool reproduce = false;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->callback([&chosen, fn = s.fn] { chosen = fn; });
  }
  app.add_subcommand("reproduce-all",
                     "emit the full figure-data set into --out directory")
      ->callback([&reproduce] { reproduce = true; });

  CLI11_PARSE(app, argc, argv);

  if (reproduce) return run(nullptr, false, opt);
  return run(chosen, true, opt);
}
