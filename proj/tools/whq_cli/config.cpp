#include "whq_cli/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "whq/errors.hpp"

namespace whq::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

ConfigMap ConfigMap::parse_string(const std::string& text) {
  ConfigMap cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": key outside any [section]");
    auto& sec = cfg.sections_[section];
    if (sec.count(key))
      throw ConfigError("config: duplicate key '" + key + "' in [" + section + "]");
    sec[key] = value;
  }
  return cfg;
}

ConfigMap ConfigMap::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

bool ConfigMap::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string ConfigMap::get(const std::string& section,
                           const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end() || !s->second.count(key))
    throw ConfigError("config: missing required key '" + key + "' in [" +
                      section + "]");
  return s->second.at(key);
}

std::string ConfigMap::get_or(const std::string& section, const std::string& key,
                              const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

namespace {

double to_double(const std::string& raw, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + raw + "' is not a number (" + where + ")");
  }
}

}  // namespace

double ConfigMap::get_double(const std::string& section,
                             const std::string& key) const {
  return to_double(get(section, key), section + "." + key);
}

double ConfigMap::get_double_or(const std::string& section,
                                const std::string& key, double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

int ConfigMap::get_int_or(const std::string& section, const std::string& key,
                          int fallback) const {
  if (!has(section, key)) return fallback;
  const double v = get_double(section, key);
  const int i = static_cast<int>(v);
  if (i != v)
    throw ConfigError("config: expected integer for " + section + "." + key);
  return i;
}

std::vector<double> ConfigMap::get_list_or(
    const std::string& section, const std::string& key,
    const std::vector<double>& fallback) const {
  if (!has(section, key)) return fallback;
  std::vector<double> out;
  std::stringstream ss(get(section, key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(to_double(t, section + "." + key));
  }
  if (out.empty())
    throw ConfigError("config: empty list for " + section + "." + key);
  return out;
}

PdmOscillator model_from(const ConfigMap& cfg) {
  const double a = cfg.get_double_or("model", "a", 1.0);
  const double b = cfg.get_double_or("model", "b", 5.0);
  try {
    return PdmOscillator(cfg.get_double_or("model", "m0", 1.0),
                         cfg.get_double_or("model", "L", 1.0),
                         cfg.get_double_or("model", "V0", 3.0),
                         cfg.get_double_or("model", "q0", 3.0),
                         Interval(a, b));
  } catch (const NumericError& e) {
    throw ConfigError(std::string("config: invalid [model]: ") + e.what());
  }
}

GaussianWindow gaussian_window_from(const ConfigMap& cfg) {
  try {
    return GaussianWindow(cfg.get_double_or("window", "sigma_l", 4.0),
                          cfg.get_double_or("window", "sigma_p", 4.0),
                          cfg.get_double_or("window", "gamma", 0.0),
                          cfg.get_double_or("window", "hbar", 1.0));
  } catch (const NumericError& e) {
    throw ConfigError(std::string("config: invalid [window]: ") + e.what());
  }
}

WindowKind window_from(const ConfigMap& cfg) {
  const std::string kind = cfg.get_or("window", "kind", "gaussian");
  const double hbar = cfg.get_double_or("window", "hbar", 1.0);
  try {
    if (kind == "gaussian") return gaussian_window_from(cfg);
    if (kind == "unit") return UnitWindow{hbar};
    if (kind == "born-jordan") return BornJordanWindow{hbar};
    if (kind == "squeezed")
      return SqueezedWindow(cfg.get_double_or("window", "ell", 1.0),
                            {cfg.get_double_or("window", "eta_re", 0.0),
                             cfg.get_double_or("window", "eta_im", 0.0)},
                            hbar);
  } catch (const NumericError& e) {
    throw ConfigError(std::string("config: invalid [window]: ") + e.what());
  }
  throw ConfigError("config: unknown window kind '" + kind + "'");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace whq::cli
