#pragma once

#include <map>
#include <string>
#include <vector>

#include "whq/portrait.hpp"
#include "whq/windows.hpp"

namespace whq::cli {

/// Flat [section] key = value configuration. '#' and ';' start comments;
/// keys are unique per section.
class ConfigMap {
 public:
  static ConfigMap parse_string(const std::string& text);
  static ConfigMap parse_file(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  int get_int_or(const std::string& section, const std::string& key,
                 int fallback) const;
  std::vector<double> get_list_or(const std::string& section,
                                  const std::string& key,
                                  const std::vector<double>& fallback) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

PdmOscillator model_from(const ConfigMap& cfg);
WindowKind window_from(const ConfigMap& cfg);
GaussianWindow gaussian_window_from(const ConfigMap& cfg);

/// Fixed 12-significant-digit float formatting: identical configs yield
/// byte-identical output files.
std::string format_number(double v);

}  // namespace whq::cli
