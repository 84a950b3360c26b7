#pragma once

// Deterministic CSV output: '#'-prefixed metadata header, %.12g numbers.
// No timestamps anywhere so identical configs give byte-identical files.

#include <cstdio>
#include <ostream>
#include <string>

#include "qcavity/model.hpp"
#include "qcavity/version.hpp"

namespace qcavity::detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

class MetaWriter {
 public:
  explicit MetaWriter(std::ostream& os) : os_(os) {
    kv("artifact", "qcavity");
    kv("version", version_string);
  }
  void kv(const std::string& key, const std::string& value) {
    os_ << "# " << key << " = " << value << "\n";
  }
  void kv(const std::string& key, double value) { kv(key, fmt(value)); }
  void kv(const std::string& key, int value) { kv(key, std::to_string(value)); }

  void params(const ModelParams& p) {
    kv("E0", p.E0);
    kv("omega1", p.omega1);
    kv("omega2", p.omega2);
    kv("lambda", p.lambda);
    kv("tau", p.tau);
  }
  void numerics(const NumericsConfig& n, const std::array<double, 2>& window, int samples,
                bool default_window) {
    kv("ode_rel_tol", n.ode_rel_tol);
    kv("ode_abs_tol", n.ode_abs_tol);
    kv("series_tol", n.series_tol);
    kv("fock_max", n.fock_max);
    kv("truncation_tol", n.truncation_tol);
    kv("t_min", window[0]);
    kv("t_max", window[1]);
    kv("sample_count", samples);
    kv("window_policy", default_window ? "default-heuristic(25tau,40/omega)" : "explicit");
  }

 private:
  std::ostream& os_;
};

}  // namespace qcavity::detail
