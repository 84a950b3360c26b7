#pragma once

#include <stdexcept>
#include <string>

namespace qcavity {

/// Invalid user input: bad parameter values, malformed config, grid mismatch.
class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed to meet its accuracy contract.
class numerics_error : public std::runtime_error {
 public:
  explicit numerics_error(const std::string& what) : std::runtime_error(what) {}
};

/// Integration window too short: an asymptote or tail-flatness check failed.
/// The message names the violated edge.
class window_error : public numerics_error {
 public:
  explicit window_error(const std::string& what) : numerics_error(what) {}
};

}  // namespace qcavity
