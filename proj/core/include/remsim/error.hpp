#pragma once

#include <stdexcept>
#include <string>

namespace remsim {

/// Raised for malformed scenarios, config files and out-of-domain parameters.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a numerical solver cannot produce a result it can vouch for.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace remsim
