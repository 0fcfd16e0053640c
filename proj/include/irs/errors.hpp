#pragma once

#include <stdexcept>
#include <string>

namespace irs {

/// Invalid scenario parameters or configuration file content.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical routine failed to reach its accuracy target.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace irs
