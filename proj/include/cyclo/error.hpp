#pragma once

#include <stdexcept>
#include <string>

namespace cyclo {

// Invalid input or configuration; the CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation could not produce a trustworthy result; exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cyclo
