#pragma once

#include <stdexcept>
#include <string>

namespace cfrl {

// Problems with configuration files, CLI arguments or input schemas.
// The CLI maps these to exit code 2; everything else exits 3.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cfrl
