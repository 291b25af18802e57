#pragma once

#include <stdexcept>
#include <string>

namespace rqd {

// Invalid or unparsable run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An internal numerical cross-check failed (CLI exit code 3).
class ConsistencyError : public std::runtime_error {
  public:
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rqd
