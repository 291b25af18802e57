#pragma once

#include <filesystem>

#include "rqd/config.hpp"

namespace rqd {

inline constexpr const char* kVersion = "1.0.0";

struct RunOptions {
    std::filesystem::path out_dir = ".";
    unsigned threads = 1;
};

// Produces one CSV per requested output under out_dir. Deterministic for a
// fixed config apart from the timestamp header line. Throws ConfigError
// for bad configurations and ConsistencyError when an internal numerical
// cross-check trips.
void run(const RunConfig& cfg, const RunOptions& opts);

// Fast internal consistency assertions (the --check flag).
void self_check();

} // namespace rqd
