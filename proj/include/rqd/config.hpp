#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rqd/spectra.hpp"
#include "rqd/wavepacket.hpp"

namespace rqd {

// A sampling window in time: [center - half_width, center + half_width]
// stepped uniformly. All values in a.u. after parsing.
struct TimeWindow {
    double center_au = 0.0;
    double half_width_au = 0.0;
    double step_au = 0.0;
};

struct PeakSearch {
    double min_height = 0.05;
    double min_separation_au = 0.0;
};

// Parsed, validated run configuration. The on-disk format is a JSON
// document; every dimensioned field carries an explicit unit tag
// ({"value": ..., "unit": "au"|"s"|"ns"|"ps"|"ms"}). See README for the
// full schema.
struct RunConfig {
    std::string system; // "rotor" | "hydrogen"
    RotorModel rotor;
    HydrogenModel hydrogen;

    PacketParams packet;
    int window = 0; // 0 = derive from sigma0

    size_t grid_size = 2048;
    std::vector<std::string> outputs;

    int level_min = 1;
    int level_max = 0; // 0 = no energies sweep requested

    std::vector<int> n_bar_list;
    std::vector<TimeWindow> windows;
    std::vector<double> density_times_au;
    PeakSearch peaks;

    std::string canonical_text; // raw config body, hashed into outputs

    bool is_rotor() const { return system == "rotor"; }
    LevelFn level_fn() const;
    int coefficient_floor() const; // lowest admissible quantum number
    int packet_window() const;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

} // namespace rqd
