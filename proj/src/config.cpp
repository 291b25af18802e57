#include "rqd/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rqd/errors.hpp"
#include "rqd/units.hpp"

namespace rqd {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownOutputs = {
    "energies", "timescales", "breakdown", "rotor-moments",
    "rotor-density", "autocorr", "compare"};

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        fail("missing or non-numeric field: " + key);
    return j[key].get<double>();
}

// Dimensioned times must be tagged: {"value": ..., "unit": ...}.
double time_in_au(const json& j, const std::string& context) {
    if (!j.is_object() || !j.contains("value") || !j.contains("unit"))
        fail(context + ": times need {\"value\", \"unit\"}");
    if (!j["value"].is_number() || !j["unit"].is_string())
        fail(context + ": malformed time quantity");
    try {
        return convert_time(j["value"].get<double>(),
                            parse_time_unit(j["unit"].get<std::string>()), TimeUnit::au);
    } catch (const std::invalid_argument& e) {
        fail(context + ": " + e.what());
    }
}

} // namespace

LevelFn RunConfig::level_fn() const {
    return is_rotor() ? rotor_level_fn(rotor) : hydrogen_level_fn(hydrogen);
}

int RunConfig::coefficient_floor() const {
    return is_rotor() ? std::numeric_limits<int>::min() : hydrogen.l + 1;
}

int RunConfig::packet_window() const {
    return window > 0 ? window : default_window(packet.sigma0);
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig cfg;
    cfg.canonical_text = json_text;

    if (!j.contains("system") || !j["system"].is_string())
        fail("missing field: system");
    cfg.system = j["system"].get<std::string>();
    if (cfg.system != "rotor" && cfg.system != "hydrogen")
        fail("system must be \"rotor\" or \"hydrogen\"");

    const json& model = j.contains("model") ? j["model"] : json::object();
    if (cfg.is_rotor()) {
        cfg.rotor.m0 = model.contains("m0_au") ? require_number(model, "m0_au") : 1.0;
        cfg.rotor.c = model.contains("c_au") ? require_number(model, "c_au") : kSpeedOfLightAu;
        cfg.rotor.R = model.contains("R_au") ? require_number(model, "R_au") : 1000.0;
        if (!(cfg.rotor.m0 > 0.0 && cfg.rotor.c > 0.0 && cfg.rotor.R > 0.0))
            fail("rotor model parameters must be positive");
    } else {
        cfg.hydrogen.m0 = model.contains("m0_au") ? require_number(model, "m0_au") : 1.0;
        cfg.hydrogen.c = model.contains("c_au") ? require_number(model, "c_au") : kSpeedOfLightAu;
        cfg.hydrogen.j = model.contains("j") ? require_number(model, "j") : 0.5;
        cfg.hydrogen.l = model.contains("l") ? static_cast<int>(require_number(model, "l")) : 1;
        if (!(cfg.hydrogen.m0 > 0.0 && cfg.hydrogen.c > 1.0))
            fail("hydrogen model parameters must be positive (and c > 1)");
        if (cfg.hydrogen.l < 0) fail("hydrogen l must be >= 0");
        const double lo = std::abs(cfg.hydrogen.l - 0.5), hi = cfg.hydrogen.l + 0.5;
        if (std::abs(cfg.hydrogen.j - lo) > 1e-12 && std::abs(cfg.hydrogen.j - hi) > 1e-12)
            fail("hydrogen j must be |l - 1/2| or l + 1/2");
    }

    if (j.contains("packet")) {
        const json& p = j["packet"];
        cfg.packet.n_bar = require_number(p, "n_bar");
        cfg.packet.sigma0 = require_number(p, "sigma0");
        cfg.packet.theta0 = p.contains("theta0_rad") ? require_number(p, "theta0_rad") : 0.0;
        if (p.contains("window")) cfg.window = static_cast<int>(require_number(p, "window"));
        if (!(cfg.packet.sigma0 > 0.0)) fail("packet sigma0 must be positive");
        if (cfg.window < 0) fail("packet window must be >= 0");
    }

    if (j.contains("grid_size")) {
        const double g = require_number(j, "grid_size");
        if (g < 4.0 || g != std::floor(g)) fail("grid_size must be an integer >= 4");
        cfg.grid_size = static_cast<size_t>(g);
    }

    if (!j.contains("outputs") || !j["outputs"].is_array() || j["outputs"].empty())
        fail("outputs must be a non-empty array");
    for (const auto& o : j["outputs"]) {
        if (!o.is_string() || !kKnownOutputs.count(o.get<std::string>()))
            fail("unknown output requested: " + o.dump());
        cfg.outputs.push_back(o.get<std::string>());
    }

    if (j.contains("levels")) {
        cfg.level_min = static_cast<int>(require_number(j["levels"], "n_min"));
        cfg.level_max = static_cast<int>(require_number(j["levels"], "n_max"));
        if (cfg.level_max < cfg.level_min) fail("levels: n_max must be >= n_min");
    }

    if (j.contains("n_bar_list")) {
        if (!j["n_bar_list"].is_array()) fail("n_bar_list must be an array");
        for (const auto& v : j["n_bar_list"]) {
            if (!v.is_number_integer()) fail("n_bar_list entries must be integers");
            cfg.n_bar_list.push_back(v.get<int>());
        }
    }

    if (j.contains("windows")) {
        if (!j["windows"].is_array()) fail("windows must be an array");
        for (const auto& w : j["windows"]) {
            TimeWindow tw;
            tw.center_au = time_in_au(w.contains("center") ? w["center"] : json(), "window center");
            tw.half_width_au =
                time_in_au(w.contains("half_width") ? w["half_width"] : json(), "window half_width");
            tw.step_au = time_in_au(w.contains("step") ? w["step"] : json(), "window step");
            if (!(tw.half_width_au > 0.0) || !(tw.step_au > 0.0))
                fail("window half_width and step must be positive");
            if (tw.step_au > tw.half_width_au) fail("window step exceeds half_width");
            cfg.windows.push_back(tw);
        }
    }

    if (j.contains("density_times")) {
        if (!j["density_times"].is_array()) fail("density_times must be an array");
        for (const auto& t : j["density_times"])
            cfg.density_times_au.push_back(time_in_au(t, "density_times"));
    }

    if (j.contains("peaks")) {
        const json& p = j["peaks"];
        cfg.peaks.min_height = require_number(p, "min_height");
        cfg.peaks.min_separation_au =
            time_in_au(p.contains("min_separation") ? p["min_separation"] : json(),
                       "peaks min_separation");
        if (!(cfg.peaks.min_height > 0.0) || !(cfg.peaks.min_separation_au > 0.0))
            fail("peaks thresholds must be positive");
    }

    // cross-field checks
    const bool wants_dynamics =
        std::any_of(cfg.outputs.begin(), cfg.outputs.end(), [](const std::string& o) {
            return o == "rotor-moments" || o == "autocorr" || o == "compare";
        });
    if (wants_dynamics && cfg.windows.empty())
        fail("requested dynamics outputs need at least one time window");
    const bool wants_packet = wants_dynamics ||
        std::find(cfg.outputs.begin(), cfg.outputs.end(), "rotor-density") != cfg.outputs.end();
    if (wants_packet && !(cfg.packet.sigma0 > 0.0))
        fail("requested outputs need a packet section");
    for (const std::string& o : cfg.outputs) {
        if ((o == "rotor-moments" || o == "rotor-density") && !cfg.is_rotor())
            fail(o + " requires system = rotor");
        if (o == "energies" && cfg.level_max == 0)
            fail("energies output needs a levels range");
        if ((o == "timescales" || o == "breakdown") && cfg.n_bar_list.empty())
            fail(o + " output needs n_bar_list");
        if (o == "rotor-density" && cfg.density_times_au.empty())
            fail("rotor-density output needs density_times");
        if (o == "compare" && !cfg.is_rotor() && !(cfg.peaks.min_separation_au > 0.0))
            fail("hydrogen compare needs a peaks section");
    }
    if (!cfg.is_rotor() && wants_packet) {
        if (cfg.packet.n_bar < cfg.hydrogen.l + 1)
            fail("hydrogen packet n_bar must be >= l + 1");
        for (int nb : cfg.n_bar_list)
            if (nb < cfg.hydrogen.l + 1) fail("hydrogen n_bar_list entries must be >= l + 1");
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open config: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace rqd
