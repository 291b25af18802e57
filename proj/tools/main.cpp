#include <algorithm>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "rqd/config.hpp"
#include "rqd/errors.hpp"
#include "rqd/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitConsistency = 3;

void report_error(const std::string& type, const std::string& what) {
    std::fprintf(stderr, "{\"error\": \"%s\", \"message\": \"%s\"}\n", type.c_str(),
                 what.c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral wave-packet dynamics: relativistic vs non-relativistic"};
    app.set_version_flag("--version", rqd::kVersion);

    std::string config_path;
    rqd::RunOptions opts;
    bool check_only = false;
    std::string only_output;

    app.add_option("--config", config_path, "Run configuration (JSON)");
    app.add_option("--out", opts.out_dir, "Output directory")->default_val(".");
    app.add_option("--threads", opts.threads, "Worker threads")->default_val(1);
    app.add_flag("--check", check_only, "Run internal consistency assertions and exit");

    // subcommands restrict the run to a single output table
    for (const char* name : {"run", "energies", "timescales", "breakdown", "rotor-moments",
                             "rotor-density", "autocorr", "compare"}) {
        auto* sub = app.add_subcommand(name);
        sub->fallthrough();
        sub->callback([&only_output, name] { only_output = name; });
    }
    app.require_subcommand(0, 1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check_only) {
            rqd::self_check();
            std::printf("all internal consistency checks passed\n");
            return 0;
        }
        if (config_path.empty()) {
            report_error("config", "no --config given");
            return kExitConfig;
        }
        rqd::RunConfig cfg = rqd::load_config(config_path);
        if (!only_output.empty() && only_output != "run") {
            if (std::find(cfg.outputs.begin(), cfg.outputs.end(), only_output) ==
                cfg.outputs.end())
                throw rqd::ConfigError("output '" + only_output +
                                       "' not enabled in this config");
            cfg.outputs = {only_output};
        }
        rqd::run(cfg, opts);
        return 0;
    } catch (const rqd::ConfigError& e) {
        report_error("config", e.what());
        return kExitConfig;
    } catch (const rqd::ConsistencyError& e) {
        report_error("consistency", e.what());
        return kExitConsistency;
    } catch (const std::invalid_argument& e) {
        report_error("config", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        report_error("consistency", e.what());
        return kExitConsistency;
    }
}
