#include "rqd/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <ctime>
#include <thread>

#include "rqd/analysis.hpp"
#include "rqd/csv.hpp"
#include "rqd/errors.hpp"
#include "rqd/rotor_observables.hpp"
#include "rqd/units.hpp"

namespace rqd {

namespace {

void parallel_for(size_t count, unsigned threads, const std::function<void(size_t)>& body) {
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2 * threads) {
        for (size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            // chunky dynamic partition; each index writes only its own slot
            constexpr size_t kChunk = 16;
            for (;;) {
                const size_t begin = next.fetch_add(kChunk);
                if (begin >= count) return;
                const size_t end = std::min(begin + kChunk, count);
                for (size_t i = begin; i < end; ++i) body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

std::vector<double> window_times(const TimeWindow& w) {
    const auto count = static_cast<size_t>(std::llround(2.0 * w.half_width_au / w.step_au));
    std::vector<double> ts(count + 1);
    for (size_t i = 0; i <= count; ++i)
        ts[i] = (w.center_au - w.half_width_au) + w.step_au * static_cast<double>(i);
    return ts;
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Emitter {
  public:
    Emitter(const RunConfig& cfg, const RunOptions& opts)
        : cfg_(cfg), opts_(opts), hash_(fnv1a_hex(cfg.canonical_text)) {}

    void emit(OutputTable& table, const std::string& filename) const {
        table.set_meta("config_hash", hash_);
        table.set_meta("version", kVersion);
        table.set_meta("system", cfg_.system);
        table.set_meta("timestamp", timestamp_utc());
        std::filesystem::create_directories(opts_.out_dir);
        table.write(opts_.out_dir / filename);
    }

  private:
    const RunConfig& cfg_;
    const RunOptions& opts_;
    std::string hash_;
};

void write_energies(const RunConfig& cfg, const Emitter& emit) {
    const LevelFn levels = cfg.level_fn();
    OutputTable t({"n", "e_rel_hartree", "e_nr_hartree", "delta_hartree", "rel_diff"});
    for (int n = cfg.level_min; n <= cfg.level_max; ++n) {
        const LevelEnergies lv = levels(n);
        const double e_rel = lv.e_rel.to_double();
        const double diff = e_rel != 0.0 ? lv.delta.to_double() / e_rel : 0.0;
        t.add_row({static_cast<double>(n), e_rel, lv.e_nr.to_double(), lv.delta.to_double(), diff},
                  e_rel == 0.0);
    }
    emit.emit(t, "energies.csv");
}

void write_timescales(const RunConfig& cfg, const Emitter& emit) {
    OutputTable t({"n_bar", "theory_rel", "t_cl_au", "t_rev_au", "t_sup_au", "t_critical_au",
                   "t_critical_s"});
    for (int nb : cfg.n_bar_list) {
        for (Theory th : {Theory::NR, Theory::REL}) {
            const Timescales ts = cfg.is_rotor() ? rotor_timescales(cfg.rotor, nb, th)
                                                 : hydrogen_timescales(cfg.hydrogen, nb, th);
            const bool degenerate = !std::isfinite(ts.t_cl) || !std::isfinite(ts.t_rev) ||
                                    !std::isfinite(ts.t_sup) || !std::isfinite(ts.t_critical);
            t.add_row({static_cast<double>(nb), th == Theory::REL ? 1.0 : 0.0, ts.t_cl,
                       ts.t_rev, ts.t_sup, ts.t_critical,
                       convert_time(ts.t_critical, TimeUnit::au, TimeUnit::s)},
                      degenerate);
        }
    }
    emit.emit(t, "timescales.csv");
}

void write_breakdown(const RunConfig& cfg, const Emitter& emit) {
    const LevelFn levels = cfg.level_fn();
    OutputTable t({"n_bar", "delta_hartree", "t_critical_au", "t_critical_s"});
    for (int nb : cfg.n_bar_list) {
        const LevelEnergies lv = levels(nb);
        const double tc = critical_time(lv.delta);
        t.add_row({static_cast<double>(nb), lv.delta.to_double(), tc,
                   convert_time(tc, TimeUnit::au, TimeUnit::s)},
                  !std::isfinite(tc));
    }
    emit.emit(t, "breakdown.csv");
}

struct PacketContext {
    CoefficientSet coeffs;
    std::vector<LevelEnergies> levels;
    std::vector<SpinorWeights> rel_weights;
    std::vector<SpinorWeights> nr_weights;
};

PacketContext make_packet(const RunConfig& cfg) {
    PacketContext ctx;
    ctx.coeffs = gaussian_coefficients(cfg.packet.n_bar, cfg.packet.sigma0, cfg.packet.theta0,
                                       cfg.packet_window(), cfg.coefficient_floor());
    ctx.levels = levels_for(ctx.coeffs, cfg.level_fn());
    if (cfg.is_rotor()) {
        ctx.rel_weights = spinor_weights(cfg.rotor, ctx.coeffs);
        ctx.nr_weights = nonrelativistic_weights(ctx.coeffs.entries.size());
    }
    return ctx;
}

struct MomentRow {
    Moments rel;
    Moments nr;
};

MomentRow moments_at(const PacketContext& ctx, double t) {
    MomentRow row;
    row.rel = analytic_moments(evolve(ctx.coeffs, ctx.levels, t, Theory::REL), ctx.rel_weights);
    row.nr = analytic_moments(evolve(ctx.coeffs, ctx.levels, t, Theory::NR), ctx.nr_weights);
    return row;
}

void write_rotor_moments(const RunConfig& cfg, const RunOptions& opts, const Emitter& emit) {
    const PacketContext ctx = make_packet(cfg);
    OutputTable t({"window", "t_au", "mean_rel_rad", "mean_nr_rad", "var_rel_rad2",
                   "var_nr_rad2", "reldiff_mean", "reldiff_var"});
    for (size_t wi = 0; wi < cfg.windows.size(); ++wi) {
        const std::vector<double> ts = window_times(cfg.windows[wi]);
        std::vector<MomentRow> rows(ts.size());
        parallel_for(ts.size(), opts.threads,
                     [&](size_t i) { rows[i] = moments_at(ctx, ts[i]); });
        for (size_t i = 0; i < ts.size(); ++i) {
            const MomentRow& r = rows[i];
            const bool deg = r.rel.mean == 0.0 || r.rel.variance == 0.0;
            t.add_row({static_cast<double>(wi), ts[i], r.rel.mean, r.nr.mean, r.rel.variance,
                       r.nr.variance,
                       r.rel.mean == 0.0 ? 0.0 : (r.nr.mean - r.rel.mean) / r.rel.mean,
                       r.rel.variance == 0.0 ? 0.0
                                             : (r.nr.variance - r.rel.variance) / r.rel.variance},
                      deg);
        }
    }
    emit.emit(t, "moments.csv");
}

void write_rotor_density(const RunConfig& cfg, const RunOptions& opts, const Emitter& emit) {
    const PacketContext ctx = make_packet(cfg);
    OutputTable t({"t_au", "theta_rad", "rho_rel_per_rad", "rho_nr_per_rad"});
    std::vector<std::pair<AngularDensity, AngularDensity>> rows(cfg.density_times_au.size());
    parallel_for(cfg.density_times_au.size(), opts.threads, [&](size_t i) {
        const double time = cfg.density_times_au[i];
        rows[i].first = density(evolve(ctx.coeffs, ctx.levels, time, Theory::REL),
                                ctx.rel_weights, cfg.grid_size);
        rows[i].second = density(evolve(ctx.coeffs, ctx.levels, time, Theory::NR),
                                 ctx.nr_weights, cfg.grid_size);
    });
    for (size_t i = 0; i < rows.size(); ++i) {
        const double h = rows[i].first.grid_step();
        for (size_t g = 0; g < rows[i].first.values.size(); ++g)
            t.add_row({cfg.density_times_au[i], h * static_cast<double>(g),
                       rows[i].first.values[g], rows[i].second.values[g]});
    }
    emit.emit(t, "density.csv");
}

std::pair<AutocorrTrace, AutocorrTrace> autocorr_window(const PacketContext& ctx,
                                                        const TimeWindow& w,
                                                        unsigned threads) {
    const std::vector<double> ts = window_times(w);
    AutocorrTrace rel{Theory::REL, std::vector<AutocorrSample>(ts.size())};
    AutocorrTrace nr{Theory::NR, std::vector<AutocorrSample>(ts.size())};
    parallel_for(ts.size(), threads, [&](size_t i) {
        rel.samples[i] = {ts[i], autocorrelation(ctx.coeffs, ctx.levels, ts[i], Theory::REL)};
        nr.samples[i] = {ts[i], autocorrelation(ctx.coeffs, ctx.levels, ts[i], Theory::NR)};
    });
    return {std::move(rel), std::move(nr)};
}

void write_autocorr(const RunConfig& cfg, const RunOptions& opts, const Emitter& emit) {
    const PacketContext ctx = make_packet(cfg);
    OutputTable t({"window", "t_au", "re_c_rel", "im_c_rel", "abs2_c_rel", "re_c_nr", "im_c_nr",
                   "abs2_c_nr"});
    for (size_t wi = 0; wi < cfg.windows.size(); ++wi) {
        const auto [rel, nr] = autocorr_window(ctx, cfg.windows[wi], opts.threads);
        for (size_t i = 0; i < rel.samples.size(); ++i) {
            const auto& cr = rel.samples[i].c;
            const auto& cn = nr.samples[i].c;
            t.add_row({static_cast<double>(wi), rel.samples[i].t, cr.real(), cr.imag(),
                       std::norm(cr), cn.real(), cn.imag(), std::norm(cn)});
        }
    }
    emit.emit(t, "autocorr.csv");
}

void write_compare_rotor(const RunConfig& cfg, const RunOptions& opts, const Emitter& emit) {
    const PacketContext ctx = make_packet(cfg);
    OutputTable t({"window", "center_au", "max_reldiff_mean", "max_reldiff_var"});
    for (size_t wi = 0; wi < cfg.windows.size(); ++wi) {
        const std::vector<double> ts = window_times(cfg.windows[wi]);
        std::vector<MomentRow> rows(ts.size());
        parallel_for(ts.size(), opts.threads,
                     [&](size_t i) { rows[i] = moments_at(ctx, ts[i]); });
        std::vector<std::pair<double, double>> nr_mean(ts.size()), rel_mean(ts.size());
        std::vector<std::pair<double, double>> nr_var(ts.size()), rel_var(ts.size());
        for (size_t i = 0; i < ts.size(); ++i) {
            nr_mean[i] = {ts[i], rows[i].nr.mean};
            rel_mean[i] = {ts[i], rows[i].rel.mean};
            nr_var[i] = {ts[i], rows[i].nr.variance};
            rel_var[i] = {ts[i], rows[i].rel.variance};
        }
        const double mx_mean = windowed_max_abs(relative_difference_series(nr_mean, rel_mean),
                                                cfg.windows[wi].center_au,
                                                cfg.windows[wi].half_width_au);
        const double mx_var = windowed_max_abs(relative_difference_series(nr_var, rel_var),
                                               cfg.windows[wi].center_au,
                                               cfg.windows[wi].half_width_au);
        t.add_row({static_cast<double>(wi), cfg.windows[wi].center_au, mx_mean, mx_var});
    }
    emit.emit(t, "compare_maxima.csv");
}

void write_compare_hydrogen(const RunConfig& cfg, const RunOptions& opts, const Emitter& emit) {
    const PacketContext ctx = make_packet(cfg);
    const int nbar = static_cast<int>(std::llround(cfg.packet.n_bar));
    const LevelEnergies lv = hydrogen_levels(cfg.hydrogen, nbar);
    const double fraction = lv.delta.to_double() / lv.e_rel.to_double();

    OutputTable t({"window", "t_rel_au", "t_nr_au", "shift_au", "predicted_shift_au",
                   "ambiguous"});
    for (size_t wi = 0; wi < cfg.windows.size(); ++wi) {
        const auto [rel, nr] = autocorr_window(ctx, cfg.windows[wi], opts.threads);
        const auto rel_peaks = find_peaks(rel, cfg.peaks.min_height, cfg.peaks.min_separation_au);
        const auto nr_peaks = find_peaks(nr, cfg.peaks.min_height, cfg.peaks.min_separation_au);
        if (rel_peaks.empty() || nr_peaks.empty()) continue;
        const PairingResult pairs =
            pair_and_measure(rel_peaks, nr_peaks, fraction, cfg.windows[wi].step_au);
        for (const auto& p : pairs.pairs)
            t.add_row({static_cast<double>(wi), p.t_rel, p.t_nr, p.shift, p.predicted_shift,
                       p.ambiguous ? 1.0 : 0.0});
    }
    emit.emit(t, "compare_peaks.csv");
}

} // namespace

void run(const RunConfig& cfg, const RunOptions& opts) {
    const Emitter emit(cfg, opts);
    for (const std::string& out : cfg.outputs) {
        if (out == "energies") write_energies(cfg, emit);
        else if (out == "timescales") write_timescales(cfg, emit);
        else if (out == "breakdown") write_breakdown(cfg, emit);
        else if (out == "rotor-moments") write_rotor_moments(cfg, opts, emit);
        else if (out == "rotor-density") write_rotor_density(cfg, opts, emit);
        else if (out == "autocorr") write_autocorr(cfg, opts, emit);
        else if (out == "compare") {
            if (cfg.is_rotor()) write_compare_rotor(cfg, opts, emit);
            else write_compare_hydrogen(cfg, opts, emit);
        } else {
            throw ConfigError("unknown output: " + out);
        }
    }
}

void self_check() {
    // phase additivity
    const ExtendedReal e(5e-7);
    const double t1 = 1.25e13, t2 = 7.75e12;
    const double p12 = reduce_phase(e, t1 + t2).value();
    double psum = reduce_phase(e, t1).value() + reduce_phase(e, t2).value();
    psum = std::fmod(psum, 2.0 * kPi.hi);
    double gap = std::abs(p12 - psum);
    gap = std::min(gap, 2.0 * kPi.hi - gap);
    if (gap > 2e-8) throw ConsistencyError("self_check: phase additivity violated");

    // rotor spinor normalization identity
    const RotorModel rotor;
    for (int n : {-5, 0, 1, 19}) {
        const SpinorWeights w = spinor_weights(rotor, n);
        const double one = 2.0 * kPi.hi * w.norm * w.norm *
                           (1.0 + w.lower_weight * w.lower_weight);
        if (std::abs(one - 1.0) > 1e-12)
            throw ConsistencyError("self_check: spinor normalization identity violated");
    }

    // autocorrelation two-path agreement and NR revival
    const CoefficientSet coeffs = gaussian_coefficients(1.0, 0.271, kPi.hi, 0);
    const LevelFn levels = rotor_level_fn(rotor);
    const auto lv = levels_for(coeffs, levels);
    const double t = 3.7e9;
    const std::complex<double> direct = autocorrelation(coeffs, lv, t, Theory::REL);
    const std::complex<double> via_inner = coefficient_inner_product(
        evolve(coeffs, lv, t, Theory::REL), evolve(coeffs, lv, 0.0, Theory::REL));
    if (std::abs(direct - via_inner) > 1e-12)
        throw ConsistencyError("self_check: autocorrelation paths disagree");

    const ExtendedReal revival = kTwoPi * ExtendedReal(2e6);
    if (std::abs(std::abs(autocorrelation(coeffs, lv, revival, Theory::NR)) - 1.0) > 1e-8)
        throw ConsistencyError("self_check: non-relativistic revival is not exact");

    // analytic vs quadrature moments
    const auto weights = spinor_weights(rotor, coeffs);
    const EvolvedCoefficients ev = evolve(coeffs, lv, 1e6, Theory::REL);
    const Moments an = analytic_moments(ev, weights);
    const Moments qd = quadrature_moments(density(ev, weights, 32768));
    if (std::abs(an.mean - qd.mean) > 1e-6 * std::abs(qd.mean) ||
        std::abs(an.variance - qd.variance) > 1e-6 * std::abs(qd.variance))
        throw ConsistencyError("self_check: moment routes disagree");
}

} // namespace rqd
