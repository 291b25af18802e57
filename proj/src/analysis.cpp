#include "rqd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rqd {

ComparisonSeries relative_difference_series(const std::vector<std::pair<double, double>>& nr,
                                            const std::vector<std::pair<double, double>>& rel,
                                            double floor_fraction) {
    if (nr.size() != rel.size())
        throw std::invalid_argument("relative_difference_series: mismatched grids");

    double max_abs_rel = 0.0;
    for (size_t i = 0; i < nr.size(); ++i) {
        if (nr[i].first != rel[i].first)
            throw std::invalid_argument("relative_difference_series: mismatched grids");
        max_abs_rel = std::max(max_abs_rel, std::abs(rel[i].second));
    }
    const double floor = floor_fraction * max_abs_rel;

    ComparisonSeries out;
    out.samples.reserve(nr.size());
    for (size_t i = 0; i < nr.size(); ++i) {
        ComparisonSample s;
        s.t = nr[i].first;
        s.nr_value = nr[i].second;
        s.rel_value = rel[i].second;
        if (std::abs(s.rel_value) <= floor) {
            s.degenerate = true;
        } else {
            s.rel_diff = (s.nr_value - s.rel_value) / s.rel_value;
        }
        out.samples.push_back(s);
    }
    return out;
}

double windowed_max_abs(const ComparisonSeries& series, double center, double half_width) {
    double best = 0.0;
    size_t in_window = 0;
    for (const auto& s : series.samples) {
        if (s.t < center - half_width || s.t > center + half_width) continue;
        ++in_window;
        if (!s.degenerate) best = std::max(best, std::abs(s.rel_diff));
    }
    if (in_window == 0)
        throw std::invalid_argument("windowed_max_abs: empty window");
    return best;
}

namespace {

// Sub-sample vertex of the parabola through three equidistant points.
void refine(const double y0, const double y1, const double y2, const double h,
            double& dt, double& peak) {
    const double denom = y0 - 2.0 * y1 + y2;
    if (denom == 0.0) {
        dt = 0.0;
        peak = y1;
        return;
    }
    dt = 0.5 * h * (y0 - y2) / denom;
    peak = y1 - 0.125 * (y0 - y2) * (y0 - y2) / denom;
}

} // namespace

std::vector<Peak> find_peaks(const AutocorrTrace& trace, double min_height,
                             double min_separation) {
    const auto& samples = trace.samples;
    if (samples.size() < 3) return {};

    const double h = samples[1].t - samples[0].t;
    if (!(h > 0.0))
        throw std::invalid_argument("find_peaks: grid must be increasing");
    for (size_t i = 1; i < samples.size(); ++i) {
        const double step = samples[i].t - samples[i - 1].t;
        if (std::abs(step - h) > 1e-6 * h)
            throw std::invalid_argument("find_peaks: non-uniform grid");
    }
    if (h > min_separation / 10.0)
        throw std::invalid_argument("find_peaks: step must be <= min_separation/10");

    std::vector<double> y(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) y[i] = std::norm(samples[i].c);

    std::vector<Peak> peaks;
    for (size_t i = 1; i + 1 < samples.size(); ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
        if (y[i] <= min_height) continue;

        Peak p;
        double dt = 0.0;
        refine(y[i - 1], y[i], y[i + 1], h, dt, p.height);
        p.t = samples[i].t + dt;

        // prominence: drop to the higher of the flanking valleys
        double left = y[i];
        for (size_t k = i; k > 0 && y[k - 1] <= y[k]; --k) left = y[k - 1];
        double right = y[i];
        for (size_t k = i + 1; k < y.size() && y[k] <= y[k - 1]; ++k) right = y[k];
        p.prominence = p.height - std::max(left, right);

        peaks.push_back(p);
    }

    // enforce separation, higher peak wins
    std::vector<Peak> kept;
    for (const auto& p : peaks) {
        if (!kept.empty() && p.t - kept.back().t < min_separation) {
            if (p.height > kept.back().height) kept.back() = p;
        } else {
            kept.push_back(p);
        }
    }
    return kept;
}

namespace {

double median_spacing(const std::vector<Peak>& peaks) {
    std::vector<double> gaps;
    for (size_t i = 1; i < peaks.size(); ++i) gaps.push_back(peaks[i].t - peaks[i - 1].t);
    if (gaps.empty()) return 0.0;
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    return gaps[gaps.size() / 2];
}

} // namespace

PairingResult pair_and_measure(const std::vector<Peak>& rel_peaks,
                               const std::vector<Peak>& nr_peaks,
                               double expected_shift_fraction, double resolution) {
    if (rel_peaks.empty() || nr_peaks.empty())
        throw std::invalid_argument("pair_and_measure: empty peak list");

    const double spacing = std::max(median_spacing(rel_peaks), median_spacing(nr_peaks));
    const double tol = spacing > 0.0 ? 0.5 * spacing
                                     : std::numeric_limits<double>::infinity();
    const double res = resolution;

    PairingResult out;
    std::vector<bool> used(nr_peaks.size(), false);
    for (const auto& rp : rel_peaks) {
        const double target = rp.t * (1.0 + expected_shift_fraction);
        size_t best = nr_peaks.size();
        double best_d = tol;
        double second_d = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < nr_peaks.size(); ++i) {
            if (used[i]) continue;
            const double d = std::abs(nr_peaks[i].t - target);
            if (d < best_d) {
                second_d = best_d;
                best_d = d;
                best = i;
            } else if (d < second_d) {
                second_d = d;
            }
        }
        if (best == nr_peaks.size()) {
            out.unmatched_rel.push_back(rp);
            continue;
        }
        used[best] = true;
        PeakPair pair;
        pair.t_rel = rp.t;
        pair.t_nr = nr_peaks[best].t;
        pair.shift = pair.t_nr - pair.t_rel;
        pair.predicted_shift = expected_shift_fraction * rp.t;
        pair.ambiguous = (second_d - best_d) <= res;
        out.pairs.push_back(pair);
    }
    for (size_t i = 0; i < nr_peaks.size(); ++i)
        if (!used[i]) out.unmatched_nr.push_back(nr_peaks[i]);
    return out;
}

} // namespace rqd
