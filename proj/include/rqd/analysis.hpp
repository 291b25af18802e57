#pragma once

#include <optional>
#include <vector>

#include "rqd/wavepacket.hpp"

namespace rqd {

struct ComparisonSample {
    double t = 0.0;
    double nr_value = 0.0;
    double rel_value = 0.0;
    double rel_diff = 0.0; // (nr - rel)/rel
    bool degenerate = false;
};

// Pointwise (NR - REL)/REL over a shared time grid. Samples where |REL|
// drops below floor_fraction * max|REL| are flagged degenerate and excluded
// from maxima (the variance passes near zero at revival instants).
struct ComparisonSeries {
    std::vector<ComparisonSample> samples;
};

ComparisonSeries relative_difference_series(const std::vector<std::pair<double, double>>& nr,
                                            const std::vector<std::pair<double, double>>& rel,
                                            double floor_fraction = 1e-12);

// max |rel_diff| over non-degenerate samples in [center - hw, center + hw].
double windowed_max_abs(const ComparisonSeries& series, double center, double half_width);

struct Peak {
    double t = 0.0;          // sub-sample, parabolic interpolation
    double height = 0.0;     // |C|^2 at the refined position
    double prominence = 0.0; // height above the higher of the flanking minima
};

// Local maxima of |C|^2 above min_height, at least min_separation apart
// (the higher peak wins a conflict). Requires a uniform grid sampled at
// step <= min_separation/10.
std::vector<Peak> find_peaks(const AutocorrTrace& trace, double min_height,
                             double min_separation);

struct PeakPair {
    double t_rel = 0.0;
    double t_nr = 0.0;
    double shift = 0.0;           // t_nr - t_rel
    double predicted_shift = 0.0; // (delta/E) * t_rel
    bool ambiguous = false;       // two NR candidates within one sampling step
};

struct PairingResult {
    std::vector<PeakPair> pairs;
    std::vector<Peak> unmatched_rel;
    std::vector<Peak> unmatched_nr;
};

// Matches each REL peak to the NR peak nearest to t_rel*(1 + expected
// fraction), within half the local peak spacing. The prediction-guided
// search keeps pairing correct once shifts exceed one spacing, where
// nearest-neighbour matching picks the wrong partner by construction.
// A pair whose two best candidates sit within `resolution` (the sampling
// step of the underlying trace) of each other is flagged ambiguous.
PairingResult pair_and_measure(const std::vector<Peak>& rel_peaks,
                               const std::vector<Peak>& nr_peaks,
                               double expected_shift_fraction,
                               double resolution = 0.0);

} // namespace rqd
