#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "addbench/records.hpp"

namespace addbench {

struct LengthAccuracy {
    int d = 0;
    int n = 0;
    int correct = 0;
    double accuracy = 0.0;
    double std_err = 0.0;
};

struct Spectrum {
    std::vector<double> frequencies;  // cycles per unit length, 0..0.5
    std::vector<double> magnitudes;   // unit l2 norm unless degenerate
    bool degenerate = false;          // all-zero after mean removal
};

struct GeomFit {
    int n_target = 0;
    long sample_size = 0;            // qualifying problems (correct or close_carry)
    double p = 0.0;                  // fitted per-close-carry error probability
    std::vector<long> observed_counts;   // i = 0..n_target-1
    std::vector<double> observed_rate;   // counts / sample_size
    std::vector<double> predicted;       // p(1-p)^i
    std::vector<double> ci_lo;           // binomial 95% band around predicted
    std::vector<double> ci_hi;
};

struct HeatmapCell {
    int delta = 0;
    int next_column_sum = 0;
    long count = 0;
};

struct KindCount {
    int key = 0;  // d for error_type_by_length, edit distance for the histogram
    ErrorKind kind = ErrorKind::other;
    long count = 0;
};

struct OffsetCount {
    int offset = 0;
    long count = 0;
};

// Correct/total among ok-status responses, one entry per length present.
std::vector<LengthAccuracy> accuracy_by_length(std::span<const Row> rows);

// Centered moving average. Interior windows take (window-1)/2 points to the
// left and window/2 to the right; at the edges the window shrinks to the
// symmetric reach that fits.
std::vector<double> moving_average(std::span<const double> series, int window = 10);

// Partitions by d mod modulus; result[r] holds lengths with d % modulus == r.
std::vector<std::vector<LengthAccuracy>> mod_split(std::span<const LengthAccuracy> series, int modulus = 3);

// Magnitudes of the DFT of the mean-removed signal at frequencies k/N,
// k = 0..N/2, scaled to unit l2 norm. Requires N >= 8.
Spectrum dft_spectrum(std::span<const double> signal);

// 3-digit grouping: floor(d/3) full groups then the 1-2 digit remainder.
std::vector<int> token_groups(int d, int group_size = 3);

// First-error cells over every incorrect ok response with a computable
// first error, runaway and misalignment included.
std::vector<HeatmapCell> first_error_heatmap(std::span<const Row> rows);

std::vector<OffsetCount> offset_histogram(std::span<const Row> rows);

std::vector<KindCount> error_type_by_length(std::span<const Row> rows);

std::vector<KindCount> edit_distance_histogram(std::span<const Row> rows, int d_lo = 40, int d_hi = 80);

// Misalignment-classified fraction of ok responses per length over d_min..d_max.
std::vector<double> misalignment_rate_signal(std::span<const Row> rows, int d_min, int d_max);

// Geometric close-carry model over problems with exactly n_target close
// carries that were correct or close-carry errors. p is set so that
// 1-(1-p)^n matches the observed error rate; the histogram counts correct
// close carries (most significant first) before the erring column.
GeomFit fit_geometric(std::span<const Row> rows, int n_target = 15);

}  // namespace addbench
