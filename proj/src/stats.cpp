#include "addbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace addbench {

std::vector<LengthAccuracy> accuracy_by_length(std::span<const Row> rows) {
    if (rows.empty()) throw std::invalid_argument("accuracy_by_length: no results");
    std::map<int, std::pair<int, int>> by_d;  // d -> (n, correct)
    for (const Row& row : rows) {
        if (row.response.status != ResponseStatus::ok) continue;
        auto& [n, correct] = by_d[row.problem.d];
        ++n;
        if (row.graded.correct) ++correct;
    }
    std::vector<LengthAccuracy> out;
    out.reserve(by_d.size());
    for (const auto& [d, nc] : by_d) {
        LengthAccuracy la;
        la.d = d;
        la.n = nc.first;
        la.correct = nc.second;
        la.accuracy = la.n > 0 ? static_cast<double>(la.correct) / la.n : 0.0;
        la.std_err = la.n > 0 ? std::sqrt(la.accuracy * (1.0 - la.accuracy) / la.n) : 0.0;
        out.push_back(la);
    }
    return out;
}

std::vector<double> moving_average(std::span<const double> series, int window) {
    if (window < 1) throw std::invalid_argument("moving_average: window must be >= 1");
    const std::size_t n = series.size();
    const std::size_t reach_left = static_cast<std::size_t>((window - 1) / 2);
    const std::size_t reach_right = static_cast<std::size_t>(window / 2);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo, hi;
        if (i >= reach_left && n - 1 - i >= reach_right) {
            lo = i - reach_left;
            hi = i + reach_right;
        } else {
            const std::size_t r = std::min(i, n - 1 - i);
            lo = i - r;
            hi = i + r;
        }
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) sum += series[j];
        out[i] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

std::vector<std::vector<LengthAccuracy>> mod_split(std::span<const LengthAccuracy> series, int modulus) {
    if (modulus < 2) throw std::invalid_argument("mod_split: modulus must be >= 2");
    std::vector<std::vector<LengthAccuracy>> out(static_cast<std::size_t>(modulus));
    for (const LengthAccuracy& la : series) out[static_cast<std::size_t>(la.d % modulus)].push_back(la);
    return out;
}

Spectrum dft_spectrum(std::span<const double> signal) {
    const std::size_t n = signal.size();
    if (n < 8) throw std::invalid_argument("dft_spectrum: need at least 8 samples");
    double mean = 0.0;
    for (double v : signal) mean += v;
    mean /= static_cast<double>(n);

    Spectrum spec;
    const std::size_t bins = n / 2 + 1;
    spec.frequencies.reserve(bins);
    spec.magnitudes.reserve(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        double re = 0.0, im = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(j) /
                                 static_cast<double>(n);
            const double x = signal[j] - mean;
            re += x * std::cos(angle);
            im += x * std::sin(angle);
        }
        spec.frequencies.push_back(static_cast<double>(k) / static_cast<double>(n));
        spec.magnitudes.push_back(std::hypot(re, im));
    }
    double norm = 0.0;
    for (double m : spec.magnitudes) norm += m * m;
    norm = std::sqrt(norm);
    if (norm < 1e-12) {
        spec.degenerate = true;  // constant input; leave the zeros as-is
        return spec;
    }
    for (double& m : spec.magnitudes) m /= norm;
    return spec;
}

std::vector<int> token_groups(int d, int group_size) {
    if (d < 1) throw std::invalid_argument("token_groups: d must be >= 1");
    if (group_size < 2) throw std::invalid_argument("token_groups: group_size must be >= 2");
    std::vector<int> out(static_cast<std::size_t>(d / group_size), group_size);
    if (d % group_size != 0) out.push_back(d % group_size);
    return out;
}

std::vector<HeatmapCell> first_error_heatmap(std::span<const Row> rows) {
    std::map<std::pair<int, int>, long> counts;
    for (const Row& row : rows) {
        if (row.response.status != ResponseStatus::ok) continue;
        if (row.graded.correct || !row.graded.extracted) continue;
        const ColumnProfile profile = column_profile(row.problem.a, row.problem.b);
        const auto fe = first_error(*row.graded.extracted, row.graded.truth, profile);
        if (fe && fe->next_column_sum) ++counts[{fe->delta, *fe->next_column_sum}];
    }
    std::vector<HeatmapCell> out;
    out.reserve(counts.size());
    for (const auto& [key, count] : counts) out.push_back({key.first, key.second, count});
    return out;
}

std::vector<OffsetCount> offset_histogram(std::span<const Row> rows) {
    std::map<int, long> counts;
    for (const Row& row : rows) {
        if (row.cls.kind == ErrorKind::misalignment && row.cls.offset) ++counts[*row.cls.offset];
    }
    std::vector<OffsetCount> out;
    out.reserve(counts.size());
    for (const auto& [offset, count] : counts) out.push_back({offset, count});
    return out;
}

std::vector<KindCount> error_type_by_length(std::span<const Row> rows) {
    std::map<std::pair<int, int>, long> counts;  // (d, kind) -> count
    for (const Row& row : rows) {
        switch (row.cls.kind) {
            case ErrorKind::runaway:
            case ErrorKind::misalignment:
            case ErrorKind::close_carry:
            case ErrorKind::other:
                ++counts[{row.problem.d, static_cast<int>(row.cls.kind)}];
                break;
            default:
                break;
        }
    }
    std::vector<KindCount> out;
    out.reserve(counts.size());
    for (const auto& [key, count] : counts)
        out.push_back({key.first, static_cast<ErrorKind>(key.second), count});
    return out;
}

std::vector<KindCount> edit_distance_histogram(std::span<const Row> rows, int d_lo, int d_hi) {
    std::map<std::pair<int, int>, long> counts;  // (edit_distance, kind)
    for (const Row& row : rows) {
        if (row.problem.d < d_lo || row.problem.d > d_hi) continue;
        if (row.graded.correct || !row.graded.edit_distance) continue;
        ++counts[{*row.graded.edit_distance, static_cast<int>(row.cls.kind)}];
    }
    std::vector<KindCount> out;
    out.reserve(counts.size());
    for (const auto& [key, count] : counts)
        out.push_back({key.first, static_cast<ErrorKind>(key.second), count});
    return out;
}

std::vector<double> misalignment_rate_signal(std::span<const Row> rows, int d_min, int d_max) {
    if (d_min < 1 || d_max < d_min) throw std::invalid_argument("misalignment_rate_signal: bad range");
    std::vector<long> total(static_cast<std::size_t>(d_max - d_min + 1), 0);
    std::vector<long> hits(total.size(), 0);
    for (const Row& row : rows) {
        if (row.problem.d < d_min || row.problem.d > d_max) continue;
        if (row.response.status != ResponseStatus::ok) continue;
        const auto idx = static_cast<std::size_t>(row.problem.d - d_min);
        ++total[idx];
        if (row.cls.kind == ErrorKind::misalignment) ++hits[idx];
    }
    std::vector<double> out(total.size(), 0.0);
    for (std::size_t i = 0; i < total.size(); ++i)
        out[i] = total[i] > 0 ? static_cast<double>(hits[i]) / static_cast<double>(total[i]) : 0.0;
    return out;
}

namespace {

// Number of close-carry columns strictly more significant than the erring
// one, given the erring column recovered from the first-error position.
std::optional<int> successes_before_error(const Row& row) {
    if (!row.cls.first_error || !row.graded.extracted) return std::nullopt;
    const ColumnProfile profile = column_profile(row.problem.a, row.problem.b);
    const std::size_t padded =
        std::max(row.graded.extracted->size(), row.graded.truth.size());
    const std::size_t column = padded - 1 - static_cast<std::size_t>(row.cls.first_error->position);
    if (column == 0) return std::nullopt;  // no column to the right; not a close-carry shape
    const std::size_t erring = column - 1;
    int above = 0;
    for (std::size_t pos : profile.close_carry_positions)
        if (pos > erring) ++above;
    return above;
}

}  // namespace

GeomFit fit_geometric(std::span<const Row> rows, int n_target) {
    if (n_target < 1) throw std::invalid_argument("fit_geometric: n_target must be >= 1");
    GeomFit fit;
    fit.n_target = n_target;
    fit.observed_counts.assign(static_cast<std::size_t>(n_target), 0);

    long errors = 0;
    for (const Row& row : rows) {
        if (row.cls.kind != ErrorKind::correct && row.cls.kind != ErrorKind::close_carry) continue;
        if (count_close_carries(row.problem.a, row.problem.b) != static_cast<std::size_t>(n_target)) continue;
        ++fit.sample_size;
        if (row.cls.kind != ErrorKind::close_carry) continue;
        ++errors;
        if (const auto i = successes_before_error(row); i && *i < n_target)
            ++fit.observed_counts[static_cast<std::size_t>(*i)];
    }
    if (fit.sample_size == 0) return fit;  // explicit no-data result

    const double e = static_cast<double>(errors) / static_cast<double>(fit.sample_size);
    fit.p = 1.0 - std::pow(1.0 - e, 1.0 / static_cast<double>(n_target));

    fit.observed_rate.reserve(static_cast<std::size_t>(n_target));
    fit.predicted.reserve(static_cast<std::size_t>(n_target));
    for (int i = 0; i < n_target; ++i) {
        fit.observed_rate.push_back(static_cast<double>(fit.observed_counts[static_cast<std::size_t>(i)]) /
                                    static_cast<double>(fit.sample_size));
        const double q = fit.p * std::pow(1.0 - fit.p, i);
        fit.predicted.push_back(q);
        const double se = std::sqrt(std::max(q * (1.0 - q), 0.0) / static_cast<double>(fit.sample_size));
        fit.ci_lo.push_back(std::max(0.0, q - 1.96 * se));
        fit.ci_hi.push_back(std::min(1.0, q + 1.96 * se));
    }
    return fit;
}

}  // namespace addbench
