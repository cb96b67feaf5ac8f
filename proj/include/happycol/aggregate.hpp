#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "happycol/results.hpp"
#include "happycol/stats.hpp"

namespace happycol {

/// How records are split by rho before summarising.
enum class Scheme {
    all, ///< one group, no condition on rho
    xi,  ///< rho <= xi, rho > xi
    mu,  ///< rho < mu, mu <= rho <= xi_tilde, rho > xi_tilde
};

std::string_view to_string(Scheme s) noexcept;

struct SummaryRow {
    std::string algo;
    Scheme scheme = Scheme::all;
    std::string regime;
    std::size_t count = 0;
    /// Empty groups have no means.
    std::optional<double> alpha_mean;
    /// Sample SD; 0 for a single record, in which case sd_defined is false.
    double alpha_sd = 0.0;
    bool sd_defined = false;
    std::optional<double> acd_mean;
    std::size_t complete = 0;
    std::size_t incomplete = 0;
    std::size_t acd_exact = 0;
    std::size_t acd_inexact = 0;
    /// Mean ACD over the complete colourings of the group.
    std::optional<double> acd_mean_complete;
};

/// One row per algorithm (in order of first appearance) and regime of the
/// scheme, including empty regimes. Records without thresholds only enter
/// the `all` scheme.
std::vector<SummaryRow> aggregate(const std::vector<RunRecord>& records, Scheme scheme);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

/// Algorithms in order of first appearance.
std::vector<std::string> algorithms_in(const std::vector<RunRecord>& records);

enum class Metric { alpha, acd };

struct WelchRow {
    std::string algo_a;
    std::string algo_b;
    std::optional<WelchResult> result;
    std::string error;
};

/// Welch's test on the chosen metric for every ordered pair of distinct
/// algorithms in `algos` (all algorithms when empty).
std::vector<WelchRow> welch_table(const std::vector<RunRecord>& records, Metric metric,
                                  const std::vector<std::string>& algos = {});

void write_welch_csv(std::ostream& out, const std::vector<WelchRow>& rows);

enum class Axis { n, rho, k };
std::optional<Axis> parse_axis(std::string_view s) noexcept;

struct SeriesPoint {
    std::string algo;
    int bin = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
    std::optional<double> alpha_mean;
    std::optional<double> acd_mean;
};

/// Per-algorithm means of alpha and ACD in `bins` equal-width bins spanning
/// the observed range of the axis variable (shared by all algorithms). The
/// top edge belongs to the last bin. Empty bins carry no means.
std::vector<SeriesPoint> binned_means(const std::vector<RunRecord>& records, Axis axis, int bins);

struct Histogram {
    std::string algo;
    std::vector<std::size_t> counts;
    double mean = 0.0;
};

/// Histogram of alpha over [0, 1] per algorithm, plus the mean alpha.
std::vector<Histogram> alpha_histograms(const std::vector<RunRecord>& records, int bins = 100);

void write_series_csv(std::ostream& out, const std::vector<SeriesPoint>& series);
void write_histogram_csv(std::ostream& out, const std::vector<Histogram>& histograms);

} // namespace happycol
