#include "happycol/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/core.h>

#include "happycol/instance_io.hpp"

namespace happycol {

std::string_view to_string(Scheme s) noexcept
{
    switch (s) {
    case Scheme::all: return "all";
    case Scheme::xi: return "xi";
    case Scheme::mu: return "mu";
    }
    return "?";
}

std::vector<std::string> algorithms_in(const std::vector<RunRecord>& records)
{
    std::vector<std::string> algos;
    for (const auto& r : records) {
        if (std::find(algos.begin(), algos.end(), r.algo) == algos.end()) {
            algos.push_back(r.algo);
        }
    }
    return algos;
}

namespace {

std::vector<std::string> regimes_of(Scheme s)
{
    switch (s) {
    case Scheme::all: return {"all"};
    case Scheme::xi: return {std::string(to_string(XiRegime::below_xi)), std::string(to_string(XiRegime::above_xi))};
    case Scheme::mu:
        return {std::string(to_string(MuRegime::below_mu)), std::string(to_string(MuRegime::mu_to_xi_tilde)),
                std::string(to_string(MuRegime::above_xi_tilde))};
    }
    return {};
}

std::optional<std::string> regime_of(const RunRecord& r, Scheme s)
{
    if (s == Scheme::all) {
        return "all";
    }
    if (!r.regime) {
        return std::nullopt;
    }
    return std::string(s == Scheme::xi ? to_string(r.regime->xi) : to_string(r.regime->mu));
}

std::string opt(const std::optional<double>& x)
{
    return x ? format_double(*x) : std::string();
}

} // namespace

std::vector<SummaryRow> aggregate(const std::vector<RunRecord>& records, Scheme scheme)
{
    std::vector<SummaryRow> rows;
    for (const auto& algo : algorithms_in(records)) {
        for (const auto& regime : regimes_of(scheme)) {
            SummaryRow row;
            row.algo = algo;
            row.scheme = scheme;
            row.regime = regime;
            std::vector<double> alpha;
            std::vector<double> acd;
            std::vector<double> acd_complete;
            for (const auto& r : records) {
                if (r.algo != algo || regime_of(r, scheme) != regime) {
                    continue;
                }
                alpha.push_back(r.alpha);
                ++(r.complete ? row.complete : row.incomplete);
                ++(r.acd_exact ? row.acd_exact : row.acd_inexact);
                if (r.acd) {
                    acd.push_back(*r.acd);
                    if (r.complete) {
                        acd_complete.push_back(*r.acd);
                    }
                }
            }
            row.count = alpha.size();
            if (!alpha.empty()) {
                row.alpha_mean = mean(alpha);
                row.alpha_sd = sample_sd(alpha);
                row.sd_defined = alpha.size() >= 2;
            }
            if (!acd.empty()) {
                row.acd_mean = mean(acd);
            }
            if (!acd_complete.empty()) {
                row.acd_mean_complete = mean(acd_complete);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows)
{
    out << "algo,scheme,regime,count,alpha_mean,alpha_sd,sd_defined,acd_mean,complete,incomplete,acd_exact,"
           "acd_inexact,acd_mean_complete\n";
    for (const auto& r : rows) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.algo, to_string(r.scheme), r.regime, r.count,
                           opt(r.alpha_mean), r.alpha_mean ? format_double(r.alpha_sd) : std::string(),
                           r.sd_defined ? 1 : 0, opt(r.acd_mean), r.complete, r.incomplete, r.acd_exact,
                           r.acd_inexact, opt(r.acd_mean_complete));
    }
}

std::vector<WelchRow> welch_table(const std::vector<RunRecord>& records, Metric metric,
                                  const std::vector<std::string>& algos_in)
{
    const auto algos = algos_in.empty() ? algorithms_in(records) : algos_in;
    auto sample = [&](const std::string& algo) {
        std::vector<double> xs;
        for (const auto& r : records) {
            if (r.algo != algo) {
                continue;
            }
            if (metric == Metric::alpha) {
                xs.push_back(r.alpha);
            } else if (r.acd) {
                xs.push_back(*r.acd);
            }
        }
        return xs;
    };
    std::vector<WelchRow> rows;
    for (const auto& a : algos) {
        const auto xa = sample(a);
        for (const auto& b : algos) {
            if (a == b) {
                continue;
            }
            WelchRow row{a, b, std::nullopt, {}};
            try {
                row.result = welch_t(xa, sample(b));
            } catch (const StatisticsError& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_welch_csv(std::ostream& out, const std::vector<WelchRow>& rows)
{
    out << "algo_a,algo_b,n1,n2,mean1,mean2,t,df,p,error\n";
    for (const auto& row : rows) {
        if (row.result) {
            const auto& w = *row.result;
            out << fmt::format("{},{},{},{},{},{},{},{},{},\n", row.algo_a, row.algo_b, w.n1, w.n2,
                               format_double(w.mean1), format_double(w.mean2), format_double(w.t),
                               format_double(w.df), format_p_value(w.p));
        } else {
            out << fmt::format("{},{},,,,,,,,\"{}\"\n", row.algo_a, row.algo_b, row.error);
        }
    }
}

std::optional<Axis> parse_axis(std::string_view s) noexcept
{
    if (s == "n") {
        return Axis::n;
    }
    if (s == "rho") {
        return Axis::rho;
    }
    if (s == "k") {
        return Axis::k;
    }
    return std::nullopt;
}

namespace {

double axis_value(const RunRecord& r, Axis axis)
{
    switch (axis) {
    case Axis::n: return static_cast<double>(r.n);
    case Axis::rho: return r.rho;
    case Axis::k: return static_cast<double>(r.k);
    }
    return 0.0;
}

int bin_of(double x, double lo, double hi, int bins)
{
    if (hi <= lo) {
        return 0;
    }
    auto b = static_cast<int>(std::floor((x - lo) / (hi - lo) * bins));
    return std::clamp(b, 0, bins - 1);
}

} // namespace

std::vector<SeriesPoint> binned_means(const std::vector<RunRecord>& records, Axis axis, int bins)
{
    if (bins < 1) {
        throw std::invalid_argument("bins must be positive");
    }
    std::vector<SeriesPoint> out;
    if (records.empty()) {
        return out;
    }
    double lo = axis_value(records.front(), axis);
    double hi = lo;
    for (const auto& r : records) {
        lo = std::min(lo, axis_value(r, axis));
        hi = std::max(hi, axis_value(r, axis));
    }
    const double width = (hi - lo) / bins;
    for (const auto& algo : algorithms_in(records)) {
        std::vector<double> alpha_sum(static_cast<std::size_t>(bins), 0.0);
        std::vector<double> acd_sum(static_cast<std::size_t>(bins), 0.0);
        std::vector<std::size_t> count(static_cast<std::size_t>(bins), 0);
        std::vector<std::size_t> acd_count(static_cast<std::size_t>(bins), 0);
        for (const auto& r : records) {
            if (r.algo != algo) {
                continue;
            }
            const auto b = static_cast<std::size_t>(bin_of(axis_value(r, axis), lo, hi, bins));
            alpha_sum[b] += r.alpha;
            ++count[b];
            if (r.acd) {
                acd_sum[b] += *r.acd;
                ++acd_count[b];
            }
        }
        for (int b = 0; b < bins; ++b) {
            const auto i = static_cast<std::size_t>(b);
            SeriesPoint pt;
            pt.algo = algo;
            pt.bin = b;
            pt.lo = lo + width * b;
            pt.hi = b + 1 == bins ? hi : lo + width * (b + 1);
            pt.count = count[i];
            if (count[i] > 0) {
                pt.alpha_mean = alpha_sum[i] / static_cast<double>(count[i]);
            }
            if (acd_count[i] > 0) {
                pt.acd_mean = acd_sum[i] / static_cast<double>(acd_count[i]);
            }
            out.push_back(std::move(pt));
        }
    }
    return out;
}

std::vector<Histogram> alpha_histograms(const std::vector<RunRecord>& records, int bins)
{
    if (bins < 1) {
        throw std::invalid_argument("bins must be positive");
    }
    std::vector<Histogram> out;
    for (const auto& algo : algorithms_in(records)) {
        Histogram h;
        h.algo = algo;
        h.counts.assign(static_cast<std::size_t>(bins), 0);
        std::vector<double> alpha;
        for (const auto& r : records) {
            if (r.algo == algo) {
                ++h.counts[static_cast<std::size_t>(bin_of(r.alpha, 0.0, 1.0, bins))];
                alpha.push_back(r.alpha);
            }
        }
        h.mean = mean(alpha);
        out.push_back(std::move(h));
    }
    return out;
}

void write_series_csv(std::ostream& out, const std::vector<SeriesPoint>& series)
{
    out << "algo,bin,lo,hi,count,alpha_mean,acd_mean\n";
    for (const auto& p : series) {
        out << fmt::format("{},{},{},{},{},{},{}\n", p.algo, p.bin, format_double(p.lo), format_double(p.hi), p.count,
                           opt(p.alpha_mean), opt(p.acd_mean));
    }
}

void write_histogram_csv(std::ostream& out, const std::vector<Histogram>& histograms)
{
    out << "algo,bin,lo,hi,count,mean_alpha\n";
    for (const auto& h : histograms) {
        const auto bins = h.counts.size();
        for (std::size_t b = 0; b < bins; ++b) {
            out << fmt::format("{},{},{},{},{},{}\n", h.algo, b, format_double(static_cast<double>(b) / bins),
                               format_double(static_cast<double>(b + 1) / bins), h.counts[b], format_double(h.mean));
        }
    }
}

} // namespace happycol
