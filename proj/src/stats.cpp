#include "happycol/stats.hpp"

#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "happycol/instance_io.hpp"

namespace happycol {

namespace {

constexpr double beta_tolerance = 1e-10;
constexpr int beta_max_iterations = 10000;

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x)
{
    constexpr double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) {
        d = tiny;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= beta_max_iterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < beta_tolerance) {
            return h;
        }
    }
    throw StatisticsError(fmt::format("incomplete beta did not converge (a={}, b={}, x={})", a, b, x));
}

} // namespace

double incomplete_beta(double a, double b, double x)
{
    if (!(a > 0 && b > 0) || !(x >= 0 && x <= 1)) {
        throw StatisticsError(fmt::format("incomplete beta outside its domain (a={}, b={}, x={})", a, b, x));
    }
    if (x == 0.0 || x == 1.0) {
        return x;
    }
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double students_t_two_sided(double t, double df)
{
    if (!(df > 0)) {
        throw StatisticsError(fmt::format("degrees of freedom {} must be positive", df));
    }
    if (std::isinf(t)) {
        return 0.0;
    }
    if (df > normal_switch_df) {
        return std::erfc(std::fabs(t) / std::sqrt(2.0));
    }
    return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

double mean(std::span<const double> xs)
{
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs)
{
    if (xs.size() < 2) {
        return 0.0;
    }
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - m) * (x - m);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

WelchResult welch_t(std::span<const double> a, std::span<const double> b)
{
    if (a.size() < 2 || b.size() < 2) {
        throw StatisticsError(fmt::format("Welch's test needs at least two values per sample (got {} and {})",
                                          a.size(), b.size()));
    }
    WelchResult r;
    r.n1 = a.size();
    r.n2 = b.size();
    r.mean1 = mean(a);
    r.mean2 = mean(b);
    const double sa = sample_sd(a);
    const double sb = sample_sd(b);
    const double va = sa * sa / static_cast<double>(r.n1);
    const double vb = sb * sb / static_cast<double>(r.n2);
    const double se2 = va + vb;
    if (se2 == 0.0) {
        throw StatisticsError("Welch's statistic is undefined: both samples have zero variance");
    }
    r.t = (r.mean1 - r.mean2) / std::sqrt(se2);
    r.df = se2 * se2 / (va * va / static_cast<double>(r.n1 - 1) + vb * vb / static_cast<double>(r.n2 - 1));
    r.p = students_t_two_sided(r.t, r.df);
    return r;
}

std::string format_p_value(double p)
{
    return p < p_value_floor ? std::string("0") : format_double(p);
}

} // namespace happycol
