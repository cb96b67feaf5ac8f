#pragma once

#include <span>
#include <stdexcept>
#include <string>

namespace happycol {

class StatisticsError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Regularised incomplete beta I_x(a, b), continued fraction evaluated to
/// relative tolerance 1e-10.
double incomplete_beta(double a, double b, double x);

/// Two-sided tail probability P(|T| >= |t|) for Student's t with `df`
/// degrees of freedom. Above `normal_switch_df` the standard normal is used.
inline constexpr double normal_switch_df = 1e5;
double students_t_two_sided(double t, double df);

double mean(std::span<const double> xs);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_sd(std::span<const double> xs);

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    double mean1 = 0.0;
    double mean2 = 0.0;
};

/// Welch's unequal-variance t-test with Welch-Satterthwaite degrees of
/// freedom. Throws StatisticsError when either sample has fewer than two
/// values or both sample variances are zero.
WelchResult welch_t(std::span<const double> a, std::span<const double> b);

/// p-values under 1e-16 print as "0"; otherwise shortest round-trip text.
inline constexpr double p_value_floor = 1e-16;
std::string format_p_value(double p);

} // namespace happycol
