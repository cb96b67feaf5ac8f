#include <doctest.h>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "happycol/random.hpp"
#include "happycol/stats.hpp"

using namespace happycol;

namespace {

double reference_two_sided(double t, double df)
{
    boost::math::students_t dist(df);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

std::vector<double> sample(Rng& rng, std::size_t n, double shift, double scale)
{
    std::vector<double> xs(n);
    for (auto& x : xs) {
        x = shift + scale * rng.uniform();
    }
    return xs;
}

} // namespace

TEST_CASE("incomplete beta against the reference")
{
    Rng rng(5);
    for (int i = 0; i < 2000; ++i) {
        const double a = 0.05 + rng.uniform() * 200;
        const double b = 0.05 + rng.uniform() * 20;
        const double x = rng.uniform();
        const double ours = incomplete_beta(a, b, x);
        const double ref = boost::math::ibeta(a, b, x);
        CHECK(std::fabs(ours - ref) <= 1e-9 * std::max(1.0, std::fabs(ref)) + 1e-300);
    }
    CHECK(incomplete_beta(2, 3, 0.0) == 0.0);
    CHECK(incomplete_beta(2, 3, 1.0) == 1.0);
    CHECK_THROWS_AS(incomplete_beta(0, 1, 0.5), StatisticsError);
    CHECK_THROWS_AS(incomplete_beta(1, 1, 1.5), StatisticsError);
}

TEST_CASE("t distribution tail against the reference")
{
    for (double df : {1.0, 2.5, 8.0, 30.0, 1000.0, 50000.0}) {
        for (double t : {0.0, 0.1, 1.0, 2.0, 5.0, 20.0}) {
            const double ref = reference_two_sided(t, df);
            CHECK(std::fabs(students_t_two_sided(t, df) - ref) <= 1e-9 * std::max(ref, 1e-12) + 1e-15);
            CHECK(students_t_two_sided(-t, df) == students_t_two_sided(t, df));
        }
    }
    // Past the switch the normal tail is used; it agrees with the t tail closely.
    CHECK(std::fabs(students_t_two_sided(1.96, 2e5) - reference_two_sided(1.96, 2e5)) < 1e-5);
    CHECK_THROWS_AS(students_t_two_sided(1.0, 0.0), StatisticsError);
}

TEST_CASE("welch examples")
{
    const double same[] = {1, 2, 3};
    const auto zero = welch_t(same, same);
    CHECK(zero.t == 0.0);
    CHECK(zero.p == doctest::Approx(1.0).epsilon(1e-12));

    const double a[] = {1, 2, 3, 4, 5};
    const double b[] = {2, 3, 4, 5, 6};
    const auto r = welch_t(a, b);
    CHECK(r.t == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r.df == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(std::fabs(r.p - 0.3466) < 1e-3);
    CHECK(r.p == doctest::Approx(reference_two_sided(-1.0, 8.0)).epsilon(1e-10));
    CHECK(r.n1 == 5);
    CHECK(r.mean2 == 4.0);

    const double zeros[] = {0, 0, 0};
    const double ones[] = {1, 1, 1};
    CHECK_THROWS_AS(welch_t(zeros, ones), StatisticsError);
    const double single[] = {1};
    CHECK_THROWS_AS(welch_t(single, a), StatisticsError);
}

TEST_CASE("welch unequal variances")
{
    const double a[] = {10.1, 9.8, 10.3, 10.0, 9.9, 10.2};
    const double b[] = {8.0, 12.5, 9.1, 11.7};
    const auto r = welch_t(a, b);
    // Satterthwaite degrees of freedom computed by hand from the sample variances.
    const double va = 0.035 / 6;
    const double mb = (8.0 + 12.5 + 9.1 + 11.7) / 4;
    const double ssb = (8.0 - mb) * (8.0 - mb) + (12.5 - mb) * (12.5 - mb) + (9.1 - mb) * (9.1 - mb) +
                       (11.7 - mb) * (11.7 - mb);
    const double vb = ssb / 3 / 4;
    CHECK(r.df == doctest::Approx((va + vb) * (va + vb) / (va * va / 5 + vb * vb / 3)).epsilon(1e-9));
    CHECK(r.t == doctest::Approx((10.05 - mb) / std::sqrt(va + vb)).epsilon(1e-9));
}

TEST_CASE("welch antisymmetry and identity")
{
    Rng rng(17);
    for (int i = 0; i < 1000; ++i) {
        const auto a = sample(rng, 2 + rng.below(30), rng.uniform(), 0.1 + rng.uniform());
        const auto b = sample(rng, 2 + rng.below(30), rng.uniform(), 0.1 + rng.uniform());
        const auto ab = welch_t(a, b);
        const auto ba = welch_t(b, a);
        CHECK(ab.t == -ba.t);
        CHECK(ab.p == ba.p);
        CHECK(ab.df == ba.df);
        CHECK(ab.p >= 0.0);
        CHECK(ab.p <= 1.0);
        CHECK(welch_t(a, a).t == 0.0);
    }
}

TEST_CASE("p-value formatting")
{
    CHECK(format_p_value(1e-17) == "0");
    CHECK(format_p_value(0.0) == "0");
    CHECK(format_p_value(0.25) == "0.25");
    CHECK(format_p_value(1e-16) == "1e-16");

    std::vector<double> a(50, 0.0);
    std::vector<double> b(50, 1.0);
    a[0] = 0.001;
    b[0] = 0.999;
    const auto r = welch_t(a, b);
    CHECK(r.p < p_value_floor);
    CHECK(format_p_value(r.p) == "0");
}

TEST_CASE("mean and sample sd")
{
    const double xs[] = {2, 4, 4, 4, 5, 5, 7, 9};
    CHECK(mean(xs) == 5.0);
    CHECK(sample_sd(xs) == doctest::Approx(std::sqrt(32.0 / 7.0)));
    const double one[] = {0.75};
    CHECK(sample_sd(one) == 0.0);
}
