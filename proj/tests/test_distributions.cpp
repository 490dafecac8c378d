#include "clesh/distributions.hpp"

#include <doctest.h>

#include <cmath>

using namespace clesh;

TEST_CASE("normal cdf closed-form anchors") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(normal_cdf(1.96) == doctest::Approx(0.97500210485178).epsilon(1e-12));
    CHECK(normal_sf(1.96) == doctest::Approx(1.0 - 0.97500210485178).epsilon(1e-10));
    CHECK(normal_cdf(-8.0) + normal_sf(-8.0) == doctest::Approx(1.0));
}

TEST_CASE("normal quantile inverts the cdf") {
    for (double p : {1e-10, 1e-4, 0.025, 0.3, 0.5, 0.8, 0.975, 1.0 - 1e-6}) {
        CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-11));
    }
}

TEST_CASE("t cdf anchors") {
    // Cauchy closed form: F(1) = 1/2 + atan(1)/pi = 0.75
    CHECK(t_cdf(1.0, 1.0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(std::fabs(t_cdf(4.242640687119285, 4.0) - 0.993382200218) < 1e-10);
    CHECK(std::fabs(t_cdf(-2.3, 7.0) - 0.02749554760219) < 1e-10);
    CHECK(std::fabs(t_cdf(0.7, 30.0) - 0.75533977825016) < 1e-10);
    CHECK(t_two_sided_p(4.242640687119285, 4.0) == doctest::Approx(0.013235599564).epsilon(1e-9));
}

TEST_CASE("chi-square cdf anchors") {
    // df=2 closed form: 1 - exp(-x/2)
    CHECK(std::fabs(chi_square_cdf(2.0, 2.0) - (1.0 - std::exp(-1.0))) < 1e-12);
    CHECK(std::fabs(chi_square_cdf(1.3, 5.0) - 0.06506832090626) < 1e-10);
    CHECK(chi_square_sf(2.0, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("F cdf anchors") {
    CHECK(std::fabs(f_cdf(4.0, 2.0, 3.0) - 0.85757282694534) < 1e-10);
    CHECK(std::fabs(f_sf(4.0, 2.0, 3.0) - 0.14242717305466) < 1e-10);
    CHECK(std::fabs(f_cdf(2.5, 5.0, 12.0) - 0.91017584639506) < 1e-10);
}

TEST_CASE("studentized range calibration against published tables") {
    // Harter's tables: the 5% critical value for k=3 groups, 10 df is 3.877.
    const double q = studentized_range_quantile(0.95, 3.0, 10.0);
    CHECK(std::fabs(q - 3.877) < 0.01);

    CHECK(std::fabs(studentized_range_cdf(3.877, 3.0, 10.0) - 0.9500129112) < 1e-6);
    CHECK(std::fabs(studentized_range_cdf(3.0, 3.0, 10.0) - 0.8650165848) < 1e-6);
    CHECK(std::fabs(studentized_range_cdf(2.0, 4.0, 20.0) - 0.4945596546) < 1e-6);
    CHECK(std::fabs(studentized_range_cdf(5.0, 5.0, 8.0) - 0.9551948723) < 1e-6);
}

TEST_CASE("studentized range with k=2 matches the t distribution") {
    // The range of two means is |t| * sqrt(2): P(Q > q) = 2 P(T > q/sqrt(2)).
    for (double q : {1.0, 2.0, 3.2, 4.5}) {
        for (double df : {5.0, 10.0, 40.0}) {
            const double sf = studentized_range_sf(q, 2.0, df);
            const double via_t = 2.0 * t_sf(q / std::sqrt(2.0), df);
            CHECK(sf == doctest::Approx(via_t).epsilon(1e-6));
        }
    }
}

TEST_CASE("invalid parameters throw") {
    CHECK_THROWS_AS(t_cdf(0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(chi_square_cdf(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(f_cdf(1.0, 0.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(studentized_range_cdf(1.0, 1.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(normal_quantile(1.5), std::invalid_argument);
}
