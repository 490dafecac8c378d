#include "clesh/stat_tests.hpp"

#include "clesh/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace clesh;

namespace {

// Brute-force oracle for the rank-sum test: enumerate all C(n1+n2, n1)
// assignments of the pooled (tie-free) values to group one.
double rank_sum_exact_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n1 = x.size(), n = x.size() + y.size();
    std::vector<double> pooled(x.begin(), x.end());
    pooled.insert(pooled.end(), y.begin(), y.end());
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());

    // observed rank sum of x
    double r_obs = 0.0;
    for (double v : x) {
        r_obs += static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()) + 1.0;
    }
    const double u_obs = r_obs - static_cast<double>(n1) * (n1 + 1) / 2.0;
    const double center = static_cast<double>(n1) * static_cast<double>(n - n1) / 2.0;

    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(n1), true);
    std::sort(mask.begin(), mask.end()); // prepare for next_permutation over all subsets
    double total = 0.0, as_extreme = 0.0;
    do {
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask[i]) r += static_cast<double>(i) + 1.0;
        }
        const double u = r - static_cast<double>(n1) * (n1 + 1) / 2.0;
        total += 1.0;
        if (std::fabs(u - center) >= std::fabs(u_obs - center) - 1e-12) as_extreme += 1.0;
    } while (std::next_permutation(mask.begin(), mask.end()));
    return as_extreme / total;
}

// Brute-force oracle for the signed-rank test: enumerate all 2^n sign
// assignments over the observed |differences| midranks.
double signed_rank_exact_oracle(const std::vector<double>& x, double mu) {
    std::vector<double> absd;
    std::vector<double> d;
    for (double v : x) {
        if (v != mu) {
            d.push_back(v - mu);
            absd.push_back(std::fabs(v - mu));
        }
    }
    const std::size_t m = d.size();
    const std::vector<double> ranks = midranks(absd);
    double w_obs = 0.0, w_max = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        w_max += ranks[i];
        if (d[i] > 0) w_obs += ranks[i];
    }
    const double center = w_max / 2.0;
    double as_extreme = 0.0;
    const std::size_t total = std::size_t{1} << m;
    for (std::size_t bits = 0; bits < total; ++bits) {
        double w = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (bits & (std::size_t{1} << i)) w += ranks[i];
        }
        if (std::fabs(w - center) >= std::fabs(w_obs - center) - 1e-12) as_extreme += 1.0;
    }
    return as_extreme / static_cast<double>(total);
}

} // namespace

TEST_CASE("one-sample t-test anchors") {
    SUBCASE("mean equals mu") {
        const std::vector<double> x = {1, 2, 3};
        const TestResult r = t_test_one_sample(x, 2.0);
        CHECK(r.statistic == doctest::Approx(0.0));
        CHECK(r.p_value == doctest::Approx(1.0));
    }
    SUBCASE("closed form with t cdf") {
        const std::vector<double> x = {1, 2, 3, 4, 5};
        const TestResult r = t_test_one_sample(x, 0.0);
        CHECK(r.statistic == doctest::Approx(4.242640687119285).epsilon(1e-12));
        CHECK(*r.df == doctest::Approx(4.0));
        CHECK(r.p_value == doctest::Approx(0.0132355996).epsilon(1e-7));
    }
    SUBCASE("zero variance degenerates") {
        const std::vector<double> same = {5, 5, 5};
        CHECK(t_test_one_sample(same, 5.0).p_value == doctest::Approx(1.0));
        CHECK(t_test_one_sample(same, 5.0).degenerate);
        CHECK(t_test_one_sample(same, 4.0).p_value == doctest::Approx(0.0));
    }
}

TEST_CASE("two-sample t-test") {
    const std::vector<double> x = {1, 2, 3};
    SUBCASE("identical groups") {
        const TestResult r = t_test_two_sample(x, x);
        CHECK(r.statistic == doctest::Approx(0.0));
        CHECK(r.p_value == doctest::Approx(1.0));
    }
    SUBCASE("group swap flips the statistic but not p") {
        const std::vector<double> y = {2.5, 3.5, 5.0, 6.0};
        const TestResult a = t_test_two_sample(x, y);
        const TestResult b = t_test_two_sample(y, x);
        CHECK(a.statistic == doctest::Approx(-b.statistic).epsilon(1e-12));
        CHECK(a.p_value == doctest::Approx(b.p_value).epsilon(1e-12));
    }
    SUBCASE("welch route reports fractional df") {
        const std::vector<double> y = {10.0, 11.5, 9.0, 14.0, 8.0, 12.0};
        const TestResult r = t_test_two_sample(x, y, true);
        CHECK(r.p_value < 0.05);
        CHECK(*r.df < 7.0);
    }
}

TEST_CASE("paired t equals one-sample t on differences") {
    const std::vector<double> x = {3.1, 4.2, 5.0, 6.3};
    const std::vector<double> y = {2.9, 4.5, 4.2, 5.9};
    const TestResult paired = t_test_paired(x, y);
    std::vector<double> d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    const TestResult one = t_test_one_sample(d, 0.0);
    CHECK(paired.statistic == doctest::Approx(one.statistic));
    CHECK(paired.p_value == doctest::Approx(one.p_value));
}

TEST_CASE("signed-rank anchors") {
    SUBCASE("all positive, exact enumeration") {
        const std::vector<double> x = {1, 2, 3};
        const TestResult r = signed_rank_test(x, 0.0);
        CHECK(r.p_value == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("perfectly symmetric sample") {
        const std::vector<double> x = {1, -1, 2, -2};
        CHECK(signed_rank_test(x, 0.0).p_value == doctest::Approx(1.0));
    }
    SUBCASE("no nonzero differences") {
        const std::vector<double> x = {5, 5, 5};
        const TestResult r = signed_rank_test(x, 5.0);
        CHECK(r.degenerate);
        CHECK(r.p_value == doctest::Approx(1.0));
    }
}

TEST_CASE("signed-rank matches the 2^n enumeration oracle up to n=10") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 4 + static_cast<std::size_t>(rng.uniform() * 7);
        std::vector<double> x(n);
        for (double& v : x) v = rng.normal(0.3, 1.0);
        const TestResult r = signed_rank_test(x, 0.0);
        const double oracle = signed_rank_exact_oracle(x, 0.0);
        CHECK(r.p_value == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("rank-sum anchors") {
    SUBCASE("separated pairs") {
        const std::vector<double> x = {1, 2}, y = {3, 4};
        const TestResult r = rank_sum_test(x, y);
        CHECK(r.statistic == doctest::Approx(0.0));
        CHECK(r.p_value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("fully separated 5v5") {
        const std::vector<double> x = {1, 2, 3, 4, 5}, y = {6, 7, 8, 9, 10};
        const TestResult r = rank_sum_test(x, y);
        CHECK(r.statistic == doctest::Approx(0.0));
        CHECK(r.p_value == doctest::Approx(2.0 / 252.0).epsilon(1e-12));
    }
    SUBCASE("identical tied groups") {
        const std::vector<double> x = {1, 2, 3};
        const TestResult r = rank_sum_test(x, x);
        CHECK(r.statistic == doctest::Approx(4.5));
        CHECK(r.p_value == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("rank-sum matches the exhaustive oracle for n1,n2 <= 6 without ties") {
    Rng rng(7);
    for (std::size_t n1 = 2; n1 <= 6; ++n1) {
        for (std::size_t n2 = 2; n2 <= 6; ++n2) {
            std::vector<double> x(n1), y(n2);
            for (double& v : x) v = rng.normal(0.0, 1.0);
            for (double& v : y) v = rng.normal(0.8, 1.0);
            const TestResult r = rank_sum_test(x, y);
            const double oracle = rank_sum_exact_oracle(x, y);
            CHECK(r.p_value == doctest::Approx(oracle).epsilon(1e-9));
        }
    }
}

TEST_CASE("rank-sum location-shift monotonicity (no ties)") {
    Rng rng(23);
    std::vector<double> x(8), base(8);
    for (double& v : x) v = rng.normal(0.0, 1.0);
    for (double& v : base) v = rng.normal(0.0, 1.0);
    double prev_p = 1.1;
    for (double shift : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        std::vector<double> y = base;
        for (double& v : y) v += shift;
        const double p = rank_sum_test(x, y).p_value;
        CHECK(p <= prev_p + 1e-12);
        prev_p = p;
    }
}

TEST_CASE("anova anchors") {
    SUBCASE("identical groups") {
        const std::vector<std::vector<double>> groups = {{1, 2, 3}, {1, 2, 3}};
        const TestResult r = anova_oneway(groups);
        CHECK(r.statistic == doctest::Approx(0.0));
        CHECK(r.p_value == doctest::Approx(1.0));
    }
    SUBCASE("perfectly separated constant groups") {
        const std::vector<std::vector<double>> groups = {{0, 0}, {1, 1}};
        const TestResult r = anova_oneway(groups);
        CHECK(r.degenerate);
        CHECK(r.p_value == doctest::Approx(0.0));
    }
    SUBCASE("closed-form sums of squares") {
        const std::vector<std::vector<double>> groups = {{1, 2}, {2, 3}, {3, 4}};
        const TestResult r = anova_oneway(groups);
        CHECK(r.statistic == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(r.p_value == doctest::Approx(0.1424271731).epsilon(1e-9));
    }
}

TEST_CASE("anova on two groups equals the pooled t-test") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(6), y(9);
        for (double& v : x) v = rng.normal(0.0, 1.0);
        for (double& v : y) v = rng.normal(0.5, 1.3);
        const TestResult f = anova_oneway({x, y});
        const TestResult t = t_test_two_sample(x, y);
        CHECK(f.statistic == doctest::Approx(t.statistic * t.statistic).epsilon(1e-9));
        CHECK(f.p_value == doctest::Approx(t.p_value).epsilon(1e-9));
    }
}

TEST_CASE("kruskal-wallis anchors") {
    SUBCASE("closed form chi-square(2) tail") {
        const std::vector<std::vector<double>> groups = {{1, 2}, {3, 4}, {5, 6}};
        const TestResult r = kruskal_wallis(groups);
        CHECK(r.statistic == doctest::Approx(4.5714285714).epsilon(1e-9));
        CHECK(r.p_value == doctest::Approx(std::exp(-r.statistic / 2.0)).epsilon(1e-9));
        CHECK(r.p_value == doctest::Approx(0.1017013923).epsilon(1e-8));
    }
    SUBCASE("all ties degenerate") {
        const std::vector<std::vector<double>> groups = {{7, 7}, {7, 7}};
        const TestResult r = kruskal_wallis(groups);
        CHECK(r.degenerate);
        CHECK(r.p_value == doctest::Approx(1.0));
    }
    SUBCASE("group order invariance") {
        const std::vector<std::vector<double>> a = {{1, 5, 3}, {2, 8}, {9, 4, 7}};
        const std::vector<std::vector<double>> b = {{9, 4, 7}, {1, 5, 3}, {2, 8}};
        CHECK(kruskal_wallis(a).statistic == doctest::Approx(kruskal_wallis(b).statistic));
        CHECK(kruskal_wallis(a).p_value == doctest::Approx(kruskal_wallis(b).p_value));
    }
}

TEST_CASE("tukey hsd") {
    SUBCASE("three identical groups") {
        const std::vector<double> g = {1.0, 2.0, 3.0, 2.5};
        const auto results = tukey_hsd({g, g, g}, {"a", "b", "c"});
        CHECK(results.size() == 3);
        for (const TestResult& r : results) {
            CHECK(r.statistic == doctest::Approx(0.0));
            CHECK(r.p_value == doctest::Approx(1.0));
        }
    }
    SUBCASE("matches published-scale p-values") {
        // frozen reference: scipy.stats.tukey_hsd on these groups
        const std::vector<double> g1 = {24.5, 23.5, 26.4, 27.1, 29.9};
        const std::vector<double> g2 = {28.4, 34.2, 29.5, 32.2, 30.1};
        const std::vector<double> g3 = {26.1, 28.3, 24.3, 26.2, 27.8};
        const auto results = tukey_hsd({g1, g2, g3}, {"1", "2", "3"});
        REQUIRE(results.size() == 3);
        CHECK(results[0].p_value == doctest::Approx(0.0144483267).epsilon(1e-4));
        CHECK(results[1].p_value == doctest::Approx(0.9803107241).epsilon(1e-4));
        CHECK(results[2].p_value == doctest::Approx(0.0203311367).epsilon(1e-4));
        CHECK(results[0].mean_diff == doctest::Approx(-4.6).epsilon(1e-9));
    }
    SUBCASE("pair symmetry under group reordering") {
        const std::vector<double> g1 = {1.0, 1.5, 0.7}, g2 = {2.0, 2.2, 1.9}, g3 = {0.1, 0.3, 0.2};
        const auto ab = tukey_hsd({g1, g2, g3}, {"a", "b", "c"});
        const auto ba = tukey_hsd({g2, g1, g3}, {"b", "a", "c"});
        CHECK(ab[0].mean_diff == doctest::Approx(-ba[0].mean_diff));
        CHECK(ab[0].p_value == doctest::Approx(ba[0].p_value).epsilon(1e-10));
    }
}

TEST_CASE("shapiro-wilk anchors") {
    SUBCASE("n=3 closed form") {
        const std::vector<double> x = {1, 2, 3};
        const NormalityGate g = shapiro_wilk(x, 0.05);
        CHECK(g.w_statistic == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(g.p_value == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(g.is_normal);
    }
    SUBCASE("constant sample degenerates") {
        const std::vector<double> x = {5, 5, 5, 5};
        const NormalityGate g = shapiro_wilk(x, 0.05);
        CHECK(g.degenerate);
        CHECK_FALSE(g.is_normal);
    }
    SUBCASE("frozen reference vectors") {
        // frozen against the AS R94 implementation in scipy.stats.shapiro
        const std::vector<double> v12 = {131, 148, 154, 158, 160, 161, 162, 166, 170, 182, 195, 236};
        const NormalityGate g12 = shapiro_wilk(v12, 0.05);
        CHECK(std::fabs(g12.w_statistic - 0.8693172591) < 1e-3);
        CHECK(std::fabs(g12.p_value - 0.0640601078) < 1e-2);

        const std::vector<double> v5 = {2.0, 3.1, 4.7, 5.2, 9.9};
        const NormalityGate g5 = shapiro_wilk(v5, 0.05);
        CHECK(std::fabs(g5.w_statistic - 0.9020593598) < 1e-3);
        CHECK(std::fabs(g5.p_value - 0.4213721598) < 1e-2);
    }
    SUBCASE("uniform data is rejected at large n") {
        Rng rng(5);
        std::vector<double> x(800);
        for (double& v : x) v = rng.uniform();
        CHECK_FALSE(shapiro_wilk(x, 0.05).is_normal);
    }
    SUBCASE("normal data passes at large n") {
        Rng rng(6);
        std::vector<double> x(800);
        for (double& v : x) v = rng.normal(3.0, 2.0);
        CHECK(shapiro_wilk(x, 0.05).p_value > 0.01);
    }
}

TEST_CASE("two-sided p-values are invariant under sign flips and group swaps") {
    Rng rng(314);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(7), y(9);
        for (double& v : x) v = rng.normal(0.2, 1.0);
        for (double& v : y) v = rng.normal(-0.1, 1.4);

        CHECK(rank_sum_test(x, y).p_value == doctest::Approx(rank_sum_test(y, x).p_value).epsilon(1e-12));
        CHECK(t_test_two_sample(x, y).p_value ==
              doctest::Approx(t_test_two_sample(y, x).p_value).epsilon(1e-12));

        std::vector<double> neg = x;
        for (double& v : neg) v = -v;
        CHECK(signed_rank_test(x, 0.0).p_value ==
              doctest::Approx(signed_rank_test(neg, 0.0).p_value).epsilon(1e-12));
    }
}

TEST_CASE("p-values always lie in [0,1]") {
    Rng rng(2718);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform() * 30);
        std::vector<double> x(n), y(n + 2);
        for (double& v : x) v = rng.normal(0.0, 1.0) + (trial % 3 == 0 ? std::round(rng.uniform() * 3) : 0.0);
        for (double& v : y) v = rng.normal(0.4, 2.0);
        for (const TestResult& r :
             {rank_sum_test(x, y), signed_rank_test(x, 0.1), t_test_two_sample(x, y),
              anova_oneway({x, y}), kruskal_wallis({x, y})}) {
            CHECK(r.p_value >= 0.0);
            CHECK(r.p_value <= 1.0);
        }
    }
}
