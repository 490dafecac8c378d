#pragma once

// Hypothesis tests used throughout the pipeline. Small samples take exact
// routes (enumeration for the rank tests, AS R94 for Shapiro-Wilk); larger
// samples fall back to the usual asymptotic approximations.
//
// Degenerate inputs (zero variance, no nonzero differences) never throw from
// inside the pipeline: they produce a flagged result with a boundary p-value
// so the report can caveat them. Precondition violations (too few samples)
// throw std::invalid_argument.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace clesh {

enum class TestName {
    shapiro_wilk,
    t_one_sample,
    t_paired,
    t_two_sample,
    signed_rank,
    rank_sum,
    anova,
    kruskal_wallis,
    tukey_hsd_pair,
};

const char* test_name_str(TestName name);

struct TestResult {
    TestName test_name;
    double statistic = 0.0;
    double p_value = 1.0;
    bool parametric_route = false;
    bool degenerate = false;
    std::optional<double> df;
    std::optional<std::pair<std::string, std::string>> group_labels;
    // Extras consumed by reporting (two-group and Tukey paths).
    double mean_diff = 0.0;
    double stderr_diff = 0.0;
};

struct NormalityGate {
    double w_statistic = 0.0;
    double p_value = 0.0;
    bool is_normal = false;
    bool degenerate = false;
};

// Shapiro-Wilk W test (Royston 1995, AS R94). alpha controls the is_normal
// verdict: is_normal <=> p > alpha. Degenerate samples (n < 3 after all, or
// constant) report is_normal=false with degenerate=true rather than throwing.
// Valid for n <= 5000; larger inputs throw.
NormalityGate shapiro_wilk(std::span<const double> sample, double alpha);

// Pipeline-facing gate: same as shapiro_wilk, but inputs beyond the n=5000
// domain are reduced to an evenly strided subsample first.
NormalityGate normality_gate(std::span<const double> sample, double alpha);

enum class TTestMode { one_sample, paired, two_sample };

TestResult t_test_one_sample(std::span<const double> x, double mu);
TestResult t_test_paired(std::span<const double> x, std::span<const double> y);
// Pooled-variance Student form; set welch=true for the unequal-variance route.
TestResult t_test_two_sample(std::span<const double> x, std::span<const double> y, bool welch = false);

// Wilcoxon signed-rank test of symmetry around mu. Exact sign-flip
// distribution when n <= 25 (after dropping values equal to mu), normal
// approximation with tie and continuity correction otherwise.
TestResult signed_rank_test(std::span<const double> x, double mu);

// Mann-Whitney U / Wilcoxon rank-sum. Exact when n1+n2 <= 12 and tie-free,
// normal approximation with tie correction otherwise.
TestResult rank_sum_test(std::span<const double> x, std::span<const double> y);

TestResult anova_oneway(const std::vector<std::vector<double>>& groups);

TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

// All-pairs Tukey HSD with the Tukey-Kramer unequal-n standard error.
// Results ordered by (i, j), i < j, in the given group order.
std::vector<TestResult> tukey_hsd(const std::vector<std::vector<double>>& groups,
                                  const std::vector<std::string>& labels);

// Midranks of a sample (average ranks on ties), 1-based.
std::vector<double> midranks(std::span<const double> values);

} // namespace clesh
