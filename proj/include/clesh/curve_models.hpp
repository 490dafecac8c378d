#pragma once

// Fits SHAP-vs-feature relationships with the three candidate families
// (line, parabola, logistic step) and selects the best significant one by
// RMSE. Significance is the two-sided t p-value of the leading coefficient.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace clesh {

enum class FitFamily { linear, quadratic, sigmoid };

const char* fit_family_str(FitFamily family);

struct FitResult {
    FitFamily family = FitFamily::linear;
    // linear: f(x) = a*x + b
    // quadratic: f(x) = a*x^2 + b*x + c
    // sigmoid: f(x) = L / (1 + exp(-a*(x - x0))) + b
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double big_l = 0.0;
    double x0 = 0.0;
    double p_value_a = 1.0;
    double rmse = 0.0;
    bool converged = false;
    bool degenerate = false;
    int n_points = 0;
};

struct FitSelection {
    std::vector<FitResult> significant_fits;
    std::optional<FitResult> best;
    bool none_significant = true;
    // All attempted fits, kept for reporting (including insignificant ones).
    std::vector<FitResult> all_fits;
};

FitResult fit_linear(std::span<const double> x, std::span<const double> y);
FitResult fit_quadratic(std::span<const double> x, std::span<const double> y);
FitResult fit_sigmoid(std::span<const double> x, std::span<const double> y);

// Runs all three fits, keeps the converged ones with p_value_a < alpha and
// picks the smallest RMSE (ties broken toward the simpler family).
FitSelection select_best_fit(std::span<const double> x, std::span<const double> y, double alpha);

std::vector<double> evaluate_fit(const FitResult& fit, std::span<const double> x);
double evaluate_fit_at(const FitResult& fit, double x);

// Sigmoid primitives, exposed for the finite-difference Jacobian check.
double sigmoid_value(double x, double big_l, double a, double x0, double b);
std::array<double, 4> sigmoid_gradient(double x, double big_l, double a, double x0, double b);

// Refit a specific family (used by the interaction stage, which reuses the
// family chosen by the univariate pass).
FitResult fit_family(FitFamily family, std::span<const double> x, std::span<const double> y);

// Minimum number of points each family needs.
std::size_t fit_min_points(FitFamily family);

} // namespace clesh
