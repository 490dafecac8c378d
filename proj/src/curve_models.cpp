#include "clesh/curve_models.hpp"

#include "clesh/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace clesh {

namespace {

// Residual sums treated as exact zero below this relative scale.
constexpr double kZeroResidualRel = 1e-10;

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

// In-place Gauss-Jordan inverse for tiny systems (n <= 4).
bool invert_small(double* a, int n) {
    constexpr int kMax = 4;
    int perm[kMax];
    double aug[kMax][2 * kMax];
    for (int i = 0; i < n; ++i) {
        perm[i] = i;
        for (int j = 0; j < n; ++j) {
            aug[i][j] = a[i * n + j];
            aug[i][n + j] = (i == j) ? 1.0 : 0.0;
        }
    }
    (void)perm;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::fabs(aug[r][col]) > std::fabs(aug[piv][col])) piv = r;
        }
        if (std::fabs(aug[piv][col]) < 1e-300) return false;
        if (piv != col) {
            for (int j = 0; j < 2 * n; ++j) std::swap(aug[piv][j], aug[col][j]);
        }
        const double d = aug[col][col];
        for (int j = 0; j < 2 * n; ++j) aug[col][j] /= d;
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = aug[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j < 2 * n; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i * n + j] = aug[i][n + j];
    }
    return true;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// p-value of a coefficient given its estimate, standard error and df,
// with the zero-residual degeneracy rules applied.
void assign_coefficient_p(FitResult& fit, double est, double var_est, double df, bool zero_residual) {
    if (zero_residual || var_est <= 0.0) {
        fit.degenerate = true;
        fit.p_value_a = (est == 0.0) ? 1.0 : 0.0;
        return;
    }
    const double t = est / std::sqrt(var_est);
    fit.p_value_a = t_two_sided_p(t, df);
}

struct SigmoidParams {
    double big_l, a, x0, b;
};

double logistic(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double sse_for(const SigmoidParams& p, std::span<const double> x, std::span<const double> y) {
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (p.big_l * logistic(p.a * (x[i] - p.x0)) + p.b);
        sse += r * r;
    }
    return sse;
}

struct LmOutcome {
    SigmoidParams params{};
    double sse = std::numeric_limits<double>::infinity();
    bool converged = false;
    double cov_aa = 0.0; // unscaled (J^T J)^-1 [a,a]
    bool cov_ok = false;
};

LmOutcome levenberg_marquardt(SigmoidParams p, std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    LmOutcome out;
    double sse = sse_for(p, x, y);
    double lambda = 1e-3;
    bool converged = false;

    double jtj[16], jtr[4];
    for (int iter = 0; iter < 200 && !converged; ++iter) {
        std::fill(std::begin(jtj), std::end(jtj), 0.0);
        std::fill(std::begin(jtr), std::end(jtr), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto g = sigmoid_gradient(x[i], p.big_l, p.a, p.x0, p.b);
            const double r = y[i] - sigmoid_value(x[i], p.big_l, p.a, p.x0, p.b);
            for (int u = 0; u < 4; ++u) {
                jtr[u] += g[u] * r;
                for (int v = 0; v < 4; ++v) jtj[u * 4 + v] += g[u] * g[v];
            }
        }

        bool stepped = false;
        for (int attempt = 0; attempt < 30; ++attempt) {
            double m[16];
            std::copy(std::begin(jtj), std::end(jtj), std::begin(m));
            for (int u = 0; u < 4; ++u) m[u * 4 + u] += lambda * std::max(jtj[u * 4 + u], 1e-12);
            double rhs[4] = {jtr[0], jtr[1], jtr[2], jtr[3]};
            double minv[16];
            std::copy(std::begin(m), std::end(m), std::begin(minv));
            if (!invert_small(minv, 4)) {
                lambda *= 10.0;
                continue;
            }
            SigmoidParams cand = p;
            double delta[4] = {0, 0, 0, 0};
            for (int u = 0; u < 4; ++u) {
                for (int v = 0; v < 4; ++v) delta[u] += minv[u * 4 + v] * rhs[v];
            }
            cand.big_l += delta[0];
            cand.a += delta[1];
            cand.x0 += delta[2];
            cand.b += delta[3];
            const double cand_sse = sse_for(cand, x, y);
            if (std::isfinite(cand_sse) && cand_sse <= sse) {
                const double rel = (sse - cand_sse) / std::max(sse, 1e-300);
                p = cand;
                sse = cand_sse;
                lambda = std::max(lambda / 3.0, 1e-12);
                stepped = true;
                if (rel < 1e-10) converged = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped) {
            // No downhill step available: treat as converged at the current
            // point if the gradient is already negligible.
            double gnorm = 0.0;
            for (double g : jtr) gnorm += g * g;
            converged = gnorm <= 1e-18 * std::max(1.0, sse);
            break;
        }
    }

    out.params = p;
    out.sse = sse;
    out.converged = converged;

    // recompute J^T J at the final point for the covariance
    double final_jtj[16] = {0};
    for (std::size_t i = 0; i < n; ++i) {
        const auto g = sigmoid_gradient(x[i], p.big_l, p.a, p.x0, p.b);
        for (int u = 0; u < 4; ++u) {
            for (int v = 0; v < 4; ++v) final_jtj[u * 4 + v] += g[u] * g[v];
        }
    }
    if (invert_small(final_jtj, 4)) {
        out.cov_aa = final_jtj[1 * 4 + 1];
        out.cov_ok = out.cov_aa > 0.0 && std::isfinite(out.cov_aa);
    }
    return out;
}

} // namespace

const char* fit_family_str(FitFamily family) {
    switch (family) {
        case FitFamily::linear: return "linear";
        case FitFamily::quadratic: return "quadratic";
        case FitFamily::sigmoid: return "sigmoid";
    }
    return "unknown";
}

double sigmoid_value(double x, double big_l, double a, double x0, double b) {
    return big_l * logistic(a * (x - x0)) + b;
}

std::array<double, 4> sigmoid_gradient(double x, double big_l, double a, double x0, double b) {
    (void)b;
    const double s = logistic(a * (x - x0));
    const double sp = s * (1.0 - s);
    return {s, big_l * sp * (x - x0), -big_l * a * sp, 1.0};
}

FitResult fit_linear(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 3 || y.size() != n) throw std::invalid_argument("fit_linear: need n >= 3 aligned points");
    const double nn = static_cast<double>(n);
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / nn, my = sy / nn;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) throw std::invalid_argument("fit_linear: x is constant");

    FitResult fit;
    fit.family = FitFamily::linear;
    fit.n_points = static_cast<int>(n);
    fit.converged = true;

    if (syy <= 0.0) {
        // flat data: slope is exactly zero
        fit.a = 0.0;
        fit.b = my;
        fit.rmse = 0.0;
        fit.degenerate = true;
        fit.p_value_a = 1.0;
        return fit;
    }

    fit.a = sxy / sxx;
    fit.b = my - fit.a * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.a * x[i] + fit.b);
        sse += r * r;
    }
    const double scale = std::max(1.0, max_abs(y));
    const bool zero_resid = sse <= nn * (kZeroResidualRel * scale) * (kZeroResidualRel * scale);
    fit.rmse = zero_resid ? 0.0 : std::sqrt(sse / nn);
    const double df = nn - 2.0;
    assign_coefficient_p(fit, fit.a, zero_resid ? 0.0 : sse / df / sxx, df, zero_resid);
    return fit;
}

FitResult fit_quadratic(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 4 || y.size() != n) throw std::invalid_argument("fit_quadratic: need n >= 4 aligned points");
    std::vector<double> ux(x.begin(), x.end());
    std::sort(ux.begin(), ux.end());
    ux.erase(std::unique(ux.begin(), ux.end()), ux.end());
    if (ux.size() < 3) throw std::invalid_argument("fit_quadratic: need >= 3 distinct x values");

    // Center and scale x for conditioning; the leading coefficient maps back
    // by 1/s^2 and its t statistic is invariant.
    const double mx = [&] {
        double s = 0.0;
        for (double v : x) s += v;
        return s / static_cast<double>(n);
    }();
    double spread = 0.0;
    for (double v : x) spread = std::max(spread, std::fabs(v - mx));
    const double s = spread > 0.0 ? spread : 1.0;

    double m[9] = {0};
    double rhs[3] = {0};
    for (std::size_t i = 0; i < n; ++i) {
        const double z = (x[i] - mx) / s;
        const double row[3] = {z * z, z, 1.0};
        for (int u = 0; u < 3; ++u) {
            rhs[u] += row[u] * y[i];
            for (int v = 0; v < 3; ++v) m[u * 3 + v] += row[u] * row[v];
        }
    }
    double minv[9];
    std::copy(std::begin(m), std::end(m), std::begin(minv));
    if (!invert_small(minv, 3)) throw std::invalid_argument("fit_quadratic: rank-deficient design");
    double beta[3] = {0, 0, 0};
    for (int u = 0; u < 3; ++u) {
        for (int v = 0; v < 3; ++v) beta[u] += minv[u * 3 + v] * rhs[v];
    }

    FitResult fit;
    fit.family = FitFamily::quadratic;
    fit.n_points = static_cast<int>(n);
    fit.converged = true;
    fit.a = beta[0] / (s * s);
    fit.b = beta[1] / s - 2.0 * mx * beta[0] / (s * s);
    fit.c = beta[2] - beta[1] * mx / s + beta[0] * mx * mx / (s * s);

    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.a * x[i] * x[i] + fit.b * x[i] + fit.c);
        sse += r * r;
    }
    const double nn = static_cast<double>(n);
    const double scale = std::max(1.0, max_abs(y));
    const bool zero_resid = sse <= nn * (kZeroResidualRel * scale) * (kZeroResidualRel * scale);
    fit.rmse = zero_resid ? 0.0 : std::sqrt(sse / nn);
    const double df = nn - 3.0;

    // Treat a numerically-vanishing curvature as exactly zero so flat or
    // purely linear data hits the zero-effect rule.
    const double a_scaled = beta[0];
    double var_a = minv[0] * sse / df / (s * s * s * s);
    const double se_floor = std::sqrt(std::max(minv[0], 0.0)) * kZeroResidualRel * scale / (s * s);
    if (std::fabs(fit.a) <= se_floor) fit.a = 0.0;
    (void)a_scaled;
    assign_coefficient_p(fit, fit.a, zero_resid ? 0.0 : var_a, df, zero_resid);
    return fit;
}

FitResult fit_sigmoid(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 5 || y.size() != n) throw std::invalid_argument("fit_sigmoid: need n >= 5 aligned points");
    const auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
    if (*xmin_it == *xmax_it) throw std::invalid_argument("fit_sigmoid: x is constant");
    const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());

    FitResult fit;
    fit.family = FitFamily::sigmoid;
    fit.n_points = static_cast<int>(n);

    if (*ymin_it == *ymax_it) {
        // flat data: amplitude and slope unidentifiable
        fit.converged = true;
        fit.degenerate = true;
        fit.big_l = 0.0;
        fit.a = 0.0;
        fit.x0 = median_of({x.begin(), x.end()});
        fit.b = *ymin_it;
        fit.rmse = 0.0;
        fit.p_value_a = 1.0;
        return fit;
    }

    const double l0 = *ymax_it - *ymin_it;
    const double b0 = *ymin_it;
    const double x00 = median_of({x.begin(), x.end()});
    const double a0 = 4.0 / (*xmax_it - *xmin_it);

    LmOutcome best;
    for (double a_init : {a0, -a0}) {
        SigmoidParams start{l0, a_init, x00, b0};
        LmOutcome o = levenberg_marquardt(start, x, y);
        if (o.sse < best.sse) best = o;
    }

    fit.big_l = best.params.big_l;
    fit.a = best.params.a;
    fit.x0 = best.params.x0;
    fit.b = best.params.b;
    fit.converged = best.converged;

    const double nn = static_cast<double>(n);
    const double scale = std::max(1.0, max_abs(y));
    const bool zero_resid = best.sse <= nn * (kZeroResidualRel * scale) * (kZeroResidualRel * scale);
    fit.rmse = zero_resid ? 0.0 : std::sqrt(best.sse / nn);

    if (!fit.converged) {
        fit.p_value_a = 1.0;
        return fit;
    }
    const double df = nn - 4.0;
    if (!best.cov_ok) {
        fit.degenerate = true;
        fit.p_value_a = (fit.a == 0.0) ? 1.0 : 0.0;
        if (!zero_resid) fit.converged = false; // singular Jacobian away from an exact fit
        return fit;
    }
    assign_coefficient_p(fit, fit.a, zero_resid ? 0.0 : best.cov_aa * best.sse / df, df, zero_resid);
    return fit;
}

FitResult fit_family(FitFamily family, std::span<const double> x, std::span<const double> y) {
    switch (family) {
        case FitFamily::linear: return fit_linear(x, y);
        case FitFamily::quadratic: return fit_quadratic(x, y);
        case FitFamily::sigmoid: return fit_sigmoid(x, y);
    }
    throw std::invalid_argument("fit_family: unknown family");
}

std::size_t fit_min_points(FitFamily family) {
    switch (family) {
        case FitFamily::linear: return 3;
        case FitFamily::quadratic: return 4;
        case FitFamily::sigmoid: return 5;
    }
    return 5;
}

FitSelection select_best_fit(std::span<const double> x, std::span<const double> y, double alpha) {
    if (x.size() < 5 || y.size() != x.size()) throw std::invalid_argument("select_best_fit: need n >= 5 aligned points");
    FitSelection sel;
    for (FitFamily family : {FitFamily::linear, FitFamily::quadratic, FitFamily::sigmoid}) {
        try {
            FitResult fit = fit_family(family, x, y);
            sel.all_fits.push_back(fit);
            if (!fit.converged || !(fit.p_value_a < alpha)) continue;
            sel.significant_fits.push_back(fit);
            if (!sel.best || fit.rmse < sel.best->rmse - 1e-12) sel.best = fit;
        } catch (const std::invalid_argument&) {
            // per-fit degeneracy (constant x, rank deficiency): excluded
        }
    }
    sel.none_significant = sel.significant_fits.empty();
    return sel;
}

double evaluate_fit_at(const FitResult& fit, double x) {
    switch (fit.family) {
        case FitFamily::linear: return fit.a * x + fit.b;
        case FitFamily::quadratic: return fit.a * x * x + fit.b * x + fit.c;
        case FitFamily::sigmoid: return sigmoid_value(x, fit.big_l, fit.a, fit.x0, fit.b);
    }
    return 0.0;
}

std::vector<double> evaluate_fit(const FitResult& fit, std::span<const double> x) {
    if (!fit.converged) throw std::invalid_argument("evaluate_fit: fit did not converge");
    std::vector<double> out;
    out.reserve(x.size());
    for (double v : x) out.push_back(evaluate_fit_at(fit, v));
    return out;
}

} // namespace clesh
