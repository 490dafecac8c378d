// Generates the bundled synthetic benchmark dataset: 500 samples, 15
// mixed-type features with planted univariate patterns (linear, quadratic,
// sigmoid, categorical shifts) and two planted interactions. Deterministic
// for a fixed seed.

#include "clesh/curve_models.hpp"
#include "clesh/dataset.hpp"
#include "clesh/rng.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct Column {
    std::string name;
    std::vector<double> feature;
    std::vector<double> shap;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"clesh-synth - deterministic synthetic dataset generator"};
    std::string features_path = "synthetic_features.csv";
    std::string shap_path = "synthetic_shap.csv";
    std::uint64_t seed = 20240501;
    std::size_t n = 500;
    app.add_option("--features-out", features_path, "output path for the feature CSV");
    app.add_option("--shap-out", shap_path, "output path for the SHAP CSV");
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--samples", n, "number of samples");
    CLI11_PARSE(app, argc, argv);

    clesh::Rng rng(seed);
    std::vector<Column> cols;

    auto add = [&](const std::string& name) -> Column& {
        cols.push_back(Column{name, std::vector<double>(n), std::vector<double>(n)});
        return cols.back();
    };

    // Continuous features with planted function shapes.
    {
        Column& c = add("age");
        for (std::size_t i = 0; i < n; ++i) {
            const double x = rng.uniform(20.0, 80.0);
            c.feature[i] = std::round(x * 10.0) / 10.0;
            c.shap[i] = clesh::sigmoid_value(c.feature[i], 2.0, 0.2, 52.0, -1.0) + rng.normal(0.0, 0.08);
        }
    }
    {
        Column& c = add("bmi");
        for (std::size_t i = 0; i < n; ++i) {
            const double x = rng.uniform(17.0, 42.0);
            c.feature[i] = std::round(x * 10.0) / 10.0;
            const double centered = (c.feature[i] - 29.5) / 12.5;
            c.shap[i] = 0.9 * centered * centered - 0.3 + rng.normal(0.0, 0.05);
        }
    }
    {
        Column& c = add("glucose");
        for (std::size_t i = 0; i < n; ++i) {
            const double x = rng.uniform(70.0, 180.0);
            c.feature[i] = std::round(x);
            c.shap[i] = 0.012 * (c.feature[i] - 125.0) + rng.normal(0.0, 0.07);
        }
    }
    // Interaction partner (also carries its own mild linear signal).
    {
        Column& c = add("triglycerides");
        for (std::size_t i = 0; i < n; ++i) {
            const double x = rng.uniform(50.0, 400.0);
            c.feature[i] = std::round(x);
            c.shap[i] = 0.0025 * (c.feature[i] - 225.0) + rng.normal(0.0, 0.06);
        }
    }
    // Discrete target whose category-2 SHAP separates only when
    // triglycerides are above their mean (planted interaction).
    {
        Column& c = add("albuminuria");
        const std::vector<double>& tri = cols[3].feature;
        double tri_mean = 0.0;
        for (double v : tri) tri_mean += v;
        tri_mean /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double cat = std::floor(rng.uniform(0.0, 3.0));
            c.feature[i] = cat;
            double base = (cat - 1.0) * 0.25;
            if (cat == 2.0 && tri[i] > tri_mean) base = 1.3;
            c.shap[i] = base + rng.normal(0.0, 0.12);
        }
    }
    // Binary partner for the waist sigmoid shift.
    {
        Column& c = add("sex");
        for (std::size_t i = 0; i < n; ++i) c.feature[i] = rng.uniform() < 0.5 ? 0.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) c.shap[i] = (c.feature[i] > 0.5 ? 0.35 : -0.35) + rng.normal(0.0, 0.1);
    }
    // Continuous target whose sigmoid midpoint depends on sex.
    {
        Column& c = add("waist");
        const std::vector<double>& sex = cols[5].feature;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = rng.uniform(60.0, 130.0);
            c.feature[i] = std::round(x * 10.0) / 10.0;
            const double x0 = sex[i] > 0.5 ? 102.0 : 86.0;
            c.shap[i] = clesh::sigmoid_value(c.feature[i], 1.6, 0.3, x0, -0.8) + rng.normal(0.0, 0.07);
        }
    }
    {
        Column& c = add("smoking");
        for (std::size_t i = 0; i < n; ++i) c.feature[i] = rng.uniform() < 0.3 ? 1.0 : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            c.shap[i] = (c.feature[i] > 0.5 ? 0.75 : -0.3) + rng.normal(0.0, 0.12);
        }
    }
    {
        Column& c = add("activity_level");
        for (std::size_t i = 0; i < n; ++i) c.feature[i] = std::floor(rng.uniform(0.0, 5.0));
        for (std::size_t i = 0; i < n; ++i) c.shap[i] = -0.12 * (c.feature[i] - 2.0) + rng.normal(0.0, 0.1);
    }
    // Pure-noise SHAP: no functional pattern to find.
    {
        Column& c = add("marker_a");
        for (std::size_t i = 0; i < n; ++i) {
            c.feature[i] = std::round(rng.uniform(0.0, 10.0) * 100.0) / 100.0;
            c.shap[i] = rng.normal(0.0, 0.3);
        }
    }
    // Weak tail features: near-zero attribution, should fall below the cut.
    for (int wf = 1; wf <= 5; ++wf) {
        Column& c = add("noise_" + std::to_string(wf));
        for (std::size_t i = 0; i < n; ++i) {
            c.feature[i] = std::round(rng.uniform(-1.0, 1.0) * 1000.0) / 1000.0;
            c.shap[i] = rng.normal(0.0, 0.01);
        }
    }

    clesh::DatasetBundle bundle;
    bundle.label_name = "synthetic";
    bundle.features = clesh::Matrix(n, cols.size());
    bundle.shap_values = clesh::Matrix(n, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        bundle.feature_names.push_back(cols[c].name);
        for (std::size_t r = 0; r < n; ++r) {
            bundle.features.at(r, c) = cols[c].feature[r];
            bundle.shap_values.at(r, c) = cols[c].shap[r];
        }
    }
    clesh::write_dataset(bundle, features_path, shap_path);
    std::cout << "wrote " << features_path << " and " << shap_path << " (" << n << " samples, " << cols.size()
              << " features)\n";
    return 0;
}
