#include "clesh/pipeline.hpp"
#include "clesh/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"clesh - statistical interpretation of SHAP values"};
    app.set_version_flag("--version", std::string("clesh ") + clesh::kToolVersion);

    std::string features_path, shap_path, label_name;
    app.add_option("--features", features_path, "CSV file of feature values (header row, one sample per row)")
        ->required();
    app.add_option("--shap", shap_path, "CSV file of SHAP values aligned to the feature file")->required();
    app.add_option("--label", label_name, "name of the predicted label, used in report sentences")->required();

    std::string config_path;
    app.add_option("--config", config_path, "flat key = value configuration file");

    // Config keys as kebab-case flags; only flags the user passes override
    // the config file, which in turn overrides defaults.
    std::map<std::string, std::pair<CLI::Option*, std::string>> overrides;
    auto add_key = [&](const std::string& flag, const std::string& key, const std::string& help) {
        auto* opt = app.add_option("--" + flag, overrides[key].second, help);
        overrides[key].first = opt;
    };
    add_key("candidate-num-min", "candidate_num_min", "minimum number of important features (default 10)");
    add_key("candidate-num-max", "candidate_num_max", "maximum number of important features (default 20)");
    add_key("p-feature-selection", "p_feature_selection", "significance level for adjacent-rank cuts (default 0.05)");
    add_key("cont-bound", "cont_bound", "unique-value threshold separating discrete from continuous (default 10)");
    add_key("manual-num", "manual_num", "fixed number of features to analyze, overriding the cuts");
    add_key("p-univariate", "p_univariate", "significance level for univariate analysis (default 0.05)");
    add_key("p-interaction", "p_interaction", "significance level for interaction analysis (default 0.05)");
    add_key("output-dir", "output_dir", "output directory (default clesh_result)");
    add_key("rng-seed", "rng_seed", "seed recorded in the manifest (default 0)");
    add_key("strict-paired-nonparametric", "strict_paired_nonparametric",
            "use the signed-rank test on paired non-parametric comparisons (default false)");
    add_key("interaction-top-k", "interaction_top_k", "number of interaction partners per target (default 1)");
    add_key("emit-html", "emit_html", "also write a self-contained report.html (default false)");

    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads for per-feature analyses (default: all cores)");
    bool dry_run = false;
    app.add_flag("--dry-run", dry_run, "stop after feature-count selection and print the chosen number");
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "log pipeline stages to stderr");

    CLI11_PARSE(app, argc, argv);

    clesh::PipelineOptions options;
    options.features_path = features_path;
    options.shap_path = shap_path;
    options.label_name = label_name;
    options.threads = threads;
    options.dry_run = dry_run;
    options.verbose = verbose;

    try {
        std::map<std::string, std::string> explicit_overrides;
        for (const auto& [key, entry] : overrides) {
            if (entry.first->count() > 0) explicit_overrides[key] = entry.second;
        }
        options.config = clesh::load_config(
            config_path.empty() ? std::nullopt : std::optional<std::string>(config_path), explicit_overrides);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        const clesh::RunSummary summary = clesh::run_pipeline(options);
        if (dry_run) {
            std::cout << "would analyze " << summary.n_important << " features (dry run)\n";
            return 0;
        }
        std::printf("analyzed features       : %zu\n", summary.n_important);
        std::printf("significant univariate  : %zu\n", summary.n_significant_univariate);
        std::printf("significant interactions: %zu\n", summary.n_significant_interactions);
        std::printf("output directory        : %s\n", summary.output_dir.c_str());
        std::printf("elapsed                 : %.2fs\n", summary.elapsed_seconds);
        return 0;
    } catch (const clesh::ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return 2;
    }
}
