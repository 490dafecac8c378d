#pragma once

// End-to-end orchestration: load -> rank/cut/choose -> classify ->
// univariate -> interaction -> report. The CLI is a thin wrapper around
// run_pipeline; analyze_bundle is the library-facing entry point.

#include "clesh/config.hpp"
#include "clesh/dataset.hpp"
#include "clesh/interaction.hpp"
#include "clesh/selection.hpp"
#include "clesh/sentences.hpp"
#include "clesh/univariate.hpp"

#include <string>
#include <vector>

namespace clesh {

struct RunSummary {
    int exit_code = 0;
    std::size_t n_important = 0;
    std::size_t n_significant_univariate = 0;
    std::size_t n_significant_interactions = 0;
    std::string output_dir;
    double elapsed_seconds = 0.0;
};

struct AnalysisReport {
    FeatureRanking ranking;
    CutAnalysis cuts;
    std::vector<FeatureType> kinds;                 // indexed by feature
    std::vector<std::size_t> important;             // feature indices, rank order
    std::vector<UnivariateFinding> univariate;      // aligned with important
    std::vector<std::vector<InteractionFinding>> interactions; // per important target
    RunSummary summary;
};

struct PipelineOptions {
    std::string features_path;
    std::string shap_path;
    std::string label_name;
    Config config;
    unsigned threads = 0; // 0 = hardware concurrency
    bool dry_run = false;
    bool verbose = false;
};

// Analysis stages only (no I/O); deterministic for fixed inputs.
AnalysisReport analyze_bundle(const DatasetBundle& bundle, const Config& config, unsigned threads = 0);

// Renders plots, sentences, the report document and the manifest under
// config.output_dir.
void write_outputs(const AnalysisReport& report, const DatasetBundle& bundle, const Config& config);

// Full run. Throws ValidationError for input problems; other exceptions
// indicate analysis-stage failures.
RunSummary run_pipeline(const PipelineOptions& options);

} // namespace clesh
