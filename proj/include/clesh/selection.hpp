#pragma once

// Feature ranking by mean |SHAP|, adjacent-rank significance cuts, the
// important-feature count choice, and feature data-type classification.

#include "clesh/config.hpp"
#include "clesh/dataset.hpp"
#include "clesh/stat_tests.hpp"

#include <cstddef>
#include <vector>

namespace clesh {

struct FeatureRanking {
    std::vector<std::size_t> order;     // feature indices, descending mean |SHAP|
    std::vector<double> mean_abs_shap;  // indexed by feature, not by rank
};

struct CutAnalysis {
    std::vector<TestResult> adjacent_tests; // rank i vs rank i+1
    std::vector<double> adjacent_p;
    std::vector<std::size_t> cut_positions; // k = number of features kept above the cut
    std::vector<double> gap_scores;          // aligned with cut_positions
    std::size_t chosen_k = 0;
    bool fallback_used = false;
    bool manual_override = false;
};

enum class FeatureKind { binary, discrete, continuous, constant };

const char* feature_kind_str(FeatureKind kind);

struct FeatureType {
    FeatureKind kind = FeatureKind::constant;
    std::size_t n_unique = 0;
};

FeatureRanking rank_features(const DatasetBundle& bundle);

// Tests each adjacently ranked pair of |SHAP| columns: Shapiro-Wilk gate on
// both at p_feature_selection, then paired t-test (both normal) or rank-sum.
CutAnalysis adjacent_significance_cuts(const DatasetBundle& bundle, const FeatureRanking& ranking,
                                       const Config& config);

// Picks the cut inside [candidate_num_min, candidate_num_max] with the
// largest drop in mean |SHAP| to the next cut; manual_num overrides.
// Mutates cuts (chosen_k, gap_scores, fallback flags) and returns chosen_k.
std::size_t choose_num_important(CutAnalysis& cuts, const FeatureRanking& ranking, const Config& config,
                                 std::size_t n_features);

FeatureType classify_feature_kind(std::span<const double> column, std::size_t cont_bound);

} // namespace clesh
