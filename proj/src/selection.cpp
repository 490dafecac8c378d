#include "clesh/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace clesh {

const char* feature_kind_str(FeatureKind kind) {
    switch (kind) {
        case FeatureKind::binary: return "binary";
        case FeatureKind::discrete: return "discrete";
        case FeatureKind::continuous: return "continuous";
        case FeatureKind::constant: return "constant";
    }
    return "unknown";
}

FeatureRanking rank_features(const DatasetBundle& bundle) {
    const std::size_t n_features = bundle.n_features();
    const std::size_t n_samples = bundle.n_samples();
    FeatureRanking ranking;
    ranking.mean_abs_shap.resize(n_features, 0.0);
    for (std::size_t c = 0; c < n_features; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < n_samples; ++r) s += std::fabs(bundle.shap_values.at(r, c));
        ranking.mean_abs_shap[c] = s / static_cast<double>(n_samples);
    }
    ranking.order.resize(n_features);
    std::iota(ranking.order.begin(), ranking.order.end(), 0);
    std::stable_sort(ranking.order.begin(), ranking.order.end(), [&](std::size_t a, std::size_t b) {
        return ranking.mean_abs_shap[a] > ranking.mean_abs_shap[b];
    });
    return ranking;
}

CutAnalysis adjacent_significance_cuts(const DatasetBundle& bundle, const FeatureRanking& ranking,
                                       const Config& config) {
    CutAnalysis cuts;
    const std::size_t n_features = bundle.n_features();
    const std::size_t n_samples = bundle.n_samples();
    if (n_features < 2) return cuts;

    auto abs_column = [&](std::size_t feature) {
        std::vector<double> col(n_samples);
        for (std::size_t r = 0; r < n_samples; ++r) col[r] = std::fabs(bundle.shap_values.at(r, feature));
        return col;
    };

    std::vector<double> hi = abs_column(ranking.order[0]);
    for (std::size_t i = 0; i + 1 < n_features; ++i) {
        std::vector<double> lo = abs_column(ranking.order[i + 1]);
        const NormalityGate g1 = normality_gate(hi, config.p_feature_selection);
        const NormalityGate g2 = normality_gate(lo, config.p_feature_selection);
        TestResult t;
        if (g1.is_normal && g2.is_normal) {
            t = t_test_paired(hi, lo);
        } else if (config.strict_paired_nonparametric) {
            std::vector<double> diff(n_samples);
            for (std::size_t r = 0; r < n_samples; ++r) diff[r] = hi[r] - lo[r];
            t = signed_rank_test(diff, 0.0);
        } else {
            t = rank_sum_test(hi, lo);
        }
        cuts.adjacent_p.push_back(t.p_value);
        if (t.p_value < config.p_feature_selection) {
            cuts.cut_positions.push_back(i + 1);
        }
        cuts.adjacent_tests.push_back(std::move(t));
        hi = std::move(lo);
    }
    return cuts;
}

std::size_t choose_num_important(CutAnalysis& cuts, const FeatureRanking& ranking, const Config& config,
                                 std::size_t n_features) {
    auto mean_at_rank = [&](std::size_t rank) { return ranking.mean_abs_shap[ranking.order[rank]]; };

    // Drop in mean |SHAP| between the last feature kept at cut k and the last
    // feature kept at the next cut (or the overall minimum for the final cut).
    cuts.gap_scores.clear();
    for (std::size_t idx = 0; idx < cuts.cut_positions.size(); ++idx) {
        const std::size_t k = cuts.cut_positions[idx];
        double next_level;
        if (idx + 1 < cuts.cut_positions.size()) {
            next_level = mean_at_rank(cuts.cut_positions[idx + 1] - 1);
        } else {
            next_level = mean_at_rank(n_features - 1);
        }
        cuts.gap_scores.push_back(mean_at_rank(k - 1) - next_level);
    }

    if (config.manual_num) {
        cuts.manual_override = true;
        cuts.chosen_k = std::min(*config.manual_num, n_features);
        return cuts.chosen_k;
    }

    std::size_t best_k = 0;
    double best_gap = -1.0;
    for (std::size_t idx = 0; idx < cuts.cut_positions.size(); ++idx) {
        const std::size_t k = cuts.cut_positions[idx];
        if (k < config.candidate_num_min || k > config.candidate_num_max) continue;
        if (cuts.gap_scores[idx] > best_gap) {
            best_gap = cuts.gap_scores[idx];
            best_k = k;
        }
    }
    if (best_k != 0) {
        cuts.chosen_k = best_k;
        return best_k;
    }

    // Fallback: nearest cut below the window, else min(candidate_num_max, n).
    cuts.fallback_used = true;
    std::size_t below = 0;
    for (std::size_t k : cuts.cut_positions) {
        if (k <= config.candidate_num_max && k > below) below = k;
    }
    cuts.chosen_k = below != 0 ? below : std::min(config.candidate_num_max, n_features);
    return cuts.chosen_k;
}

FeatureType classify_feature_kind(std::span<const double> column, std::size_t cont_bound) {
    if (column.empty()) throw std::invalid_argument("classify_feature_kind: empty column");
    std::set<double> unique(column.begin(), column.end());
    FeatureType type;
    type.n_unique = unique.size();
    if (type.n_unique == 1) type.kind = FeatureKind::constant;
    else if (type.n_unique == 2) type.kind = FeatureKind::binary;
    else if (type.n_unique > cont_bound) type.kind = FeatureKind::continuous;
    else type.kind = FeatureKind::discrete;
    return type;
}

} // namespace clesh
