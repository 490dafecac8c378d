#pragma once

// Per-target interaction analysis: rank candidate partners by windowed
// correlation of the target's SHAP values against candidate feature values,
// then test whether the partner's value modulates the target's pattern.

#include "clesh/config.hpp"
#include "clesh/curve_models.hpp"
#include "clesh/dataset.hpp"
#include "clesh/selection.hpp"
#include "clesh/univariate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace clesh {

struct InteractionAssignment {
    std::size_t target = 0;
    std::size_t partner = 0;
    std::vector<double> partner_scores; // indexed by feature; target slot is 0
    // Candidates ordered by descending score (target excluded).
    std::vector<std::size_t> ranked_partners;
};

enum class InteractionCase { cat_cat, cat_cont, cont_cat, cont_cont };

const char* interaction_case_str(InteractionCase c);

struct PartnerGroup {
    std::string label;             // category value or "below"/"above"
    std::vector<std::size_t> members;
};

struct GroupSubresult {
    std::string group_label;
    // categorical target: between-category tests within this partner group
    std::optional<BetweenCategoryResult> categorical;
    // continuous target: refit of the univariate-selected family
    std::optional<FitResult> fit;
    bool skipped = false;
    std::string skip_reason;
};

struct InteractionFinding {
    std::size_t target = 0;
    std::size_t partner = 0;
    InteractionCase analysis_case = InteractionCase::cat_cat;
    std::vector<PartnerGroup> partition;
    std::vector<GroupSubresult> subresults;
    std::optional<TestResult> margin_test;
    std::optional<FitFamily> margin_family;
    bool significant = false;
    bool skipped = false;
    std::vector<std::string> notes;
};

// Windowed-correlation partner ranking: sort samples by the target feature,
// walk consecutive windows of size clamp(floor(n/10), 1, 50), sum |Pearson|
// between the target's SHAP values and each candidate's feature values.
InteractionAssignment approximate_interactions(std::size_t target, const DatasetBundle& bundle);

// Mean split of a continuous partner: above iff value > mean, else below.
// Throws std::invalid_argument on a constant column.
std::vector<bool> binarize_by_mean(std::span<const double> column);

InteractionFinding analyze_interaction_categorical_target(const DatasetBundle& bundle, std::size_t target,
                                                          std::size_t partner,
                                                          const std::vector<FeatureType>& kinds,
                                                          const Config& config);

InteractionFinding analyze_interaction_continuous_target(const DatasetBundle& bundle, std::size_t target,
                                                         std::size_t partner,
                                                         const std::vector<FeatureType>& kinds,
                                                         const ContinuousFinding& univariate_finding,
                                                         const Config& config);

} // namespace clesh
