#pragma once

// Per-feature analysis of the important features, dispatched on data type:
// categorical features get per-category zero-mean tests plus a between-
// category comparison (with Tukey HSD post-hoc when warranted); continuous
// features get the three-family function fit.

#include "clesh/config.hpp"
#include "clesh/curve_models.hpp"
#include "clesh/dataset.hpp"
#include "clesh/selection.hpp"
#include "clesh/stat_tests.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace clesh {

struct CategoryStats {
    double value = 0.0; // the feature value defining the category
    std::size_t n = 0;
    double mean_shap = 0.0;
    std::optional<TestResult> zero_test; // absent when the category is unusable (n < 3)
    bool usable = false;
};

struct CategoricalFinding {
    std::size_t feature = 0;
    FeatureKind kind = FeatureKind::binary;
    std::vector<CategoryStats> per_category;
    std::optional<TestResult> between;
    std::optional<std::vector<TestResult>> posthoc;
    bool untestable = false; // fewer than 2 usable categories
    std::vector<std::string> notes;
};

struct ContinuousFinding {
    std::size_t feature = 0;
    FitSelection selection;
    std::vector<std::string> notes;
};

struct DegenerateFinding {
    std::size_t feature = 0;
    std::string reason;
};

using UnivariateFinding = std::variant<CategoricalFinding, ContinuousFinding, DegenerateFinding>;

std::size_t finding_feature(const UnivariateFinding& finding);

CategoricalFinding analyze_categorical_feature(const DatasetBundle& bundle, std::size_t feature,
                                               const FeatureType& type, const Config& config);

ContinuousFinding analyze_continuous_feature(const DatasetBundle& bundle, std::size_t feature,
                                             const Config& config);

// Dispatches on the classified kind; every feature receives exactly one
// finding (constant or under-sized features yield a DegenerateFinding).
UnivariateFinding analyze_feature(const DatasetBundle& bundle, std::size_t feature, const FeatureType& type,
                                  const Config& config);

// Grouping helper shared with the interaction stage: distinct feature values
// in ascending order with the sample indices belonging to each.
struct CategoryGroups {
    std::vector<double> values;
    std::vector<std::vector<std::size_t>> members;
};
CategoryGroups group_by_value(std::span<const double> column);

// Between-category comparison exactly as the univariate stage runs it,
// reused by the interaction stage on partner-restricted subsets.
struct BetweenCategoryResult {
    std::vector<CategoryStats> per_category; // zero_test left empty
    std::optional<TestResult> between;
    std::optional<std::vector<TestResult>> posthoc;
    bool untestable = false;
};
BetweenCategoryResult between_category_tests(const std::vector<double>& shap,
                                             const std::vector<double>& feature_values, FeatureKind kind,
                                             double alpha);

} // namespace clesh
