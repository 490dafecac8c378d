#include "clesh/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace clesh {

namespace {

std::string format_value(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

} // namespace

std::size_t finding_feature(const UnivariateFinding& finding) {
    return std::visit([](const auto& f) { return f.feature; }, finding);
}

CategoryGroups group_by_value(std::span<const double> column) {
    std::map<double, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < column.size(); ++i) groups[column[i]].push_back(i);
    CategoryGroups out;
    for (auto& [value, members] : groups) {
        out.values.push_back(value);
        out.members.push_back(std::move(members));
    }
    return out;
}

BetweenCategoryResult between_category_tests(const std::vector<double>& shap,
                                             const std::vector<double>& feature_values, FeatureKind kind,
                                             double alpha) {
    BetweenCategoryResult result;
    const CategoryGroups groups = group_by_value(feature_values);

    std::vector<std::vector<double>> usable_samples;
    std::vector<std::string> usable_labels;
    for (std::size_t g = 0; g < groups.values.size(); ++g) {
        CategoryStats stats;
        stats.value = groups.values[g];
        stats.n = groups.members[g].size();
        std::vector<double> s;
        s.reserve(stats.n);
        for (std::size_t idx : groups.members[g]) s.push_back(shap[idx]);
        stats.mean_shap = mean_of(s);
        stats.usable = stats.n >= 3;
        if (stats.usable) {
            usable_samples.push_back(std::move(s));
            usable_labels.push_back(format_value(stats.value));
        }
        result.per_category.push_back(std::move(stats));
    }

    if (usable_samples.size() < 2) {
        result.untestable = true;
        return result;
    }

    bool all_normal = true;
    for (const auto& s : usable_samples) {
        if (!normality_gate(s, alpha).is_normal) {
            all_normal = false;
            break;
        }
    }

    if (kind == FeatureKind::binary) {
        result.between = all_normal ? t_test_two_sample(usable_samples[0], usable_samples[1])
                                    : rank_sum_test(usable_samples[0], usable_samples[1]);
        result.between->group_labels = std::make_pair(usable_labels[0], usable_labels[1]);
    } else {
        result.between = all_normal ? anova_oneway(usable_samples) : kruskal_wallis(usable_samples);
        if (result.between->p_value < alpha && usable_samples.size() >= 3) {
            result.posthoc = tukey_hsd(usable_samples, usable_labels);
        }
    }
    return result;
}

CategoricalFinding analyze_categorical_feature(const DatasetBundle& bundle, std::size_t feature,
                                               const FeatureType& type, const Config& config) {
    CategoricalFinding finding;
    finding.feature = feature;
    finding.kind = type.kind;

    const std::vector<double> column = bundle.features.column(feature);
    const std::vector<double> shap = bundle.shap_values.column(feature);
    const double alpha = config.p_univariate;

    BetweenCategoryResult between = between_category_tests(shap, column, type.kind, alpha);
    finding.between = between.between;
    finding.posthoc = between.posthoc;
    finding.untestable = between.untestable;
    finding.per_category = std::move(between.per_category);

    // Zero-mean test inside each usable category.
    const CategoryGroups groups = group_by_value(column);
    for (std::size_t g = 0; g < groups.values.size(); ++g) {
        CategoryStats& stats = finding.per_category[g];
        if (!stats.usable) {
            finding.notes.push_back("category " + format_value(stats.value) + " has n=" +
                                    std::to_string(stats.n) + " (<3); excluded from tests, shown in plots");
            continue;
        }
        std::vector<double> s;
        s.reserve(stats.n);
        for (std::size_t idx : groups.members[g]) s.push_back(shap[idx]);
        const NormalityGate gate = normality_gate(s, alpha);
        stats.zero_test = gate.is_normal ? t_test_one_sample(s, 0.0) : signed_rank_test(s, 0.0);
    }

    if (finding.untestable) {
        finding.notes.push_back("fewer than 2 usable categories; between-category comparison skipped");
    }
    return finding;
}

ContinuousFinding analyze_continuous_feature(const DatasetBundle& bundle, std::size_t feature,
                                             const Config& config) {
    ContinuousFinding finding;
    finding.feature = feature;
    const std::vector<double> x = bundle.features.column(feature);
    const std::vector<double> y = bundle.shap_values.column(feature);
    finding.selection = select_best_fit(x, y, config.p_univariate);
    return finding;
}

UnivariateFinding analyze_feature(const DatasetBundle& bundle, std::size_t feature, const FeatureType& type,
                                  const Config& config) {
    switch (type.kind) {
        case FeatureKind::constant:
            return DegenerateFinding{feature, "constant feature value; no pattern to test"};
        case FeatureKind::binary:
        case FeatureKind::discrete:
            return analyze_categorical_feature(bundle, feature, type, config);
        case FeatureKind::continuous:
            if (bundle.n_samples() < 5) {
                return DegenerateFinding{feature, "fewer than 5 samples; function fitting skipped"};
            }
            return analyze_continuous_feature(bundle, feature, config);
    }
    return DegenerateFinding{feature, "unclassifiable feature"};
}

} // namespace clesh
