#include "clesh/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace clesh {

namespace {

double pearson(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0; // zero-variance window contributes nothing
    return sxy / std::sqrt(sxx * syy);
}

std::string format_value(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Partition samples by the partner feature: native categories for
// binary/discrete partners, mean split for continuous ones.
std::vector<PartnerGroup> partition_by_partner(const DatasetBundle& bundle, std::size_t partner,
                                               FeatureKind partner_kind) {
    const std::vector<double> column = bundle.features.column(partner);
    std::vector<PartnerGroup> groups;
    if (partner_kind == FeatureKind::continuous) {
        const std::vector<bool> above = binarize_by_mean(column);
        PartnerGroup below_g{"below", {}};
        PartnerGroup above_g{"above", {}};
        for (std::size_t i = 0; i < above.size(); ++i) {
            (above[i] ? above_g : below_g).members.push_back(i);
        }
        groups.push_back(std::move(below_g));
        groups.push_back(std::move(above_g));
    } else {
        const CategoryGroups cats = group_by_value(column);
        for (std::size_t g = 0; g < cats.values.size(); ++g) {
            groups.push_back(PartnerGroup{format_value(cats.values[g]), cats.members[g]});
        }
    }
    return groups;
}

InteractionCase classify_case(FeatureKind target_kind, FeatureKind partner_kind) {
    const bool target_cat = target_kind != FeatureKind::continuous;
    const bool partner_cat = partner_kind != FeatureKind::continuous;
    if (target_cat && partner_cat) return InteractionCase::cat_cat;
    if (target_cat) return InteractionCase::cat_cont;
    if (partner_cat) return InteractionCase::cont_cat;
    return InteractionCase::cont_cont;
}

} // namespace

const char* interaction_case_str(InteractionCase c) {
    switch (c) {
        case InteractionCase::cat_cat: return "categorical target / categorical partner";
        case InteractionCase::cat_cont: return "categorical target / continuous partner";
        case InteractionCase::cont_cat: return "continuous target / categorical partner";
        case InteractionCase::cont_cont: return "continuous target / continuous partner";
    }
    return "unknown";
}

InteractionAssignment approximate_interactions(std::size_t target, const DatasetBundle& bundle) {
    const std::size_t n = bundle.n_samples();
    const std::size_t n_features = bundle.n_features();
    if (n_features < 2) throw std::invalid_argument("approximate_interactions: need >= 2 features");

    InteractionAssignment assignment;
    assignment.target = target;
    assignment.partner_scores.assign(n_features, 0.0);

    std::vector<std::size_t> srt(n);
    std::iota(srt.begin(), srt.end(), 0);
    const std::vector<double> target_vals = bundle.features.column(target);
    std::stable_sort(srt.begin(), srt.end(),
                     [&](std::size_t a, std::size_t b) { return target_vals[a] < target_vals[b]; });

    std::vector<double> shap_sorted(n);
    for (std::size_t i = 0; i < n; ++i) shap_sorted[i] = bundle.shap_values.at(srt[i], target);

    const std::size_t window = std::clamp<std::size_t>(n / 10, 1, 50);

    std::vector<double> cand(n);
    for (std::size_t j = 0; j < n_features; ++j) {
        if (j == target) continue;
        for (std::size_t i = 0; i < n; ++i) cand[i] = bundle.features.at(srt[i], j);
        double score = 0.0;
        for (std::size_t start = 0; start < n; start += window) {
            const std::size_t len = std::min(window, n - start);
            if (len < 2) continue;
            score += std::fabs(pearson(std::span(shap_sorted).subspan(start, len),
                                       std::span(cand).subspan(start, len)));
        }
        assignment.partner_scores[j] = score;
    }

    assignment.ranked_partners.clear();
    for (std::size_t j = 0; j < n_features; ++j) {
        if (j != target) assignment.ranked_partners.push_back(j);
    }
    std::stable_sort(assignment.ranked_partners.begin(), assignment.ranked_partners.end(),
                     [&](std::size_t a, std::size_t b) {
                         return assignment.partner_scores[a] > assignment.partner_scores[b];
                     });
    assignment.partner = assignment.ranked_partners.front();
    return assignment;
}

std::vector<bool> binarize_by_mean(std::span<const double> column) {
    double mean = 0.0;
    for (double v : column) mean += v;
    mean /= static_cast<double>(column.size());
    bool any_above = false, any_below = false;
    std::vector<bool> above(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) {
        above[i] = column[i] > mean; // ties at the mean fall below
        (above[i] ? any_above : any_below) = true;
    }
    if (!any_above || !any_below) {
        throw std::invalid_argument("binarize_by_mean: column is constant");
    }
    return above;
}

InteractionFinding analyze_interaction_categorical_target(const DatasetBundle& bundle, std::size_t target,
                                                          std::size_t partner,
                                                          const std::vector<FeatureType>& kinds,
                                                          const Config& config) {
    InteractionFinding finding;
    finding.target = target;
    finding.partner = partner;
    finding.analysis_case = classify_case(kinds[target].kind, kinds[partner].kind);

    try {
        finding.partition = partition_by_partner(bundle, partner, kinds[partner].kind);
    } catch (const std::invalid_argument&) {
        finding.skipped = true;
        finding.notes.push_back("partner feature is constant; interaction skipped");
        return finding;
    }

    const std::vector<double> target_vals = bundle.features.column(target);
    const std::vector<double> shap = bundle.shap_values.column(target);

    for (const PartnerGroup& group : finding.partition) {
        GroupSubresult sub;
        sub.group_label = group.label;
        std::vector<double> g_shap, g_vals;
        g_shap.reserve(group.members.size());
        g_vals.reserve(group.members.size());
        for (std::size_t idx : group.members) {
            g_shap.push_back(shap[idx]);
            g_vals.push_back(target_vals[idx]);
        }
        BetweenCategoryResult r =
            between_category_tests(g_shap, g_vals, kinds[target].kind, config.p_interaction);
        if (r.untestable) {
            sub.skipped = true;
            sub.skip_reason = "fewer than 2 usable target categories in this group";
            finding.notes.push_back("partner group '" + group.label + "': " + sub.skip_reason);
        } else {
            if (r.between && r.between->p_value < config.p_interaction) finding.significant = true;
            sub.categorical = std::move(r);
        }
        finding.subresults.push_back(std::move(sub));
    }

    if (std::all_of(finding.subresults.begin(), finding.subresults.end(),
                    [](const GroupSubresult& s) { return s.skipped; })) {
        finding.skipped = true;
        finding.notes.push_back("no partner group had enough usable target categories");
    }
    return finding;
}

InteractionFinding analyze_interaction_continuous_target(const DatasetBundle& bundle, std::size_t target,
                                                         std::size_t partner,
                                                         const std::vector<FeatureType>& kinds,
                                                         const ContinuousFinding& univariate_finding,
                                                         const Config& config) {
    InteractionFinding finding;
    finding.target = target;
    finding.partner = partner;
    finding.analysis_case = classify_case(kinds[target].kind, kinds[partner].kind);

    if (!univariate_finding.selection.best) {
        finding.skipped = true;
        finding.notes.push_back("no significant univariate function; interaction skipped");
        return finding;
    }
    const FitFamily family = univariate_finding.selection.best->family;
    finding.margin_family = family;

    try {
        finding.partition = partition_by_partner(bundle, partner, kinds[partner].kind);
    } catch (const std::invalid_argument&) {
        finding.skipped = true;
        finding.notes.push_back("partner feature is constant; interaction skipped");
        return finding;
    }

    const std::vector<double> target_vals = bundle.features.column(target);
    const std::vector<double> shap = bundle.shap_values.column(target);

    std::vector<std::size_t> kept; // indices into subresults with significant fits
    for (const PartnerGroup& group : finding.partition) {
        GroupSubresult sub;
        sub.group_label = group.label;
        std::vector<double> g_x, g_y;
        g_x.reserve(group.members.size());
        g_y.reserve(group.members.size());
        for (std::size_t idx : group.members) {
            g_x.push_back(target_vals[idx]);
            g_y.push_back(shap[idx]);
        }
        if (g_x.size() < fit_min_points(family)) {
            sub.skipped = true;
            sub.skip_reason = "too few samples to refit the selected function";
            finding.notes.push_back("partner group '" + group.label + "': " + sub.skip_reason);
        } else {
            try {
                FitResult fit = fit_family(family, g_x, g_y);
                if (fit.converged && fit.p_value_a < config.p_interaction) {
                    kept.push_back(finding.subresults.size());
                }
                sub.fit = std::move(fit);
            } catch (const std::invalid_argument&) {
                sub.skipped = true;
                sub.skip_reason = "refit impossible (degenerate group)";
                finding.notes.push_back("partner group '" + group.label + "': " + sub.skip_reason);
            }
        }
        finding.subresults.push_back(std::move(sub));
    }

    if (kept.size() < 2) {
        finding.notes.push_back(kept.empty()
                                    ? "no partner group fit the selected function significantly"
                                    : "only one partner group fit significantly; no margin comparison");
        return finding;
    }

    // Margin test between each pair of significantly fitted groups, evaluated
    // at every observed target value; the most significant pair is reported.
    for (std::size_t i = 0; i < kept.size(); ++i) {
        for (std::size_t j = i + 1; j < kept.size(); ++j) {
            const FitResult& f1 = *finding.subresults[kept[i]].fit;
            const FitResult& f2 = *finding.subresults[kept[j]].fit;
            std::vector<double> e1 = evaluate_fit(f1, target_vals);
            std::vector<double> e2 = evaluate_fit(f2, target_vals);
            std::vector<double> diff(e1.size());
            for (std::size_t s = 0; s < e1.size(); ++s) diff[s] = e1[s] - e2[s];

            const NormalityGate gate = normality_gate(diff, config.p_interaction);
            TestResult t;
            if (gate.is_normal) {
                t = t_test_paired(e1, e2);
            } else if (config.strict_paired_nonparametric) {
                t = signed_rank_test(diff, 0.0);
            } else {
                t = rank_sum_test(e1, e2);
            }
            t.group_labels = std::make_pair(finding.subresults[kept[i]].group_label,
                                            finding.subresults[kept[j]].group_label);
            if (!finding.margin_test || t.p_value < finding.margin_test->p_value) {
                finding.margin_test = std::move(t);
            }
        }
    }
    finding.significant = finding.margin_test && finding.margin_test->p_value < config.p_interaction;
    return finding;
}

} // namespace clesh
