#include "clesh/sentences.hpp"

#include <cmath>
#include <cstdio>

namespace clesh {

namespace {

Sentence make(TemplateId id, std::string text, std::string ref) {
    return Sentence{id, std::move(text), std::move(ref)};
}

std::string quote(const std::string& name) { return "'" + name + "'"; }

std::string direction_word(double v) { return v > 0.0 ? "higher" : "lower"; }

} // namespace

const char* template_id_str(TemplateId id) {
    switch (id) {
        case TemplateId::selection_summary: return "selection_summary";
        case TemplateId::selection_fallback: return "selection_fallback";
        case TemplateId::selection_manual: return "selection_manual";
        case TemplateId::category_pushes: return "category_pushes";
        case TemplateId::category_no_effect: return "category_no_effect";
        case TemplateId::category_small: return "category_small";
        case TemplateId::between_two_groups: return "between_two_groups";
        case TemplateId::between_two_groups_ns: return "between_two_groups_ns";
        case TemplateId::omnibus_significant: return "omnibus_significant";
        case TemplateId::omnibus_not_significant: return "omnibus_not_significant";
        case TemplateId::tukey_pair_significant: return "tukey_pair_significant";
        case TemplateId::continuous_best_fit: return "continuous_best_fit";
        case TemplateId::continuous_none_significant: return "continuous_none_significant";
        case TemplateId::feature_degenerate: return "feature_degenerate";
        case TemplateId::interaction_group_difference: return "interaction_group_difference";
        case TemplateId::interaction_no_difference: return "interaction_no_difference";
        case TemplateId::interaction_margin_significant: return "interaction_margin_significant";
        case TemplateId::interaction_margin_not_significant: return "interaction_margin_not_significant";
        case TemplateId::interaction_single_group: return "interaction_single_group";
        case TemplateId::interaction_skipped: return "interaction_skipped";
    }
    return "unknown";
}

std::string format_number(double v) {
    if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%#.3g", v);
    std::string s(buf);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

std::string format_signed(double v) { return (v >= 0.0 ? "+" : "") + format_number(v); }

std::string format_p(double p) {
    if (p < 0.001) return "p < 0.001";
    return "p = " + format_number(p);
}

std::vector<Sentence> sentences_for_selection(const CutAnalysis& cuts, std::size_t n_features,
                                              const Config& config, const std::string& label_name) {
    std::vector<Sentence> out;
    const std::string ref = "selection";
    if (cuts.manual_override) {
        out.push_back(make(TemplateId::selection_manual,
                           "The number of analyzed features was set manually to " +
                               std::to_string(cuts.chosen_k) + " (manual_num), overriding the significance cuts.",
                           ref));
        return out;
    }
    if (cuts.fallback_used) {
        out.push_back(make(
            TemplateId::selection_fallback,
            "No significance cut fell between " + std::to_string(config.candidate_num_min) + " and " +
                std::to_string(config.candidate_num_max) + " ranked features; the fallback rule selected " +
                std::to_string(cuts.chosen_k) + " of " + std::to_string(n_features) +
                " features for the analysis of " + quote(label_name) + ".",
            ref));
        return out;
    }
    out.push_back(make(TemplateId::selection_summary,
                       "Out of " + std::to_string(n_features) + " features, " + std::to_string(cuts.chosen_k) +
                           " were selected as important for predicting " + quote(label_name) +
                           ", cutting where adjacent mean-|SHAP| ranks differ at " +
                           format_p(config.p_feature_selection).substr(4) + " significance (" +
                           std::to_string(cuts.cut_positions.size()) + " cuts in total).",
                       ref));
    return out;
}

std::vector<Sentence> sentences_for_univariate(const UnivariateFinding& finding,
                                               const std::vector<std::string>& feature_names,
                                               const std::string& label_name, const Config& config) {
    std::vector<Sentence> out;
    const std::size_t feature = finding_feature(finding);
    const std::string& fname = feature_names[feature];
    const std::string ref = "univariate:" + fname;

    if (const auto* degenerate = std::get_if<DegenerateFinding>(&finding)) {
        out.push_back(make(TemplateId::feature_degenerate,
                           "Feature " + quote(fname) + " was not analyzed: " + degenerate->reason + ".", ref));
        return out;
    }

    if (const auto* cat = std::get_if<CategoricalFinding>(&finding)) {
        for (const CategoryStats& stats : cat->per_category) {
            const std::string cat_ref = ref + ":cat=" + format_number(stats.value);
            if (!stats.usable) {
                out.push_back(make(TemplateId::category_small,
                                   "Category " + format_number(stats.value) + " of " + quote(fname) +
                                       " has only " + std::to_string(stats.n) +
                                       " samples and was shown in plots but excluded from testing.",
                                   cat_ref));
                continue;
            }
            if (stats.zero_test && stats.zero_test->p_value < config.p_univariate) {
                out.push_back(make(TemplateId::category_pushes,
                                   "For predicting " + quote(label_name) + ", feature " + quote(fname) + " = " +
                                       format_number(stats.value) + " pushes predictions " +
                                       direction_word(stats.mean_shap) + " (mean SHAP " +
                                       format_signed(stats.mean_shap) + ", " +
                                       format_p(stats.zero_test->p_value) + ").",
                                   cat_ref));
            } else {
                out.push_back(make(TemplateId::category_no_effect,
                                   "Feature " + quote(fname) + " = " + format_number(stats.value) +
                                       " shows no significant average SHAP shift from zero (mean SHAP " +
                                       format_signed(stats.mean_shap) + ", " +
                                       format_p(stats.zero_test ? stats.zero_test->p_value : 1.0) + ").",
                                   cat_ref));
            }
        }
        if (cat->between) {
            const TestResult& between = *cat->between;
            const bool significant = between.p_value < config.p_univariate;
            if (cat->kind == FeatureKind::binary) {
                out.push_back(make(significant ? TemplateId::between_two_groups : TemplateId::between_two_groups_ns,
                                   "The two categories of " + quote(fname) +
                                       (significant ? " carry significantly different SHAP distributions ("
                                                    : " do not differ significantly in their SHAP distributions (") +
                                       std::string(test_name_str(between.test_name)) + ", " +
                                       format_p(between.p_value) + ").",
                                   ref + ":between"));
            } else {
                out.push_back(make(significant ? TemplateId::omnibus_significant
                                               : TemplateId::omnibus_not_significant,
                                   "Across the categories of " + quote(fname) +
                                       (significant ? ", SHAP distributions differ significantly ("
                                                    : ", no significant overall difference was found (") +
                                       std::string(test_name_str(between.test_name)) + ", " +
                                       format_p(between.p_value) + ").",
                                   ref + ":between"));
            }
        }
        if (cat->posthoc) {
            for (const TestResult& pair : *cat->posthoc) {
                if (!(pair.p_value < config.p_univariate)) continue;
                out.push_back(make(TemplateId::tukey_pair_significant,
                                   "Categories " + pair.group_labels->first + " and " + pair.group_labels->second +
                                       " of " + quote(fname) + " differ significantly (Tukey HSD, mean difference " +
                                       format_signed(pair.mean_diff) + ", " + format_p(pair.p_value) + ").",
                                   ref + ":tukey"));
            }
        }
        return out;
    }

    const auto& cont = std::get<ContinuousFinding>(finding);
    if (cont.selection.none_significant || !cont.selection.best) {
        out.push_back(make(TemplateId::continuous_none_significant,
                           "No statistically significant linear, quadratic, or sigmoid pattern was found for feature " +
                               quote(fname) + ".",
                           ref));
        return out;
    }
    const FitResult& best = *cont.selection.best;
    std::string description;
    switch (best.family) {
        case FitFamily::linear:
            description = "a linear pattern (" + std::string(best.a > 0 ? "rising" : "falling") + ", slope " +
                          format_signed(best.a) + ")";
            break;
        case FitFamily::quadratic:
            description = "a quadratic pattern (" + std::string(best.a > 0 ? "opening upward" : "opening downward") +
                          ", curvature " + format_signed(best.a) + ")";
            break;
        case FitFamily::sigmoid:
            description = "a sigmoid pattern (" +
                          std::string(best.a * best.big_l > 0 ? "rising" : "falling") + " step, inflection near " +
                          format_number(best.x0) + ")";
            break;
    }
    out.push_back(make(TemplateId::continuous_best_fit,
                       "For predicting " + quote(label_name) + ", the SHAP values of " + quote(fname) + " follow " +
                           description + " in the feature value (coefficient " + format_p(best.p_value_a) +
                           ", RMSE " + format_number(best.rmse) + ").",
                       ref));
    return out;
}

std::vector<Sentence> sentences_for_interaction(const InteractionFinding& finding,
                                                const std::vector<std::string>& feature_names,
                                                const std::string& label_name, const Config& config) {
    (void)label_name;
    std::vector<Sentence> out;
    const std::string& tname = feature_names[finding.target];
    const std::string& pname = feature_names[finding.partner];
    const std::string ref = "interaction:" + tname + ":" + pname;

    if (finding.skipped) {
        std::string why = finding.notes.empty() ? "not analyzable" : finding.notes.front();
        out.push_back(make(TemplateId::interaction_skipped,
                           "Interaction of " + quote(tname) + " with " + quote(pname) + " was skipped: " + why + ".",
                           ref));
        return out;
    }

    const bool continuous_target = finding.analysis_case == InteractionCase::cont_cat ||
                                   finding.analysis_case == InteractionCase::cont_cont;
    if (!continuous_target) {
        bool any = false;
        for (const GroupSubresult& sub : finding.subresults) {
            if (sub.skipped || !sub.categorical || !sub.categorical->between) continue;
            const TestResult& between = *sub.categorical->between;
            if (between.p_value < config.p_interaction) {
                any = true;
                out.push_back(make(TemplateId::interaction_group_difference,
                                   "Where " + quote(pname) + " is " + sub.group_label + ", the categories of " +
                                       quote(tname) + " carry significantly different SHAP values (" +
                                       std::string(test_name_str(between.test_name)) + ", " +
                                       format_p(between.p_value) + ").",
                                   ref + ":" + sub.group_label));
            }
        }
        if (!any) {
            out.push_back(make(TemplateId::interaction_no_difference,
                               "The value of " + quote(pname) + " does not significantly change how the categories of " +
                                   quote(tname) + " behave.",
                               ref));
        }
        return out;
    }

    if (finding.margin_test) {
        const TestResult& margin = *finding.margin_test;
        const std::string family = finding.margin_family ? fit_family_str(*finding.margin_family) : "fitted";
        if (margin.p_value < config.p_interaction) {
            out.push_back(make(TemplateId::interaction_margin_significant,
                               "The " + std::string(family) + " pattern of " + quote(tname) +
                                   " differs significantly between the " + margin.group_labels->first + " and " +
                                   margin.group_labels->second + " groups of " + quote(pname) + " (margin test, " +
                                   format_p(margin.p_value) + ").",
                               ref));
        } else {
            out.push_back(make(TemplateId::interaction_margin_not_significant,
                               "The " + std::string(family) + " patterns of " + quote(tname) + " fitted per " +
                                   quote(pname) + " group do not differ significantly (margin test, " +
                                   format_p(margin.p_value) + ").",
                               ref));
        }
    } else {
        out.push_back(make(TemplateId::interaction_single_group,
                           "Fewer than two " + quote(pname) + " groups showed a significant fit for " + quote(tname) +
                               "; no margin comparison was made.",
                           ref));
    }
    return out;
}

} // namespace clesh
