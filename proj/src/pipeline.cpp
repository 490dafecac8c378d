#include "clesh/pipeline.hpp"

#include "clesh/distributions.hpp"
#include "clesh/plots.hpp"
#include "clesh/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>

namespace clesh {

namespace {

// Index-parallel loop with deterministic output slots.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, n)));
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

bool univariate_significant(const UnivariateFinding& finding, const Config& config) {
    if (const auto* cat = std::get_if<CategoricalFinding>(&finding)) {
        if (cat->between && cat->between->p_value < config.p_univariate) return true;
        for (const CategoryStats& s : cat->per_category) {
            if (s.zero_test && s.zero_test->p_value < config.p_univariate) return true;
        }
        return false;
    }
    if (const auto* cont = std::get_if<ContinuousFinding>(&finding)) {
        return !cont->selection.none_significant;
    }
    return false;
}

std::string rank_slug(std::size_t rank, const std::string& name) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02zu", rank + 1);
    return std::string(buf) + "_" + slugify(name);
}

std::vector<std::pair<double, double>> curve_grid(const FitResult& fit, double lo, double hi) {
    std::vector<std::pair<double, double>> out;
    constexpr int kSteps = 120;
    for (int i = 0; i <= kSteps; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / kSteps;
        out.emplace_back(x, evaluate_fit_at(fit, x));
    }
    return out;
}

struct PlotStore {
    RunOutputs& outputs;
    std::map<std::string, std::string> svg_bytes; // rel path -> content (for HTML inlining)

    void add(const std::string& rel_path, const std::string& svg) {
        outputs.write(rel_path, "plot", svg);
        svg_bytes.emplace(rel_path, svg);
    }
};

} // namespace

AnalysisReport analyze_bundle(const DatasetBundle& bundle, const Config& config, unsigned threads) {
    AnalysisReport report;
    report.ranking = rank_features(bundle);
    report.cuts = adjacent_significance_cuts(bundle, report.ranking, config);
    choose_num_important(report.cuts, report.ranking, config, bundle.n_features());

    report.kinds.resize(bundle.n_features());
    for (std::size_t f = 0; f < bundle.n_features(); ++f) {
        report.kinds[f] = classify_feature_kind(bundle.features.column(f), config.cont_bound);
    }

    const std::size_t k = std::min<std::size_t>(report.cuts.chosen_k, bundle.n_features());
    report.important.assign(report.ranking.order.begin(), report.ranking.order.begin() + k);

    report.univariate.resize(k);
    parallel_for(k, threads, [&](std::size_t i) {
        const std::size_t feature = report.important[i];
        report.univariate[i] = analyze_feature(bundle, feature, report.kinds[feature], config);
    });

    report.interactions.resize(k);
    if (bundle.n_features() >= 2) {
        parallel_for(k, threads, [&](std::size_t i) {
            const std::size_t target = report.important[i];
            if (report.kinds[target].kind == FeatureKind::constant) return;
            const InteractionAssignment assignment = approximate_interactions(target, bundle);
            const std::size_t top_k =
                std::min<std::size_t>(config.interaction_top_k, assignment.ranked_partners.size());
            for (std::size_t p = 0; p < top_k; ++p) {
                const std::size_t partner = assignment.ranked_partners[p];
                if (report.kinds[target].kind == FeatureKind::continuous) {
                    const auto* cont = std::get_if<ContinuousFinding>(&report.univariate[i]);
                    if (cont == nullptr) {
                        InteractionFinding skipped;
                        skipped.target = target;
                        skipped.partner = partner;
                        skipped.skipped = true;
                        skipped.notes.push_back("univariate analysis produced no fit for this feature");
                        report.interactions[i].push_back(std::move(skipped));
                        continue;
                    }
                    report.interactions[i].push_back(analyze_interaction_continuous_target(
                        bundle, target, partner, report.kinds, *cont, config));
                } else {
                    report.interactions[i].push_back(analyze_interaction_categorical_target(
                        bundle, target, partner, report.kinds, config));
                }
            }
        });
    }

    report.summary.n_important = k;
    for (const UnivariateFinding& f : report.univariate) {
        if (univariate_significant(f, config)) ++report.summary.n_significant_univariate;
    }
    for (const auto& per_target : report.interactions) {
        for (const InteractionFinding& f : per_target) {
            if (f.significant) ++report.summary.n_significant_interactions;
        }
    }
    report.summary.output_dir = config.output_dir;
    return report;
}

void write_outputs(const AnalysisReport& report, const DatasetBundle& bundle, const Config& config) {
    RunOutputs outputs{std::filesystem::path(config.output_dir)};
    PlotStore plots{outputs, {}};
    const std::vector<std::string>& names = bundle.feature_names;
    ReportDoc doc;

    // 1. Methods
    doc.section("Methods");
    doc.paragraph("This report was generated from " + std::to_string(bundle.n_samples()) + " samples and " +
                  std::to_string(bundle.n_features()) + " features with the label '" + bundle.label_name +
                  "'. Feature importance is the mean absolute SHAP value; the number of features to analyze "
                  "is chosen by testing adjacently ranked features and cutting where the difference is "
                  "significant. Each analyzed feature receives a type-specific univariate analysis (category "
                  "tests or function fitting) and a windowed-correlation interaction analysis.");
    doc.paragraph("Test routing: Shapiro-Wilk decides between parametric and rank-based branches at each "
                  "step. Function fits report the two-sided p-value of the leading coefficient; when several "
                  "families are significant the lowest-RMSE fit is kept. Coefficient inference for the "
                  "sigmoid family uses the asymptotic covariance of the least-squares estimate. Margin tests "
                  "compare fitted curves evaluated at every observed feature value, weighting duplicate "
                  "values by their frequency.");
    doc.key_values({
        {"candidate_num_min", std::to_string(config.candidate_num_min)},
        {"candidate_num_max", std::to_string(config.candidate_num_max)},
        {"p_feature_selection", format_number(config.p_feature_selection)},
        {"cont_bound", std::to_string(config.cont_bound)},
        {"manual_num", config.manual_num ? std::to_string(*config.manual_num) : "(unset)"},
        {"p_univariate", format_number(config.p_univariate)},
        {"p_interaction", format_number(config.p_interaction)},
        {"rng_seed", std::to_string(config.rng_seed)},
        {"strict_paired_nonparametric", config.strict_paired_nonparametric ? "true" : "false"},
        {"interaction_top_k", std::to_string(config.interaction_top_k)},
    });

    // 2. Feature-count selection
    doc.section("Number of Important Features");
    {
        std::vector<double> by_rank;
        for (std::size_t idx : report.ranking.order) by_rank.push_back(report.ranking.mean_abs_shap[idx]);
        SelectionPayload payload{"Importance cuts for '" + bundle.label_name + "'", by_rank,
                                 report.cuts.cut_positions, report.cuts.chosen_k, config.candidate_num_min,
                                 config.candidate_num_max};
        plots.add("feature_selection.svg", render_selection(payload));
        for (const Sentence& s :
             sentences_for_selection(report.cuts, bundle.n_features(), config, bundle.label_name)) {
            doc.paragraph(s.rendered);
        }
        doc.image("Mean |SHAP| by feature rank with significance cuts", "feature_selection.svg");
        std::vector<std::string> ranked;
        for (std::size_t i = 0; i < report.important.size(); ++i) {
            const std::size_t f = report.important[i];
            ranked.push_back(std::to_string(i + 1) + ". '" + names[f] + "' (mean |SHAP| " +
                             format_number(report.ranking.mean_abs_shap[f]) + ", " +
                             feature_kind_str(report.kinds[f].kind) + ")");
        }
        doc.bullets(ranked);
    }

    std::vector<std::string> caveats;
    if (report.cuts.fallback_used) {
        caveats.push_back("Feature-count selection used the fallback rule: no significance cut fell inside "
                          "the candidate window.");
    }
    if (report.cuts.manual_override) {
        caveats.push_back("Feature count was forced by manual_num; significance cuts were ignored.");
    }

    // 3. Univariate analysis
    doc.section("Univariate Analysis");
    for (std::size_t i = 0; i < report.univariate.size(); ++i) {
        const std::size_t feature = report.important[i];
        const std::string& fname = names[feature];
        const UnivariateFinding& finding = report.univariate[i];
        const std::string base = "univariate_analysis/" + rank_slug(i, fname);

        std::vector<std::string> lines;
        for (const Sentence& s : sentences_for_univariate(finding, names, bundle.label_name, config)) {
            lines.push_back(s.rendered);
        }
        doc.paragraph("Rank " + std::to_string(i + 1) + ": '" + fname + "'");
        doc.bullets(lines);

        if (const auto* cat = std::get_if<CategoricalFinding>(&finding)) {
            BoxPayload box{"SHAP values of '" + fname + "' by category", fname, "SHAP value", {}, {}};
            for (const CategoryStats& s : cat->per_category) {
                std::vector<double> values;
                const std::vector<double> col = bundle.features.column(feature);
                const std::vector<double> shap = bundle.shap_values.column(feature);
                for (std::size_t r = 0; r < col.size(); ++r) {
                    if (col[r] == s.value) values.push_back(shap[r]);
                }
                box.categories.push_back(BoxCategory{format_number(s.value), {values}});
            }
            plots.add(base + "_box.svg", render_box(box));
            doc.image("SHAP distribution per category of '" + fname + "'", base + "_box.svg");
            for (const std::string& note : cat->notes) caveats.push_back("'" + fname + "': " + note);

            if (cat->posthoc && cat->between && cat->between->df) {
                TukeyPayload tk{"Tukey HSD intervals for '" + fname + "'", "mean SHAP difference", {}};
                for (const TestResult& pair : *cat->posthoc) {
                    const double q_crit = pair.df && pair.stderr_diff > 0.0
                                              ? studentized_range_quantile(1.0 - config.p_univariate,
                                                                           static_cast<double>(
                                                                               cat->per_category.size()),
                                                                           *pair.df)
                                              : 0.0;
                    tk.intervals.push_back(TukeyInterval{pair.group_labels->first + " - " +
                                                             pair.group_labels->second,
                                                         pair.mean_diff, q_crit * pair.stderr_diff,
                                                         pair.p_value < config.p_univariate});
                }
                plots.add(base + "_tukey.svg", render_tukey(tk));
                doc.image("Pairwise category differences of '" + fname + "'", base + "_tukey.svg");
            }
        } else if (const auto* cont = std::get_if<ContinuousFinding>(&finding)) {
            const std::vector<double> x = bundle.features.column(feature);
            const std::vector<double> y = bundle.shap_values.column(feature);
            ScatterSeries series{"samples", {}, {}};
            for (std::size_t r = 0; r < x.size(); ++r) series.points.emplace_back(x[r], y[r]);
            if (cont->selection.best) {
                const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
                series.curve = curve_grid(*cont->selection.best, *lo, *hi);
                series.label = fit_family_str(cont->selection.best->family);
            }
            ScatterPayload payload{"SHAP dependence of '" + fname + "'", fname, "SHAP value", {series}};
            plots.add(base + "_fit.svg", render_scatter(payload));
            doc.image("SHAP dependence plot of '" + fname + "'", base + "_fit.svg");
        } else if (const auto* degenerate = std::get_if<DegenerateFinding>(&finding)) {
            caveats.push_back("'" + fname + "': " + degenerate->reason);
        }
    }

    // 4. Interaction analysis
    doc.section("Interaction Analysis");
    for (std::size_t i = 0; i < report.interactions.size(); ++i) {
        const std::size_t target = report.important[i];
        const std::string& tname = names[target];
        for (const InteractionFinding& finding : report.interactions[i]) {
            const std::string& pname = names[finding.partner];
            const std::string base =
                "interaction_analysis/" + rank_slug(i, tname) + "__" + slugify(pname);

            std::vector<std::string> lines;
            for (const Sentence& s : sentences_for_interaction(finding, names, bundle.label_name, config)) {
                lines.push_back(s.rendered);
            }
            doc.paragraph("Target '" + tname + "' with interaction feature '" + pname + "' (" +
                          interaction_case_str(finding.analysis_case) + ")");
            doc.bullets(lines);
            for (const std::string& note : finding.notes) {
                caveats.push_back("'" + tname + "' x '" + pname + "': " + note);
            }
            if (finding.skipped) continue;

            const std::vector<double> tvals = bundle.features.column(target);
            const std::vector<double> shap = bundle.shap_values.column(target);

            if (finding.analysis_case == InteractionCase::cat_cat ||
                finding.analysis_case == InteractionCase::cat_cont) {
                // grouped box plot: target categories x partner groups
                BoxPayload box{"SHAP values of '" + tname + "' grouped by '" + pname + "'", tname,
                               "SHAP value", {}, {}};
                for (const PartnerGroup& g : finding.partition) {
                    box.group_labels.push_back("'" + pname + "' " + g.label);
                }
                const CategoryGroups cats = group_by_value(tvals);
                for (std::size_t c = 0; c < cats.values.size(); ++c) {
                    BoxCategory cat{format_number(cats.values[c]), {}};
                    for (const PartnerGroup& g : finding.partition) {
                        std::vector<double> values;
                        for (std::size_t idx : g.members) {
                            if (tvals[idx] == cats.values[c]) values.push_back(shap[idx]);
                        }
                        cat.samples.push_back(std::move(values));
                    }
                    box.categories.push_back(std::move(cat));
                }
                plots.add(base + "_box.svg", render_box(box));
                doc.image("Grouped SHAP distribution of '" + tname + "' by '" + pname + "'",
                          base + "_box.svg");

                for (const GroupSubresult& sub : finding.subresults) {
                    if (sub.skipped || !sub.categorical || !sub.categorical->posthoc) continue;
                    TukeyPayload tk{"Tukey HSD for '" + tname + "' where '" + pname + "' is " + sub.group_label,
                                    "mean SHAP difference", {}};
                    const std::size_t n_groups = sub.categorical->posthoc->empty()
                                                     ? 0
                                                     : sub.categorical->per_category.size();
                    for (const TestResult& pair : *sub.categorical->posthoc) {
                        const double q_crit =
                            pair.df && pair.stderr_diff > 0.0
                                ? studentized_range_quantile(1.0 - config.p_interaction,
                                                             static_cast<double>(n_groups), *pair.df)
                                : 0.0;
                        tk.intervals.push_back(TukeyInterval{pair.group_labels->first + " - " +
                                                                 pair.group_labels->second,
                                                             pair.mean_diff, q_crit * pair.stderr_diff,
                                                             pair.p_value < config.p_interaction});
                    }
                    plots.add(base + "_tukey_" + slugify(sub.group_label) + ".svg", render_tukey(tk));
                    doc.image("Tukey HSD where '" + pname + "' is " + sub.group_label,
                              base + "_tukey_" + slugify(sub.group_label) + ".svg");
                }
            } else {
                // per-group scatter with refitted curves
                ScatterPayload payload{"SHAP dependence of '" + tname + "' split by '" + pname + "'", tname,
                                       "SHAP value", {}};
                const auto [lo, hi] = std::minmax_element(tvals.begin(), tvals.end());
                for (std::size_t g = 0; g < finding.partition.size(); ++g) {
                    const PartnerGroup& group = finding.partition[g];
                    ScatterSeries series{"'" + pname + "' " + group.label, {}, {}};
                    for (std::size_t idx : group.members) {
                        series.points.emplace_back(tvals[idx], shap[idx]);
                    }
                    const GroupSubresult& sub = finding.subresults[g];
                    if (sub.fit && sub.fit->converged) {
                        series.curve = curve_grid(*sub.fit, *lo, *hi);
                    }
                    payload.series.push_back(std::move(series));
                }
                plots.add(base + "_fit.svg", render_scatter(payload));
                doc.image("Per-group fits of '" + tname + "' split by '" + pname + "'", base + "_fit.svg");
            }
        }
    }

    // 5. Caveats
    doc.section("Caveats");
    if (caveats.empty()) {
        doc.paragraph("No degenerate tests, fallback rules, or skipped analyses occurred in this run.");
    } else {
        doc.bullets(caveats);
    }

    const std::string title = "SHAP Interpretation Report: " + bundle.label_name;
    outputs.write("report.md", "report", doc.markdown(title));
    if (config.emit_html) {
        outputs.write("report.html", "report", doc.html(title, plots.svg_bytes));
    }
    outputs.finalize_manifest(config);
}

RunSummary run_pipeline(const PipelineOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    if (options.verbose) std::cerr << "[clesh] loading " << options.features_path << "\n";
    const DatasetBundle bundle = load_dataset(options.features_path, options.shap_path, options.label_name);

    if (options.dry_run) {
        AnalysisReport report;
        report.ranking = rank_features(bundle);
        report.cuts = adjacent_significance_cuts(bundle, report.ranking, options.config);
        choose_num_important(report.cuts, report.ranking, options.config, bundle.n_features());
        RunSummary summary;
        summary.n_important = report.cuts.chosen_k;
        summary.output_dir = options.config.output_dir;
        summary.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return summary;
    }

    if (options.verbose) std::cerr << "[clesh] analyzing " << bundle.n_features() << " features\n";
    AnalysisReport report = analyze_bundle(bundle, options.config, options.threads);
    if (options.verbose) {
        std::cerr << "[clesh] chose " << report.summary.n_important << " important features; writing outputs to "
                  << options.config.output_dir << "\n";
    }
    write_outputs(report, bundle, options.config);
    report.summary.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report.summary;
}

} // namespace clesh
