#pragma once

// Plain-language sentence templates for every finding type. Templates are
// versioned by id so golden tests stay stable when wording changes.

#include "clesh/interaction.hpp"
#include "clesh/selection.hpp"
#include "clesh/univariate.hpp"

#include <string>
#include <vector>

namespace clesh {

enum class TemplateId {
    selection_summary,
    selection_fallback,
    selection_manual,
    category_pushes,
    category_no_effect,
    category_small,
    between_two_groups,
    between_two_groups_ns,
    omnibus_significant,
    omnibus_not_significant,
    tukey_pair_significant,
    continuous_best_fit,
    continuous_none_significant,
    feature_degenerate,
    interaction_group_difference,
    interaction_no_difference,
    interaction_margin_significant,
    interaction_margin_not_significant,
    interaction_single_group,
    interaction_skipped,
};

const char* template_id_str(TemplateId id);

struct Sentence {
    TemplateId template_id;
    std::string rendered;
    std::string finding_ref;
};

// Numeric formatting shared by sentences and the report: three significant
// digits; p-values below 0.001 render as "p < 0.001".
std::string format_number(double v);
std::string format_signed(double v);
std::string format_p(double p);

std::vector<Sentence> sentences_for_selection(const CutAnalysis& cuts, std::size_t n_features,
                                              const Config& config, const std::string& label_name);

std::vector<Sentence> sentences_for_univariate(const UnivariateFinding& finding,
                                               const std::vector<std::string>& feature_names,
                                               const std::string& label_name, const Config& config);

std::vector<Sentence> sentences_for_interaction(const InteractionFinding& finding,
                                                const std::vector<std::string>& feature_names,
                                                const std::string& label_name, const Config& config);

} // namespace clesh
