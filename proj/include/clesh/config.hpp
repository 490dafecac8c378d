#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace clesh {

// All pipeline hyperparameters plus output controls. Defaults follow the
// documented analysis procedure; every key is also exposed as a CLI flag.
struct Config {
    std::size_t candidate_num_min = 10;
    std::size_t candidate_num_max = 20;
    double p_feature_selection = 0.05;
    std::size_t cont_bound = 10;
    std::optional<std::size_t> manual_num;
    double p_univariate = 0.05;
    double p_interaction = 0.05;
    std::string output_dir = "clesh_result";
    std::uint64_t rng_seed = 0;
    // Substitute the signed-rank test for the rank-sum test on paired
    // comparisons (feature-selection cuts and interaction margin tests).
    bool strict_paired_nonparametric = false;
    std::size_t interaction_top_k = 1;
    bool emit_html = false;

    // Throws std::invalid_argument when any invariant is violated.
    void validate() const;
};

// Loads a flat "key = value" file (optional), then applies overrides on top;
// overrides win over file values, file values win over defaults.
// Unknown keys and out-of-range values raise std::invalid_argument.
Config load_config(const std::optional<std::string>& config_path,
                   const std::map<std::string, std::string>& overrides);

// Parses a single "key = value" assignment into an existing Config.
void apply_config_entry(Config& config, const std::string& key, const std::string& value);

} // namespace clesh
