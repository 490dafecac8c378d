#include "clesh/config.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace clesh {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::size_t parse_positive_size(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: value for '" + key + "' is not an integer: " + value);
    }
    if (pos != value.size() || v <= 0) {
        throw std::invalid_argument("config: '" + key + "' must be a positive integer, got " + value);
    }
    return static_cast<std::size_t>(v);
}

double parse_significance(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: value for '" + key + "' is not a number: " + value);
    }
    if (pos != value.size() || !(v > 0.0 && v < 1.0)) {
        throw std::invalid_argument("config: '" + key + "' must lie strictly in (0,1), got " + value);
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw std::invalid_argument("config: '" + key + "' must be a boolean, got " + value);
}

} // namespace

void Config::validate() const {
    if (candidate_num_min == 0 || candidate_num_max == 0) {
        throw std::invalid_argument("config: candidate_num bounds must be positive");
    }
    if (candidate_num_min > candidate_num_max) {
        throw std::invalid_argument("config: candidate_num_min (" + std::to_string(candidate_num_min) +
                                    ") exceeds candidate_num_max (" + std::to_string(candidate_num_max) + ")");
    }
    for (double p : {p_feature_selection, p_univariate, p_interaction}) {
        if (!(p > 0.0 && p < 1.0)) {
            throw std::invalid_argument("config: significance levels must lie strictly in (0,1)");
        }
    }
    if (cont_bound == 0) throw std::invalid_argument("config: cont_bound must be positive");
    if (manual_num && *manual_num == 0) throw std::invalid_argument("config: manual_num must be positive");
    if (interaction_top_k == 0) throw std::invalid_argument("config: interaction_top_k must be positive");
    if (output_dir.empty()) throw std::invalid_argument("config: output_dir must not be empty");
}

void apply_config_entry(Config& config, const std::string& key, const std::string& value) {
    if (key == "candidate_num_min") config.candidate_num_min = parse_positive_size(key, value);
    else if (key == "candidate_num_max") config.candidate_num_max = parse_positive_size(key, value);
    else if (key == "p_feature_selection") config.p_feature_selection = parse_significance(key, value);
    else if (key == "cont_bound") config.cont_bound = parse_positive_size(key, value);
    else if (key == "manual_num") config.manual_num = parse_positive_size(key, value);
    else if (key == "p_univariate") config.p_univariate = parse_significance(key, value);
    else if (key == "p_interaction") config.p_interaction = parse_significance(key, value);
    else if (key == "output_dir") config.output_dir = value;
    else if (key == "rng_seed") config.rng_seed = static_cast<std::uint64_t>(std::stoull(value));
    else if (key == "strict_paired_nonparametric") config.strict_paired_nonparametric = parse_bool(key, value);
    else if (key == "interaction_top_k") config.interaction_top_k = parse_positive_size(key, value);
    else if (key == "emit_html") config.emit_html = parse_bool(key, value);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

Config load_config(const std::optional<std::string>& config_path,
                   const std::map<std::string, std::string>& overrides) {
    Config config;
    if (config_path) {
        std::ifstream in(*config_path);
        if (!in) throw std::invalid_argument("config: cannot open file " + *config_path);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const std::string stripped = trim(line);
            if (stripped.empty() || stripped[0] == '#') continue;
            const std::size_t eq = stripped.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                            " is not a 'key = value' assignment: " + stripped);
            }
            apply_config_entry(config, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
        }
    }
    for (const auto& [key, value] : overrides) {
        apply_config_entry(config, key, value);
    }
    config.validate();
    return config;
}

} // namespace clesh
