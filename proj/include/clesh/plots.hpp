#pragma once

// Chart payloads and their SVG renderers. Payloads are plain data so the
// analysis stages stay independent of rendering.

#include <optional>
#include <string>
#include <vector>

namespace clesh {

struct ScatterSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
    std::vector<std::pair<double, double>> curve; // optional fitted overlay
};

struct ScatterPayload {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<ScatterSeries> series;
};

struct BoxCategory {
    std::string label;
    // One sample set per partner group (a single entry for plain box plots).
    std::vector<std::vector<double>> samples;
};

struct BoxPayload {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<std::string> group_labels; // legend; empty for ungrouped plots
    std::vector<BoxCategory> categories;
};

struct TukeyInterval {
    std::string label;
    double center = 0.0;
    double half_width = 0.0;
    bool significant = false;
};

struct TukeyPayload {
    std::string title;
    std::string x_label;
    std::vector<TukeyInterval> intervals;
};

struct SelectionPayload {
    std::string title;
    std::vector<double> mean_abs_by_rank;
    std::vector<std::size_t> cut_positions;
    std::size_t chosen_k = 0;
    std::size_t window_min = 0;
    std::size_t window_max = 0;
};

std::string render_scatter(const ScatterPayload& payload);
std::string render_box(const BoxPayload& payload);
std::string render_tukey(const TukeyPayload& payload);
std::string render_selection(const SelectionPayload& payload);

// Series color palette shared by all renderers.
const std::string& series_color(std::size_t index);

} // namespace clesh
