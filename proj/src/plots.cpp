#include "clesh/plots.hpp"

#include "clesh/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace clesh {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 56.0;

const std::array<std::string, 8> kPalette = {"#4878cf", "#ee854a", "#6acc65", "#d65f5f",
                                             "#956cb4", "#8c613c", "#dc7ec0", "#797979"};

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

void draw_frame(SvgDocument& doc, const AxisScale& xs, const AxisScale& ys, const std::string& title,
                const std::string& x_label, const std::string& y_label) {
    const double left = kMarginLeft, right = kWidth - kMarginRight;
    const double top = kMarginTop, bottom = kHeight - kMarginBottom;
    doc.line(left, bottom, right, bottom, "#333333", 1.0);
    doc.line(left, top, left, bottom, "#333333", 1.0);
    for (double t : xs.ticks()) {
        const double px = xs(t);
        doc.line(px, bottom, px, bottom + 4, "#333333", 1.0);
        doc.text(px, bottom + 16, tick_label(t), 10, SvgDocument::Anchor::middle);
    }
    for (double t : ys.ticks()) {
        const double py = ys(t);
        doc.line(left - 4, py, left, py, "#333333", 1.0);
        doc.text(left - 6, py + 3, tick_label(t), 10, SvgDocument::Anchor::end);
        doc.line(left, py, right, py, "#eeeeee", 0.5);
    }
    doc.text(kWidth / 2, 20, title, 13, SvgDocument::Anchor::middle, "#111111");
    doc.text(kWidth / 2, kHeight - 12, x_label, 11, SvgDocument::Anchor::middle);
    doc.text(16, kHeight / 2, y_label, 11, SvgDocument::Anchor::middle, "#333333", -90.0);
}

void draw_legend(SvgDocument& doc, const std::vector<std::string>& labels) {
    double x = kMarginLeft + 8;
    const double y = kMarginTop + 6;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        doc.rect(x, y - 8, 10, 10, series_color(i));
        doc.text(x + 14, y, labels[i], 10, SvgDocument::Anchor::start);
        x += 24 + 6.0 * static_cast<double>(labels[i].size());
    }
}

struct BoxStats {
    double q1, median, q3, whisker_lo, whisker_hi;
    std::vector<double> outliers;
};

BoxStats box_stats(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(v.size() - 1);
        const std::size_t i = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(i);
        return (i + 1 < v.size()) ? v[i] * (1.0 - frac) + v[i + 1] * frac : v[i];
    };
    BoxStats s{};
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    const double iqr = s.q3 - s.q1;
    const double lo_fence = s.q1 - 1.5 * iqr;
    const double hi_fence = s.q3 + 1.5 * iqr;
    s.whisker_lo = s.q3;
    s.whisker_hi = s.q1;
    for (double x : v) {
        if (x < lo_fence || x > hi_fence) {
            s.outliers.push_back(x);
        } else {
            s.whisker_lo = std::min(s.whisker_lo, x);
            s.whisker_hi = std::max(s.whisker_hi, x);
        }
    }
    return s;
}

} // namespace

const std::string& series_color(std::size_t index) { return kPalette[index % kPalette.size()]; }

std::string render_scatter(const ScatterPayload& payload) {
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto& s : payload.series) {
        for (const auto& [x, y] : s.points) {
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
        for (const auto& [x, y] : s.curve) {
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    SvgDocument doc(kWidth, kHeight);
    const AxisScale xs(xmin, xmax, kMarginLeft, kWidth - kMarginRight);
    const AxisScale ys(ymin, ymax, kHeight - kMarginBottom, kMarginTop);
    draw_frame(doc, xs, ys, payload.title, payload.x_label, payload.y_label);

    for (std::size_t i = 0; i < payload.series.size(); ++i) {
        const auto& s = payload.series[i];
        doc.open_group("series");
        for (const auto& [x, y] : s.points) {
            doc.circle(xs(x), ys(y), 2.2, series_color(i), 0.55);
        }
        if (!s.curve.empty()) {
            std::vector<std::pair<double, double>> px;
            px.reserve(s.curve.size());
            for (const auto& [x, y] : s.curve) px.emplace_back(xs(x), ys(y));
            doc.path(px, series_color(i), 2.0);
        }
        doc.close_group();
    }
    if (payload.series.size() > 1) {
        std::vector<std::string> labels;
        for (const auto& s : payload.series) labels.push_back(s.label);
        draw_legend(doc, labels);
    }
    // zero reference for SHAP values
    if (ys.data_min() < 0.0 && ys.data_max() > 0.0) {
        doc.line(kMarginLeft, ys(0.0), kWidth - kMarginRight, ys(0.0), "#999999", 0.8, "4,3");
    }
    return doc.str();
}

std::string render_box(const BoxPayload& payload) {
    double ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto& cat : payload.categories) {
        for (const auto& sample : cat.samples) {
            for (double v : sample) {
                if (first) {
                    ymin = ymax = v;
                    first = false;
                }
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
        }
    }
    SvgDocument doc(kWidth, kHeight);
    const AxisScale ys(ymin, ymax, kHeight - kMarginBottom, kMarginTop);
    const double left = kMarginLeft, right = kWidth - kMarginRight;
    const double bottom = kHeight - kMarginBottom;

    // manual categorical x-axis
    doc.line(left, bottom, right, bottom, "#333333", 1.0);
    doc.line(left, kMarginTop, left, bottom, "#333333", 1.0);
    for (double t : ys.ticks()) {
        const double py = ys(t);
        doc.line(left - 4, py, left, py, "#333333", 1.0);
        doc.text(left - 6, py + 3, tick_label(t), 10, SvgDocument::Anchor::end);
        doc.line(left, py, right, py, "#eeeeee", 0.5);
    }
    doc.text(kWidth / 2, 20, payload.title, 13, SvgDocument::Anchor::middle, "#111111");
    doc.text(kWidth / 2, kHeight - 12, payload.x_label, 11, SvgDocument::Anchor::middle);
    doc.text(16, kHeight / 2, payload.y_label, 11, SvgDocument::Anchor::middle, "#333333", -90.0);
    if (ys.data_min() < 0.0 && ys.data_max() > 0.0) {
        doc.line(left, ys(0.0), right, ys(0.0), "#999999", 0.8, "4,3");
    }

    const std::size_t n_cat = payload.categories.size();
    const std::size_t n_grp = std::max<std::size_t>(
        1, payload.group_labels.empty() ? 1 : payload.group_labels.size());
    const double slot = (right - left) / static_cast<double>(std::max<std::size_t>(1, n_cat));
    const double box_w = std::min(40.0, slot * 0.7 / static_cast<double>(n_grp));

    for (std::size_t c = 0; c < n_cat; ++c) {
        const auto& cat = payload.categories[c];
        const double center = left + slot * (static_cast<double>(c) + 0.5);
        doc.text(center, bottom + 16, cat.label, 10, SvgDocument::Anchor::middle);
        doc.open_group("box");
        for (std::size_t g = 0; g < cat.samples.size(); ++g) {
            const auto& sample = cat.samples[g];
            const double offset = (static_cast<double>(g) - (static_cast<double>(cat.samples.size()) - 1.0) / 2.0) *
                                  (box_w + 4.0);
            const double bx = center + offset - box_w / 2.0;
            const std::string& color = series_color(g);
            if (sample.empty()) continue;
            if (sample.size() == 1) {
                doc.circle(bx + box_w / 2.0, ys(sample[0]), 2.5, color);
                continue;
            }
            const BoxStats st = box_stats(sample);
            doc.line(bx + box_w / 2.0, ys(st.whisker_lo), bx + box_w / 2.0, ys(st.q1), color, 1.0);
            doc.line(bx + box_w / 2.0, ys(st.q3), bx + box_w / 2.0, ys(st.whisker_hi), color, 1.0);
            doc.line(bx + box_w * 0.25, ys(st.whisker_lo), bx + box_w * 0.75, ys(st.whisker_lo), color, 1.0);
            doc.line(bx + box_w * 0.25, ys(st.whisker_hi), bx + box_w * 0.75, ys(st.whisker_hi), color, 1.0);
            doc.rect(bx, ys(st.q3), box_w, ys(st.q1) - ys(st.q3), color, "#333333", 0.8, 0.5);
            doc.line(bx, ys(st.median), bx + box_w, ys(st.median), "#333333", 1.5);
            for (double o : st.outliers) {
                doc.circle(bx + box_w / 2.0, ys(o), 1.8, color, 0.8);
            }
        }
        doc.close_group();
    }
    if (!payload.group_labels.empty() && payload.group_labels.size() > 1) {
        draw_legend(doc, payload.group_labels);
    }
    return doc.str();
}

std::string render_tukey(const TukeyPayload& payload) {
    double xmin = 0.0, xmax = 0.0;
    for (const auto& iv : payload.intervals) {
        xmin = std::min(xmin, iv.center - iv.half_width);
        xmax = std::max(xmax, iv.center + iv.half_width);
    }
    SvgDocument doc(kWidth, kHeight);
    const double left = kMarginLeft + 60.0;
    const AxisScale xs(xmin, xmax, left, kWidth - kMarginRight);
    const double bottom = kHeight - kMarginBottom;
    doc.line(left, bottom, kWidth - kMarginRight, bottom, "#333333", 1.0);
    for (double t : xs.ticks()) {
        const double px = xs(t);
        doc.line(px, bottom, px, bottom + 4, "#333333", 1.0);
        doc.text(px, bottom + 16, tick_label(t), 10, SvgDocument::Anchor::middle);
    }
    doc.text(kWidth / 2, 20, payload.title, 13, SvgDocument::Anchor::middle, "#111111");
    doc.text(kWidth / 2, kHeight - 12, payload.x_label, 11, SvgDocument::Anchor::middle);
    doc.line(xs(0.0), kMarginTop, xs(0.0), bottom, "#999999", 0.8, "4,3");

    const double n = static_cast<double>(payload.intervals.size());
    const double row_h = (bottom - kMarginTop) / std::max(1.0, n + 1.0);
    for (std::size_t i = 0; i < payload.intervals.size(); ++i) {
        const auto& iv = payload.intervals[i];
        const double y = kMarginTop + row_h * (static_cast<double>(i) + 1.0);
        const std::string color = iv.significant ? "#d65f5f" : "#4878cf";
        doc.open_group("interval");
        doc.line(xs(iv.center - iv.half_width), y, xs(iv.center + iv.half_width), y, color, 2.0);
        doc.line(xs(iv.center - iv.half_width), y - 4, xs(iv.center - iv.half_width), y + 4, color, 2.0);
        doc.line(xs(iv.center + iv.half_width), y - 4, xs(iv.center + iv.half_width), y + 4, color, 2.0);
        doc.circle(xs(iv.center), y, 3.0, color);
        doc.text(left - 8, y + 3, iv.label, 10, SvgDocument::Anchor::end);
        doc.close_group();
    }
    return doc.str();
}

std::string render_selection(const SelectionPayload& payload) {
    const std::size_t n = payload.mean_abs_by_rank.size();
    double ymax = 0.0;
    for (double v : payload.mean_abs_by_rank) ymax = std::max(ymax, v);
    SvgDocument doc(kWidth, kHeight);
    const AxisScale xs(1.0, static_cast<double>(std::max<std::size_t>(n, 2)), kMarginLeft,
                       kWidth - kMarginRight);
    const AxisScale ys(0.0, ymax > 0.0 ? ymax : 1.0, kHeight - kMarginBottom, kMarginTop);
    draw_frame(doc, xs, ys, payload.title, "feature rank", "mean |SHAP|");

    // shaded candidate window
    if (payload.window_min >= 1 && payload.window_max >= payload.window_min) {
        const double x0 = xs(static_cast<double>(payload.window_min));
        const double x1 = xs(static_cast<double>(std::min(payload.window_max, n)));
        doc.rect(x0, kMarginTop, std::max(1.0, x1 - x0), kHeight - kMarginBottom - kMarginTop, "#6acc65", "",
                 0.0, 0.12);
    }
    for (std::size_t cut : payload.cut_positions) {
        const double px = xs(static_cast<double>(cut) + 0.5);
        doc.line(px, kMarginTop, px, kHeight - kMarginBottom, "#ee854a", 1.0, "5,3");
    }
    if (payload.chosen_k >= 1) {
        const double px = xs(static_cast<double>(payload.chosen_k) + 0.5);
        doc.line(px, kMarginTop, px, kHeight - kMarginBottom, "#d65f5f", 2.0);
    }
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < n; ++i) {
        pts.emplace_back(xs(static_cast<double>(i + 1)), ys(payload.mean_abs_by_rank[i]));
    }
    doc.path(pts, "#4878cf", 1.5);
    for (const auto& [px, py] : pts) doc.circle(px, py, 2.5, "#4878cf");
    return doc.str();
}

} // namespace clesh
