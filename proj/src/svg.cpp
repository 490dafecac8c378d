#include "clesh/svg.hpp"

#include <cmath>
#include <cstdio>

namespace clesh {

std::string svg_num(double v) {
    if (!std::isfinite(v)) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    // trim trailing zeros (and a dangling dot) for compactness
    std::string s(buf);
    const std::size_t dot = s.find('.');
    if (dot != std::string::npos) {
        std::size_t last = s.find_last_not_of('0');
        if (last == dot) --last;
        s.erase(last + 1);
    }
    if (s == "-0") s = "0";
    return s;
}

std::string svg_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

SvgDocument::SvgDocument(double width, double height) : width_(width), height_(height) {}

void SvgDocument::open_group(const std::string& css_class) {
    body_ += "<g class=\"" + css_class + "\">\n";
}

void SvgDocument::close_group() { body_ += "</g>\n"; }

void SvgDocument::line(double x1, double y1, double x2, double y2, const std::string& stroke, double width,
                       const std::string& dash) {
    body_ += "<line x1=\"" + svg_num(x1) + "\" y1=\"" + svg_num(y1) + "\" x2=\"" + svg_num(x2) + "\" y2=\"" +
             svg_num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + svg_num(width) + "\"";
    if (!dash.empty()) body_ += " stroke-dasharray=\"" + dash + "\"";
    body_ += "/>\n";
}

void SvgDocument::rect(double x, double y, double w, double h, const std::string& fill,
                       const std::string& stroke, double stroke_width, double opacity) {
    body_ += "<rect x=\"" + svg_num(x) + "\" y=\"" + svg_num(y) + "\" width=\"" + svg_num(w) + "\" height=\"" +
             svg_num(h) + "\" fill=\"" + fill + "\"";
    if (!stroke.empty()) {
        body_ += " stroke=\"" + stroke + "\" stroke-width=\"" + svg_num(stroke_width) + "\"";
    }
    if (opacity != 1.0) body_ += " fill-opacity=\"" + svg_num(opacity) + "\"";
    body_ += "/>\n";
}

void SvgDocument::circle(double cx, double cy, double r, const std::string& fill, double opacity) {
    body_ += "<circle cx=\"" + svg_num(cx) + "\" cy=\"" + svg_num(cy) + "\" r=\"" + svg_num(r) + "\" fill=\"" +
             fill + "\"";
    if (opacity != 1.0) body_ += " fill-opacity=\"" + svg_num(opacity) + "\"";
    body_ += "/>\n";
}

void SvgDocument::path(const std::vector<std::pair<double, double>>& points, const std::string& stroke,
                       double width, const std::string& dash) {
    if (points.empty()) return;
    std::string d = "M " + svg_num(points[0].first) + " " + svg_num(points[0].second);
    for (std::size_t i = 1; i < points.size(); ++i) {
        d += " L " + svg_num(points[i].first) + " " + svg_num(points[i].second);
    }
    body_ += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + svg_num(width) +
             "\"";
    if (!dash.empty()) body_ += " stroke-dasharray=\"" + dash + "\"";
    body_ += "/>\n";
}

void SvgDocument::text(double x, double y, const std::string& content, double size, Anchor anchor,
                       const std::string& fill, double rotate_deg) {
    const char* anchor_str = anchor == Anchor::start ? "start" : (anchor == Anchor::middle ? "middle" : "end");
    body_ += "<text x=\"" + svg_num(x) + "\" y=\"" + svg_num(y) + "\" font-size=\"" + svg_num(size) +
             "\" font-family=\"Helvetica,Arial,sans-serif\" text-anchor=\"" + anchor_str + "\" fill=\"" + fill +
             "\"";
    if (rotate_deg != 0.0) {
        body_ += " transform=\"rotate(" + svg_num(rotate_deg) + " " + svg_num(x) + " " + svg_num(y) + ")\"";
    }
    body_ += ">" + svg_escape(content) + "</text>\n";
}

std::string SvgDocument::str() const {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_num(width_) + "\" height=\"" +
           svg_num(height_) + "\" viewBox=\"0 0 " + svg_num(width_) + " " + svg_num(height_) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + svg_num(width_) + "\" height=\"" + svg_num(height_) +
           "\" fill=\"#ffffff\"/>\n";
    out += body_;
    out += "</svg>\n";
    return out;
}

AxisScale::AxisScale(double data_min, double data_max, double pixel_lo, double pixel_hi)
    : lo_(data_min), hi_(data_max), plo_(pixel_lo), phi_(pixel_hi) {
    if (!(hi_ > lo_)) {
        // degenerate span: widen symmetrically so single values render mid-axis
        const double pad = (lo_ == 0.0) ? 1.0 : std::fabs(lo_) * 0.5;
        lo_ -= pad;
        hi_ += pad;
    } else {
        const double pad = (hi_ - lo_) * 0.05;
        lo_ -= pad;
        hi_ += pad;
    }
}

double AxisScale::operator()(double v) const {
    return plo_ + (v - lo_) / (hi_ - lo_) * (phi_ - plo_);
}

std::vector<double> AxisScale::ticks(int target) const {
    const double span = hi_ - lo_;
    const double raw_step = span / std::max(1, target);
    const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
    double step = mag;
    for (double mult : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (mag * mult >= raw_step) {
            step = mag * mult;
            break;
        }
    }
    std::vector<double> out;
    double first = std::ceil(lo_ / step) * step;
    for (double v = first; v <= hi_ + step * 1e-9; v += step) {
        out.push_back(std::fabs(v) < step * 1e-9 ? 0.0 : v);
    }
    return out;
}

} // namespace clesh
