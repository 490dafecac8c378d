#pragma once

// Minimal deterministic SVG writer: fixed number formatting, no timestamps,
// identical payloads produce byte-identical documents.

#include <string>
#include <vector>

namespace clesh {

std::string svg_num(double v);
std::string svg_escape(const std::string& text);

class SvgDocument {
  public:
    SvgDocument(double width, double height);

    void open_group(const std::string& css_class);
    void close_group();

    void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width,
              const std::string& dash = "");
    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "", double stroke_width = 0.0, double opacity = 1.0);
    void circle(double cx, double cy, double r, const std::string& fill, double opacity = 1.0);
    // Connected curve through the points, emitted as a single <path>.
    void path(const std::vector<std::pair<double, double>>& points, const std::string& stroke, double width,
              const std::string& dash = "");
    enum class Anchor { start, middle, end };
    void text(double x, double y, const std::string& content, double size, Anchor anchor,
              const std::string& fill = "#333333", double rotate_deg = 0.0);

    double width() const { return width_; }
    double height() const { return height_; }

    std::string str() const;

  private:
    double width_;
    double height_;
    std::string body_;
};

// Maps data coordinates onto a pixel viewport with padded margins.
class AxisScale {
  public:
    AxisScale(double data_min, double data_max, double pixel_lo, double pixel_hi);
    double operator()(double v) const;
    double data_min() const { return lo_; }
    double data_max() const { return hi_; }
    // Tick positions via the usual nice-step rule.
    std::vector<double> ticks(int target = 5) const;

  private:
    double lo_, hi_, plo_, phi_;
};

} // namespace clesh
