// SPDX-License-Identifier: Apache-2.0
#pragma once

// Minimal static SVG plotting: enough for histograms, line charts with
// shaded bands, and labelled scatter plots. Output is deterministic for
// identical inputs; an optional comment stamp is the only place a timestamp
// ever appears.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace fairaudit::svg {

inline std::string num(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string label_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

// Evenly spaced "nice" tick positions covering [lo, hi].
inline std::vector<double> ticks(double lo, double hi, int target = 5) {
  if (!(hi > lo)) return {lo};
  double raw = (hi - lo) / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  std::vector<double> out;
  double t = std::ceil(lo / step) * step;
  for (; t <= hi + step * 1e-9; t += step) out.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  return out;
}

class Plot {
 public:
  Plot(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

  void set_domain(double x_lo, double x_hi, double y_lo, double y_hi) {
    x_lo_ = x_lo;
    x_hi_ = x_hi > x_lo ? x_hi : x_lo + 1.0;
    y_lo_ = y_lo;
    y_hi_ = y_hi > y_lo ? y_hi : y_lo + 1.0;
  }

  double px(double x) const { return kLeft + (x - x_lo_) / (x_hi_ - x_lo_) * plot_w(); }
  double py(double y) const { return kTop + plot_h() - (y - y_lo_) / (y_hi_ - y_lo_) * plot_h(); }

  void add_rect(double x0, double y0, double x1, double y1, const std::string& fill) {
    body_ += "<rect x=\"" + num(px(x0)) + "\" y=\"" + num(py(y1)) + "\" width=\"" +
             num(px(x1) - px(x0)) + "\" height=\"" + num(py(y0) - py(y1)) + "\" fill=\"" + fill +
             "\" stroke=\"#333\" stroke-width=\"0.5\"/>\n";
  }

  void add_polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                    double width = 1.5, const std::string& dash = "") {
    if (pts.empty()) return;
    std::string d;
    for (const auto& [x, y] : pts) d += num(px(x)) + "," + num(py(y)) + " ";
    body_ += "<polyline points=\"" + d + "\" fill=\"none\" stroke=\"" + stroke +
             "\" stroke-width=\"" + num(width, 1) + "\"" +
             (dash.empty() ? "" : " stroke-dasharray=\"" + dash + "\"") + "/>\n";
  }

  // Filled region between a lower and an upper curve sharing x positions.
  void add_band(const std::vector<double>& xs, const std::vector<double>& lo,
                const std::vector<double>& hi, const std::string& fill) {
    std::string d;
    for (std::size_t i = 0; i < xs.size(); ++i) d += num(px(xs[i])) + "," + num(py(hi[i])) + " ";
    for (std::size_t i = xs.size(); i-- > 0;) d += num(px(xs[i])) + "," + num(py(lo[i])) + " ";
    body_ += "<polygon points=\"" + d + "\" fill=\"" + fill + "\" stroke=\"none\"/>\n";
  }

  void add_point(double x, double y, const std::string& fill, double r = 2.5) {
    body_ += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"" + num(r, 1) +
             "\" fill=\"" + fill + "\"/>\n";
  }

  void add_text(double x, double y, const std::string& text, int size = 9,
                const std::string& anchor = "start") {
    body_ += "<text x=\"" + num(px(x)) + "\" y=\"" + num(py(y)) + "\" font-size=\"" +
             std::to_string(size) + "\" text-anchor=\"" + anchor +
             "\" font-family=\"sans-serif\">" + escape(text) + "</text>\n";
  }

  void add_legend(const std::vector<std::pair<std::string, std::string>>& entries) {
    double y = kTop + 12;
    for (const auto& [name, color] : entries) {
      body_ += "<rect x=\"" + num(kLeft + plot_w() - 130) + "\" y=\"" + num(y - 8) +
               "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
      body_ += "<text x=\"" + num(kLeft + plot_w() - 115) + "\" y=\"" + num(y) +
               "\" font-size=\"9\" font-family=\"sans-serif\">" + escape(name) + "</text>\n";
      y += 14;
    }
  }

  std::string render(const std::string& stamp = "") const {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
           "\" height=\"" + std::to_string(kHeight) + "\" viewBox=\"0 0 " +
           std::to_string(kWidth) + " " + std::to_string(kHeight) + "\">\n";
    if (!stamp.empty()) out += "<!-- " + stamp + " -->\n";
    out += "<rect width=\"" + std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
           "\" fill=\"white\"/>\n";

    // frame and ticks
    out += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w()) +
           "\" height=\"" + num(plot_h()) + "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (double t : ticks(x_lo_, x_hi_)) {
      double x = px(t);
      out += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop + plot_h()) + "\" x2=\"" + num(x) +
             "\" y2=\"" + num(kTop + plot_h() + 4) + "\" stroke=\"#333\"/>\n";
      out += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + plot_h() + 16) +
             "\" font-size=\"9\" text-anchor=\"middle\" font-family=\"sans-serif\">" +
             label_num(t) + "</text>\n";
    }
    for (double t : ticks(y_lo_, y_hi_)) {
      double y = py(t);
      out += "<line x1=\"" + num(kLeft - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) +
             "\" y2=\"" + num(y) + "\" stroke=\"#333\"/>\n";
      out += "<text x=\"" + num(kLeft - 7) + "\" y=\"" + num(y + 3) +
             "\" font-size=\"9\" text-anchor=\"end\" font-family=\"sans-serif\">" + label_num(t) +
             "</text>\n";
    }

    out += "<text x=\"" + num(kWidth / 2.0) +
           "\" y=\"16\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">" +
           escape(title_) + "</text>\n";
    out += "<text x=\"" + num(kLeft + plot_w() / 2.0) + "\" y=\"" + num(kHeight - 8.0) +
           "\" font-size=\"10\" text-anchor=\"middle\" font-family=\"sans-serif\">" +
           escape(x_label_) + "</text>\n";
    out += "<text x=\"14\" y=\"" + num(kTop + plot_h() / 2.0) +
           "\" font-size=\"10\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 14 " +
           num(kTop + plot_h() / 2.0) + ")\">" + escape(y_label_) + "</text>\n";

    out += body_;
    out += "</svg>\n";
    return out;
  }

 private:
  static constexpr int kWidth = 560;
  static constexpr int kHeight = 400;
  static constexpr double kLeft = 62, kTop = 30, kRight = 20, kBottom = 46;

  double plot_w() const { return kWidth - kLeft - kRight; }
  double plot_h() const { return kHeight - kTop - kBottom; }

  std::string title_, x_label_, y_label_;
  double x_lo_ = 0, x_hi_ = 1, y_lo_ = 0, y_hi_ = 1;
  std::string body_;
};

}  // namespace fairaudit::svg
