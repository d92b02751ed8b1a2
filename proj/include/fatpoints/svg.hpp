#pragma once

/**
 * @file svg.hpp
 * @brief Static SVG drawings of rational point/line configurations.
 *
 * Points are drawn in the affine chart z = 1. Points with z = 0 sit on a
 * band along the border, in the direction (x, y). Output depends only on
 * the input, so identical configurations give identical bytes.
 */

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fatpoints/geometry.hpp"

namespace fatpoints {

struct PlotOptions {
  int size = 480;
  int margin = 40;
  /// Labels per point; defaults to P1, P2, ...
  std::vector<std::string> labels;
};

namespace detail {

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v == 0.0 ? 0.0 : v);  // no "-0.00"
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Clips a x + b y + c = 0 to the box; returns the segment endpoints.
inline std::optional<std::pair<std::pair<double, double>, std::pair<double, double>>> clip_line(
    double a, double b, double c, double x0, double x1, double y0, double y1) {
  std::vector<std::pair<double, double>> hits;
  auto add = [&](double x, double y) {
    const double eps = 1e-9 * (1 + std::abs(x1 - x0) + std::abs(y1 - y0));
    if (x < x0 - eps || x > x1 + eps || y < y0 - eps || y > y1 + eps) return;
    for (const auto& h : hits) {
      if (std::abs(h.first - x) <= eps && std::abs(h.second - y) <= eps) return;
    }
    hits.emplace_back(x, y);
  };
  if (b != 0) {
    add(x0, -(a * x0 + c) / b);
    add(x1, -(a * x1 + c) / b);
  }
  if (a != 0) {
    add(-(b * y0 + c) / a, y0);
    add(-(b * y1 + c) / a, y1);
  }
  if (hits.size() < 2) return std::nullopt;
  return std::make_pair(hits[0], hits[1]);
}

}  // namespace detail

inline std::string plot_svg(const std::vector<ProjectivePoint>& points, const std::vector<Line>& lines = {},
                            const PlotOptions& opt = {}) {
  for (const auto& p : points) {
    if (!p.field().is_rational()) throw FieldMismatch("plot: only rational configurations can be drawn");
  }
  for (const auto& l : lines) {
    if (!l.field().is_rational()) throw FieldMismatch("plot: only rational lines can be drawn");
  }
  const double size = opt.size, margin = opt.margin;
  const double band = margin / 2;

  // Affine bounding box, padded, square, at least 2 units wide.
  std::vector<std::pair<double, double>> affine;
  for (const auto& p : points) {
    if (!p[2].is_zero()) affine.emplace_back(p[0].as_rational().get_d(), p[1].as_rational().get_d());
  }
  double cx = 0, cy = 0, half = 1;
  if (!affine.empty()) {
    double xmin = affine[0].first, xmax = xmin, ymin = affine[0].second, ymax = ymin;
    for (const auto& [x, y] : affine) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
    cx = (xmin + xmax) / 2;
    cy = (ymin + ymax) / 2;
    half = std::max({(xmax - xmin) / 2, (ymax - ymin) / 2, 1.0}) * 1.15;
  }
  const double x0 = cx - half, x1 = cx + half, y0 = cy - half, y1 = cy + half;
  const double inner = size - 2 * margin;
  auto sx = [&](double x) { return margin + (x - x0) / (x1 - x0) * inner; };
  auto sy = [&](double y) { return size - margin - (y - y0) / (y1 - y0) * inner; };

  std::string out;
  const std::string s = std::to_string(opt.size);
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + s + "\" height=\"" + s + "\" viewBox=\"0 0 " + s +
         " " + s + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + s + "\" height=\"" + s + "\" fill=\"white\"/>\n";
  out += "<rect x=\"" + detail::fmt2(band) + "\" y=\"" + detail::fmt2(band) + "\" width=\"" +
         detail::fmt2(size - 2 * band) + "\" height=\"" + detail::fmt2(size - 2 * band) +
         "\" fill=\"none\" stroke=\"#cccccc\" stroke-dasharray=\"4 4\"/>\n";

  for (const auto& l : lines) {
    const double a = l.coeffs()[0].as_rational().get_d(), b = l.coeffs()[1].as_rational().get_d(),
                 c = l.coeffs()[2].as_rational().get_d();
    if (a == 0 && b == 0) continue;  // the line at infinity has no affine trace
    if (auto seg = detail::clip_line(a, b, c, x0, x1, y0, y1)) {
      out += "<line x1=\"" + detail::fmt2(sx(seg->first.first)) + "\" y1=\"" + detail::fmt2(sy(seg->first.second)) +
             "\" x2=\"" + detail::fmt2(sx(seg->second.first)) + "\" y2=\"" + detail::fmt2(sy(seg->second.second)) +
             "\" stroke=\"#1f4e79\" stroke-width=\"1.5\"/>\n";
    }
  }

  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    double px, py;
    if (!p[2].is_zero()) {
      px = sx(p[0].as_rational().get_d());
      py = sy(p[1].as_rational().get_d());
    } else {
      // Direction (x, y) pushed out to the border band.
      const double dx = p[0].as_rational().get_d(), dy = p[1].as_rational().get_d();
      const double scale = (size / 2 - band) / std::max(std::abs(dx), std::abs(dy));
      px = size / 2 + dx * scale;
      py = size / 2 - dy * scale;
    }
    const std::string label = i < opt.labels.size() ? opt.labels[i] : "P" + std::to_string(i + 1);
    out += "<circle cx=\"" + detail::fmt2(px) + "\" cy=\"" + detail::fmt2(py) + "\" r=\"4\" fill=\"#c00000\"/>\n";
    out += "<text x=\"" + detail::fmt2(px + 6) + "\" y=\"" + detail::fmt2(py - 6) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + detail::xml_escape(label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace fatpoints
