/**
 * @file report.hpp
 * @brief CSV and SVG renderings of classification and sweep results.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "robpareto/core.hpp"
#include "robpareto/efficiency.hpp"
#include "robpareto/scalarize.hpp"
#include "robpareto/solve.hpp"

namespace robpareto {

/// Quotes a CSV cell when it holds a comma, quote or line break.
inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += csv_cell(cells[i]);
  }
  return out + "\n";
}

/// Dominator summary for the false labels, e.g. "hull=1;objectivewise=1".
inline std::string dominator_cell(const CandidateReport& r) {
  std::string out;
  auto add = [&](const char* key, const std::optional<Dominator>& d) {
    if (!d) return;
    if (!out.empty()) out += ';';
    out += key;
    out += '=';
    out += d->candidate;
  };
  add("robust", r.robust_dominator);
  add("hull", r.hull_dominator);
  add("objectivewise", r.objectivewise_dominator);
  add("set_valued", r.set_valued_dominator);
  return out;
}

inline std::string to_csv(const EfficiencyReport& report) {
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  std::string out = csv_row({"candidate", "robust_efficient", "convex_hull_efficient", "objectivewise_efficient",
                             "set_valued_minimizer", "dominator"});
  for (const auto& r : report.rows) {
    out += csv_row({r.candidate, b(r.robust_efficient), b(r.convex_hull_efficient), b(r.objectivewise_efficient),
                    b(r.set_valued_minimizer), dominator_cell(r)});
  }
  return out;
}

/// Image points of one solution: "scenario,f1,...,fn".
inline std::string image_csv(const ObjectiveImage& img) {
  std::vector<std::string> header{"scenario"};
  for (std::size_t i = 0; i < img.dimension(); ++i) header.push_back("f" + std::to_string(i + 1));
  std::string out = csv_row(header);
  for (const auto& p : img.points) {
    std::vector<std::string> row{p.scenario};
    for (double v : p.value) row.push_back(format_number(v));
    out += csv_row(row);
  }
  return out;
}

/// Largest |y_i| over the image (the worst-case infinity-norm radius).
inline double radius_inf(const ObjectiveImage& img) {
  double r = 0.0;
  for (const auto& p : img.points) {
    for (double v : p.value) r = std::max(r, std::abs(v));
  }
  return r;
}

/// Largest sum_i |y_i| over the image (the worst-case 1-norm).
inline double radius_1(const ObjectiveImage& img) {
  double r = 0.0;
  for (const auto& p : img.points) {
    double s = 0.0;
    for (double v : p.value) s += std::abs(v);
    r = std::max(r, s);
  }
  return r;
}

/// Standalone SVG scatter of a two-objective image. For p-norm scalarizers
/// the level curve u(y) = level through the worst case is drawn as well.
inline std::string image_svg(const ObjectiveImage& img, const Scalarizer& u, double level,
                             const std::string& title) {
  if (img.dimension() != 2) throw DomainError("SVG output needs two objectives");
  constexpr double size = 400.0, margin = 40.0;
  double hi = 0.0;
  for (const auto& p : img.points) hi = std::max({hi, p.value[0], p.value[1]});
  std::vector<std::pair<double, double>> curve;
  if (const auto* pn = std::get_if<WeightedPnorm>(&u.kind())) {
    // Trace the quarter of the level set above the reference point.
    const double z0 = pn->ref.empty() ? 0.0 : pn->ref.front();
    const double z1 = pn->ref.empty() ? 0.0 : pn->ref.back();
    for (int k = 0; k <= 90; ++k) {
      const double t = k * (std::acos(-1.0) / 2.0) / 90.0;
      const ObjectiveVector dir{z0 + std::cos(t), z1 + std::sin(t)};
      const double unit = u(dir);
      if (!(unit > 0.0)) continue;
      const double r = level / unit;
      curve.emplace_back(z0 + r * std::cos(t), z1 + r * std::sin(t));
      hi = std::max({hi, curve.back().first, curve.back().second});
    }
  }
  hi = hi > 0.0 ? hi * 1.1 : 1.0;
  auto sx = [&](double v) { return margin + (size - 2 * margin) * v / hi; };
  auto sy = [&](double v) { return size - margin - (size - 2 * margin) * v / hi; };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  svg << "  <title>" << title << "</title>\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "  <line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(hi) << "\" y2=\"" << sy(0)
      << "\" stroke=\"black\"/>\n";
  svg << "  <line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(0) << "\" y2=\"" << sy(hi)
      << "\" stroke=\"black\"/>\n";
  svg << "  <text x=\"" << size / 2 << "\" y=\"" << size - 8 << "\" text-anchor=\"middle\">f1</text>\n";
  svg << "  <text x=\"12\" y=\"" << size / 2 << "\" text-anchor=\"middle\">f2</text>\n";
  if (!curve.empty()) {
    svg << "  <polyline fill=\"none\" stroke=\"steelblue\" stroke-dasharray=\"4 3\" points=\"";
    for (const auto& [a, b] : curve) svg << format_number(sx(a)) << ',' << format_number(sy(b)) << ' ';
    svg << "\"/>\n";
  }
  for (const auto& p : img.points) {
    svg << "  <circle cx=\"" << format_number(sx(p.value[0])) << "\" cy=\"" << format_number(sy(p.value[1]))
        << "\" r=\"4\" fill=\"firebrick\"><title>" << p.scenario << "</title></circle>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace robpareto
