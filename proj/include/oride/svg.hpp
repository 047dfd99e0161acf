//
// Copyright 2026 The oride-triangulation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef ORIDE_SVG_HPP_
#define ORIDE_SVG_HPP_

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

#include "oride/experiment.hpp"

namespace oride {

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s(buf);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

}  // namespace detail

// SVG 1.1 scatter of one trial. The viewBox is the zone in meters; y grows
// northwards inside the plot group. Markers carry a class of truth,
// recovered or adversary.
inline std::string render_scatter(const TrialArtifacts& trial) {
  if (!(trial.zone.side > 0.0) || trial.drivers.empty() || trial.adversaries.empty()) {
    throw std::invalid_argument("render_scatter: trial has no retained world");
  }
  const double side = trial.zone.side;
  const std::string s = detail::num(side);
  const double unit = side / 400.0;  // marker scale
  const double marker = 2.5 * unit;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
         "height=\"800\" viewBox=\"0 0 "
      << s << ' ' << s << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << s << "\" height=\"" << s
      << "\" fill=\"white\" stroke=\"black\" stroke-width=\"" << detail::num(unit)
      << "\" class=\"zone\"/>\n";
  out << "<g transform=\"translate(0," << s << ") scale(1,-1)\">\n";

  const Point c = trial.zone.center();
  if (trial.ring_radius > 0.0) {
    out << "<circle cx=\"" << detail::num(c.x) << "\" cy=\"" << detail::num(c.y) << "\" r=\""
        << detail::num(trial.ring_radius) << "\" fill=\"none\" stroke=\"#999\" "
        << "stroke-dasharray=\"" << detail::num(4 * unit) << "\" stroke-width=\""
        << detail::num(unit / 2) << "\" class=\"ring\"/>\n";
  }
  for (const Point& a : trial.adversaries) {
    out << "<rect class=\"adversary\" x=\"" << detail::num(a.x - marker) << "\" y=\""
        << detail::num(a.y - marker) << "\" width=\"" << detail::num(2 * marker)
        << "\" height=\"" << detail::num(2 * marker) << "\" fill=\"#d62728\"/>\n";
  }
  for (const Point& d : trial.drivers) {
    if (trial.rho > 0.0) {
      out << "<circle class=\"perturbation\" cx=\"" << detail::num(d.x) << "\" cy=\""
          << detail::num(d.y) << "\" r=\"" << detail::num(2 * trial.rho)
          << "\" fill=\"#1f77b4\" fill-opacity=\"0.12\" stroke=\"none\"/>\n";
    }
    out << "<circle class=\"truth\" cx=\"" << detail::num(d.x) << "\" cy=\"" << detail::num(d.y)
        << "\" r=\"" << detail::num(marker) << "\" fill=\"#1f77b4\"/>\n";
  }
  for (std::size_t i = 0; i < trial.recovered.size(); ++i) {
    const Point& p = trial.recovered.points[i];
    const bool valid = i < trial.matched_driver.size() && trial.matched_driver[i] >= 0;
    out << "<path class=\"recovered\" d=\"M" << detail::num(p.x - marker) << ' '
        << detail::num(p.y - marker) << " L" << detail::num(p.x + marker) << ' '
        << detail::num(p.y + marker) << " M" << detail::num(p.x - marker) << ' '
        << detail::num(p.y + marker) << " L" << detail::num(p.x + marker) << ' '
        << detail::num(p.y - marker) << "\" stroke=\"" << (valid ? "#2ca02c" : "#ff7f0e")
        << "\" stroke-width=\"" << detail::num(unit) << "\" fill=\"none\"/>\n";
  }
  out << "</g>\n";

  // Legend, drawn unflipped in the top-left corner.
  const double font = 10.0 * unit;
  const double x0 = 8.0 * unit;
  auto legend_line = [&](int row, const char* color, const std::string& label) {
    const double y = (14.0 + 14.0 * row) * unit;
    out << "<rect x=\"" << detail::num(x0) << "\" y=\"" << detail::num(y - 3 * marker)
        << "\" width=\"" << detail::num(2 * marker) << "\" height=\"" << detail::num(2 * marker)
        << "\" fill=\"" << color << "\"/>\n"
        << "<text x=\"" << detail::num(x0 + 4 * marker) << "\" y=\"" << detail::num(y)
        << "\" font-size=\"" << detail::num(font) << "\" font-family=\"sans-serif\">" << label
        << "</text>\n";
  };
  out << "<g class=\"legend\">\n";
  legend_line(0, "#1f77b4", "driver (" + std::to_string(trial.drivers.size()) + ")");
  legend_line(1, "#2ca02c", "recovered, valid");
  legend_line(2, "#ff7f0e", "recovered, invalid");
  legend_line(3, "#d62728", "adversary (" + std::to_string(trial.adversaries.size()) + ")");
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace oride

#endif  // ORIDE_SVG_HPP_
