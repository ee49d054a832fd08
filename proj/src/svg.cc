// Copyright 2026 The Teamsolve Authors
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

#include "teamsolve/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "teamsolve/analysis.h"

namespace teamsolve {
namespace {

constexpr double kHeight = 420;
constexpr double kTop = 40;
constexpr double kBottom = 360;
constexpr double kLeft = 70;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                               "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape(const std::string& s) {
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

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Axis {
  double lo, hi;
  double y(double v) const { return kBottom - (v - lo) / (hi - lo) * (kBottom - kTop); }
};

Axis make_axis(double lo, double hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  return Axis{lo - pad, hi + pad};
}

void header(std::ostream& out, double width, const std::string& title,
            const std::string& y_label) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
      << "\" height=\"" << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(width / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";
  out << "<text transform=\"translate(16," << num((kTop + kBottom) / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
}

void y_ticks(std::ostream& out, const Axis& axis, double right, bool log_y) {
  out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
      << "\" y2=\"" << num(kBottom) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(right)
      << "\" y2=\"" << num(kBottom) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = axis.lo + (axis.hi - axis.lo) * i / 5.0;
    const double y = axis.y(v);
    out << "<line x1=\"" << num(kLeft - 4) << "\" y1=\"" << num(y) << "\" x2=\"" << num(right)
        << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\">" << tick(log_y ? std::pow(10.0, v) : v) << "</text>\n";
  }
}

}  // namespace

void write_box_plot(std::ostream& out, const std::string& title, const std::string& y_label,
                    const std::vector<BoxGroup>& groups) {
  const double slot = 70;
  const double width = kLeft + 30 + slot * std::max<size_t>(groups.size(), 1);
  double lo = kInfinity, hi = -kInfinity;
  for (const BoxGroup& g : groups) {
    for (double v : g.values) {
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!std::isfinite(lo)) lo = hi = 1.0;
  const Axis axis = make_axis(lo, hi);
  header(out, width, title, y_label);
  y_ticks(out, axis, width - 20, false);
  for (size_t k = 0; k < groups.size(); ++k) {
    const double cx = kLeft + slot * (k + 0.5);
    out << "<text x=\"" << num(cx) << "\" y=\"" << num(kBottom + 16)
        << "\" text-anchor=\"middle\" font-size=\"9\">" << escape(groups[k].label) << "</text>\n";
    std::vector<double> v;
    for (double x : groups[k].values) {
      if (std::isfinite(x)) v.push_back(x);
    }
    if (v.empty()) continue;
    std::sort(v.begin(), v.end());
    const double q1 = quantile(v, 0.25), med = quantile(v, 0.5), q3 = quantile(v, 0.75);
    const double iqr = q3 - q1;
    double wlo = q1, whi = q3;
    for (double x : v) {
      if (x >= q1 - 1.5 * iqr) {
        wlo = std::min(wlo, x);
        break;
      }
    }
    for (auto it = v.rbegin(); it != v.rend(); ++it) {
      if (*it <= q3 + 1.5 * iqr) {
        whi = std::max(whi, *it);
        break;
      }
    }
    const double half = slot * 0.3;
    out << "<line x1=\"" << num(cx) << "\" y1=\"" << num(axis.y(whi)) << "\" x2=\"" << num(cx)
        << "\" y2=\"" << num(axis.y(q3)) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << num(cx) << "\" y1=\"" << num(axis.y(q1)) << "\" x2=\"" << num(cx)
        << "\" y2=\"" << num(axis.y(wlo)) << "\" stroke=\"black\"/>\n";
    for (double w : {wlo, whi}) {
      out << "<line x1=\"" << num(cx - half / 2) << "\" y1=\"" << num(axis.y(w)) << "\" x2=\""
          << num(cx + half / 2) << "\" y2=\"" << num(axis.y(w)) << "\" stroke=\"black\"/>\n";
    }
    out << "<rect x=\"" << num(cx - half) << "\" y=\"" << num(axis.y(q3)) << "\" width=\""
        << num(2 * half) << "\" height=\"" << num(std::max(axis.y(q1) - axis.y(q3), 0.5))
        << "\" fill=\"#9ecae1\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << num(cx - half) << "\" y1=\"" << num(axis.y(med)) << "\" x2=\""
        << num(cx + half) << "\" y2=\"" << num(axis.y(med))
        << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    for (double x : v) {
      if (x < wlo || x > whi) {
        out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(axis.y(x))
            << "\" r=\"2.5\" fill=\"none\" stroke=\"black\"/>\n";
      }
    }
  }
  out << "</svg>\n";
}

void write_line_plot(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<LineSeries>& series,
                     bool log_y) {
  const double width = 640;
  const double right = width - 150;
  auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
  double xlo = kInfinity, xhi = -kInfinity, ylo = kInfinity, yhi = -kInfinity;
  for (const LineSeries& s : series) {
    for (size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
      if (!std::isfinite(s.ys[i]) || (log_y && s.ys[i] <= 0)) continue;
      xlo = std::min(xlo, s.xs[i]);
      xhi = std::max(xhi, s.xs[i]);
      ylo = std::min(ylo, ty(s.ys[i]));
      yhi = std::max(yhi, ty(s.ys[i]));
    }
  }
  if (!std::isfinite(xlo)) xlo = xhi = 0.0;
  if (!std::isfinite(ylo)) ylo = yhi = 0.0;
  if (!(xhi > xlo)) {
    xlo -= 1;
    xhi += 1;
  }
  const Axis axis = make_axis(ylo, yhi);
  auto px = [&](double x) { return kLeft + 20 + (x - xlo) / (xhi - xlo) * (right - kLeft - 40); };
  header(out, width, title, y_label + (log_y ? " (log scale)" : ""));
  y_ticks(out, axis, right, log_y);
  out << "<text x=\"" << num((kLeft + right) / 2) << "\" y=\"" << num(kBottom + 34)
      << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  std::vector<double> xs;
  for (const LineSeries& s : series) xs.insert(xs.end(), s.xs.begin(), s.xs.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (double x : xs) {
    out << "<text x=\"" << num(px(x)) << "\" y=\"" << num(kBottom + 16)
        << "\" text-anchor=\"middle\">" << tick(x) << "</text>\n";
  }
  for (size_t k = 0; k < series.size(); ++k) {
    const char* color = kColors[k % (sizeof kColors / sizeof kColors[0])];
    const LineSeries& s = series[k];
    std::string points;
    for (size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
      if (!std::isfinite(s.ys[i]) || (log_y && s.ys[i] <= 0)) continue;
      points += num(px(s.xs[i])) + "," + num(axis.y(ty(s.ys[i]))) + " ";
      out << "<circle cx=\"" << num(px(s.xs[i])) << "\" cy=\"" << num(axis.y(ty(s.ys[i])))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    out << "<polyline points=\"" << points << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    const double ly = kTop + 16 * k;
    out << "<line x1=\"" << num(right + 12) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(right + 32) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << num(right + 36) << "\" y=\"" << num(ly + 4) << "\">"
        << escape(s.name) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace teamsolve
