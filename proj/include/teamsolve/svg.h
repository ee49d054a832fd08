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

#ifndef TEAMSOLVE_SVG_H_
#define TEAMSOLVE_SVG_H_

#include <ostream>
#include <string>
#include <vector>

namespace teamsolve {

struct BoxGroup {
  std::string label;
  std::vector<double> values;
};

// Box plot per group: quartile box, median line, Tukey whiskers at the most
// extreme points within 1.5 IQR of the box, outliers as dots.
void write_box_plot(std::ostream& out, const std::string& title,
                    const std::string& y_label, const std::vector<BoxGroup>& groups);

struct LineSeries {
  std::string name;
  std::vector<double> xs;
  std::vector<double> ys;
};

// Polylines with markers; log10 y axis when `log_y` (non-positive values are
// dropped).
void write_line_plot(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<LineSeries>& series,
                     bool log_y);

}  // namespace teamsolve

#endif  // TEAMSOLVE_SVG_H_
