// Copyright 2026 The weakmeas Authors
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

#ifndef WEAKMEAS_CLI_SVG_HPP
#define WEAKMEAS_CLI_SVG_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace weakmeas::cli {

struct SvgSeries {
  std::string label;
  std::string color;       // e.g. "#e66100"
  std::vector<double> values;  // one per bin (bars) or per grid point (line)
  bool as_line = false;
};

// Minimal static histogram plot: bars per series plus optional overlay
// lines, shared x range [lo, hi]. Deterministic output, no timestamps.
void write_histogram_svg(const std::filesystem::path& path, double lo,
                         double hi, const std::vector<SvgSeries>& series,
                         const std::string& title);

}  // namespace weakmeas::cli

#endif  // WEAKMEAS_CLI_SVG_HPP
