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

#ifndef WEAKMEAS_CLI_TABLE_HPP
#define WEAKMEAS_CLI_TABLE_HPP

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace weakmeas::cli {

// 17 significant digits; round-trips any double bit-for-bit.
std::string format_double(double v);

// CSV table: '#'-prefixed metadata lines, one header row, numeric rows.
struct Table {
  std::vector<std::string> metadata;  // without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void write(std::ostream& out) const;
  // Writes to a temp file and renames, so readers never see partial output.
  void write_csv(const std::filesystem::path& path) const;
  static Table read_csv(const std::filesystem::path& path);
};

// Fixed-width binning over [lo, hi); out-of-range samples are counted
// separately so total mass stays accounted for.
struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> counts;
  long total = 0;
  long outside = 0;

  Histogram(double lo_, double hi_, int bins);
  void add(double x);
  double bin_width() const;
  // Probability density per bin scaled by `weight` (weighted so the grand
  // total over outcomes integrates to ~1).
  std::vector<double> weighted_density(double weight) const;
};

}  // namespace weakmeas::cli

#endif  // WEAKMEAS_CLI_TABLE_HPP
