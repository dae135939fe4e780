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

#include "weakmeas/cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace weakmeas::cli {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void Table::write(std::ostream& out) const {
  for (const auto& m : metadata) out << "# " << m << "\n";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out << columns[c] << (c + 1 < columns.size() ? "," : "");
  }
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << format_double(row[c]) << (c + 1 < row.size() ? "," : "");
    }
    out << "\n";
  }
}

void Table::write_csv(const std::filesystem::path& path) const {
  std::filesystem::create_directories(path.parent_path().empty()
                                          ? "."
                                          : path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write '" + tmp.string() + "'");
    }
    write(out);
  }
  std::filesystem::rename(tmp, path);
}

Table Table::read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read '" + path.string() + "'");
  }
  Table table;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::size_t start = 1;
      if (start < line.size() && line[start] == ' ') ++start;
      table.metadata.push_back(line.substr(start));
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (!header_seen) {
      while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) {
        throw std::runtime_error("bad numeric cell '" + cell + "' in " +
                                 path.string());
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Histogram::Histogram(double lo_, double hi_, int bins)
    : lo(lo_), hi(hi_), counts(static_cast<std::size_t>(bins), 0.0) {
  if (bins < 1 || !(lo < hi)) {
    throw std::invalid_argument("Histogram: need bins >= 1 and lo < hi");
  }
}

void Histogram::add(double x) {
  ++total;
  if (x < lo || x >= hi) {
    ++outside;
    return;
  }
  const auto bin = static_cast<std::size_t>((x - lo) / (hi - lo) *
                                            static_cast<double>(counts.size()));
  counts[std::min(bin, counts.size() - 1)] += 1.0;
}

double Histogram::bin_width() const {
  return (hi - lo) / static_cast<double>(counts.size());
}

std::vector<double> Histogram::weighted_density(double weight) const {
  std::vector<double> density(counts.size(), 0.0);
  if (total == 0) return density;
  const double scale = weight / (static_cast<double>(total) * bin_width());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    density[i] = counts[i] * scale;
  }
  return density;
}

}  // namespace weakmeas::cli
