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

#ifndef WEAKMEAS_CLI_RUN_CONFIG_HPP
#define WEAKMEAS_CLI_RUN_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "weakmeas/sampler.hpp"
#include "weakmeas/scenario.hpp"

namespace weakmeas::cli {

// Config-file problem; the message carries file/line/key diagnostics.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HistogramSpec {
  int bins = 50;
  double xi_min = -0.25;
  double xi_max = 0.25;
};

struct MHSettings {
  double sigma_q = 0.0;  // <= 0: 2.4 s / sqrt(N)
  long iterations = 52000;
  long burn_in = -1;  // < 0: 10 N
  long thinning = 5;
  std::uint64_t seed = 1;
  int chains = 8;
  InitPolicy init = InitPolicy::from_mixture;
  int init_branch = 0;
};

// Flat key/value run configuration. Keys:
//   alpha, beta, gamma, n_pointers, g, pointer_s, theta (comma list, accepts
//   "pi" expressions such as pi/4 or 3pi/8), weight_convention
//   (post_selected|born), mh.sigma_q, mh.iterations, mh.burn_in, mh.thinning,
//   mh.seed, mh.chains, mh.init (from_mixture|at_origin|branch:<k>),
//   hist.bins, hist.min, hist.max, out_dir, emit_plot.
// Unset keys keep the defaults below (the published N=200 scenario).
struct RunConfig {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  int n_pointers = 200;
  double g = 0.1;
  double pointer_s = 0.0;
  std::vector<double> thetas;
  WeightConvention weight_convention = WeightConvention::post_selected_norm;
  MHSettings mh;
  HistogramSpec hist;
  std::string out_dir = "out";
  bool emit_plot = false;

  static RunConfig defaults();

  ScenarioConfig scenario() const;  // validates
  MHConfig mh_config() const;       // resolves sigma_q / burn_in defaults
};

// Parses one `key = value` pair per line; '#' starts a comment. Throws
// ConfigError with file/line diagnostics on unknown keys or bad values.
RunConfig parse_config_file(const std::string& path);

// "0.125", "pi", "pi/4", "3pi/8", "-pi/2" and plain decimals.
double parse_angle(const std::string& token);

}  // namespace weakmeas::cli

#endif  // WEAKMEAS_CLI_RUN_CONFIG_HPP
