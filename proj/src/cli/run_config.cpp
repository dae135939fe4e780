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

#include "weakmeas/cli/run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace weakmeas::cli {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

double to_double(const std::string& value, const std::string& context) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw ConfigError(context + ": expected a number, got '" + value + "'");
  }
  return v;
}

long to_long(const std::string& value, const std::string& context) {
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0') {
    throw ConfigError(context + ": expected an integer, got '" + value + "'");
  }
  return v;
}

bool to_bool(const std::string& value, const std::string& context) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(context + ": expected true/false, got '" + value + "'");
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value,
               const std::string& context) {
  if (key == "alpha") {
    cfg.alpha = to_double(value, context);
  } else if (key == "beta") {
    cfg.beta = to_double(value, context);
  } else if (key == "gamma") {
    cfg.gamma = to_double(value, context);
  } else if (key == "n_pointers") {
    cfg.n_pointers = static_cast<int>(to_long(value, context));
  } else if (key == "g") {
    cfg.g = to_double(value, context);
  } else if (key == "pointer_s") {
    cfg.pointer_s = to_double(value, context);
  } else if (key == "theta") {
    cfg.thetas.clear();
    for (const auto& token : split(value, ',')) {
      if (token.empty()) {
        throw ConfigError(context + ": empty theta entry");
      }
      try {
        cfg.thetas.push_back(parse_angle(token));
      } catch (const std::exception& e) {
        throw ConfigError(context + ": " + e.what());
      }
    }
    if (cfg.thetas.empty()) {
      throw ConfigError(context + ": theta list is empty");
    }
  } else if (key == "weight_convention") {
    if (value == "post_selected") {
      cfg.weight_convention = WeightConvention::post_selected_norm;
    } else if (value == "born") {
      cfg.weight_convention = WeightConvention::born_probability;
    } else {
      throw ConfigError(context + ": expected post_selected or born");
    }
  } else if (key == "mh.sigma_q") {
    cfg.mh.sigma_q = to_double(value, context);
  } else if (key == "mh.iterations") {
    cfg.mh.iterations = to_long(value, context);
  } else if (key == "mh.burn_in") {
    cfg.mh.burn_in = to_long(value, context);
  } else if (key == "mh.thinning") {
    cfg.mh.thinning = to_long(value, context);
  } else if (key == "mh.seed") {
    char* end = nullptr;
    cfg.mh.seed = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
      throw ConfigError(context + ": expected an unsigned integer seed");
    }
  } else if (key == "mh.chains") {
    cfg.mh.chains = static_cast<int>(to_long(value, context));
  } else if (key == "mh.init") {
    if (value == "from_mixture") {
      cfg.mh.init = InitPolicy::from_mixture;
    } else if (value == "at_origin") {
      cfg.mh.init = InitPolicy::at_origin;
    } else if (value.rfind("branch:", 0) == 0) {
      cfg.mh.init = InitPolicy::at_branch_mean;
      cfg.mh.init_branch =
          static_cast<int>(to_long(value.substr(7), context));
    } else {
      throw ConfigError(context +
                        ": expected from_mixture, at_origin or branch:<k>");
    }
  } else if (key == "hist.bins") {
    cfg.hist.bins = static_cast<int>(to_long(value, context));
  } else if (key == "hist.min") {
    cfg.hist.xi_min = to_double(value, context);
  } else if (key == "hist.max") {
    cfg.hist.xi_max = to_double(value, context);
  } else if (key == "out_dir") {
    cfg.out_dir = value;
  } else if (key == "emit_plot") {
    cfg.emit_plot = to_bool(value, context);
  } else {
    throw ConfigError(context + ": unknown key '" + key + "'");
  }
}

void check(const RunConfig& cfg) {
  if (cfg.hist.bins < 2) {
    throw ConfigError("hist.bins must be >= 2");
  }
  if (!(cfg.hist.xi_min < cfg.hist.xi_max)) {
    throw ConfigError("hist.min must be strictly below hist.max");
  }
  if (cfg.mh.chains < 1) {
    throw ConfigError("mh.chains must be >= 1");
  }
  if (cfg.mh.thinning < 1) {
    throw ConfigError("mh.thinning must be >= 1");
  }
  if (cfg.mh.iterations < 1) {
    throw ConfigError("mh.iterations must be >= 1");
  }
  try {
    validate(cfg.scenario());
  } catch (const std::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig cfg;
  cfg.alpha = 1.0 / std::sqrt(12.0);
  cfg.beta = std::sqrt(5.0 / 6.0);
  cfg.gamma = cfg.alpha;
  cfg.n_pointers = 200;
  cfg.g = 0.1;
  cfg.pointer_s = 1.0 / std::sqrt(2.0);
  cfg.thetas = {0.0, std::numbers::pi / 4.0};
  return cfg;
}

ScenarioConfig RunConfig::scenario() const {
  ScenarioConfig sc;
  sc.alpha = alpha;
  sc.beta = beta;
  sc.gamma = gamma;
  sc.n_pointers = n_pointers;
  sc.g = g;
  sc.shape = PointerShape{pointer_s};
  sc.post_select = QubitState::plus_x();
  sc.observable = Observable::sigma_z();
  sc.alice_basis = basis_from_angle(0.0);
  sc.weight_convention = weight_convention;
  return sc;
}

MHConfig RunConfig::mh_config() const {
  MHConfig out;
  out.sigma_q = mh.sigma_q;  // run_chain resolves <= 0 to the default scale
  out.n_iterations = mh.iterations;
  out.burn_in = mh.burn_in >= 0 ? mh.burn_in : 10L * n_pointers;
  out.thinning = mh.thinning;
  out.seed = mh.seed;
  out.init = mh.init;
  out.init_branch = mh.init_branch;
  return out;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  RunConfig cfg = RunConfig::defaults();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string context = path + ":" + std::to_string(line_no);
    if (eq == std::string::npos) {
      throw ConfigError(context + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(context + ": empty key");
    }
    apply_key(cfg, key, value, context + " (" + key + ")");
  }
  check(cfg);
  return cfg;
}

double parse_angle(const std::string& token) {
  const std::string t = trim(token);
  if (t.empty()) throw std::invalid_argument("empty angle");

  const auto pi_pos = t.find("pi");
  if (pi_pos == std::string::npos) {
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0' || !std::isfinite(v)) {
      throw std::invalid_argument("bad angle '" + t + "'");
    }
    return v;
  }

  // [coefficient] pi [/ divisor]
  double coeff = 1.0;
  std::string head = trim(t.substr(0, pi_pos));
  if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
  if (head == "-") {
    coeff = -1.0;
  } else if (!head.empty()) {
    char* end = nullptr;
    coeff = std::strtod(head.c_str(), &end);
    if (end == head.c_str() || *end != '\0') {
      throw std::invalid_argument("bad angle '" + t + "'");
    }
  }
  double divisor = 1.0;
  std::string tail = trim(t.substr(pi_pos + 2));
  if (!tail.empty()) {
    if (tail.front() != '/') {
      throw std::invalid_argument("bad angle '" + t + "'");
    }
    tail = trim(tail.substr(1));
    char* end = nullptr;
    divisor = std::strtod(tail.c_str(), &end);
    if (end == tail.c_str() || *end != '\0' || divisor == 0.0) {
      throw std::invalid_argument("bad angle '" + t + "'");
    }
  }
  return coeff * std::numbers::pi / divisor;
}

}  // namespace weakmeas::cli
