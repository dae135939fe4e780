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

#ifndef WEAKMEAS_CLI_VERIFY_HPP
#define WEAKMEAS_CLI_VERIFY_HPP

#include <ostream>
#include <string>
#include <vector>

#include "weakmeas/cli/run_config.hpp"

namespace weakmeas::cli {

struct VerifyOptions {
  // Perturbs one branch weight inside the no-signaling suite; exists so the
  // failure path itself can be exercised.
  double corrupt_weights = 0.0;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // measured vs expected
};

// No-signaling, frame-consistency, overlap-quadrature, xi-scaling and
// MH-vs-oracle convergence suites for the configured scenario.
std::vector<CheckResult> run_verification(const RunConfig& cfg,
                                          const VerifyOptions& options);

// Prints one line per check; returns true when all pass.
bool report_verification(const std::vector<CheckResult>& results,
                         std::ostream& out);

}  // namespace weakmeas::cli

#endif  // WEAKMEAS_CLI_VERIFY_HPP
