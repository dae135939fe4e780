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

#ifndef WEAKMEAS_CLI_COMMANDS_HPP
#define WEAKMEAS_CLI_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

#include "weakmeas/cli/run_config.hpp"
#include "weakmeas/cli/verify.hpp"

namespace weakmeas::cli {

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitVerifyFailure = 2;
inline constexpr int kExitSamplerFailure = 3;

// Per-theta branch coefficients, shifts, raw norms and weights (CSV on out).
int cmd_branches(const RunConfig& cfg, std::ostream& out);

// Analytic xi densities per outcome and unconditional, one CSV per theta.
int cmd_xi_oracle(const RunConfig& cfg, std::ostream& out);

// MH histograms per theta and outcome, weighted by branch weight; writes one
// CSV (and optionally one SVG) per theta plus chain diagnostics on out.
int cmd_mh_run(const RunConfig& cfg, std::ostream& out);

// Single realization of the N pointer positions for one outcome target.
int cmd_one_shot(const RunConfig& cfg, double theta, int outcome_sign,
                 std::ostream& out);

// Posterior P(+-theta | xi) with the supporting densities.
int cmd_infer(const RunConfig& cfg, double xi, double theta, std::ostream& out);

// Invariant suites; exit 2 on any failure.
int cmd_verify(const RunConfig& cfg, const VerifyOptions& options,
               std::ostream& out);

// Full command-line entry point (args excludes the program name).
// Returns one of the kExit* codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace weakmeas::cli

#endif  // WEAKMEAS_CLI_COMMANDS_HPP
