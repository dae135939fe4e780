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

#ifndef WEAKMEAS_SAMPLER_HPP
#define WEAKMEAS_SAMPLER_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "weakmeas/pointer.hpp"
#include "weakmeas/rng.hpp"

namespace weakmeas {

enum class InitPolicy {
  at_origin,       // all pointers at X = 0
  at_branch_mean,  // all pointers at the shift of branch `init_branch`
  from_mixture,    // branch picked with probability proportional to coeff^2,
                   // then iid Gaussians around its shift
};

struct MHConfig {
  double sigma_q = 0.0;  // proposal std; <= 0 selects default_sigma(N, shape)
  long n_iterations = 0;
  long burn_in = 0;  // must be <= n_iterations
  long thinning = 1;
  std::uint64_t seed = 0;
  InitPolicy init = InitPolicy::from_mixture;
  int init_branch = 0;  // used by at_branch_mean
};

struct ChainState {
  SampleVector x;
  SignedLog log_pi;
};

struct SampleRecord {
  std::vector<double> xi_values;  // retained per-iteration means
  long accept_count = 0;
  long total_proposals = 0;

  double acceptance_rate() const {
    return total_proposals > 0
               ? static_cast<double>(accept_count) / total_proposals
               : 0.0;
  }
};

// Chain occupies a zero-density state (must never happen after init).
class InvalidChainState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Initial state has zero target density; choose another init policy.
class InitOnNode : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Random-walk proposal scale 2.4 * s / sqrt(n).
double default_sigma(long n, const PointerShape& shape);

// Each coordinate perturbed independently by N(0, sigma_q^2); symmetric.
SampleVector propose(const SampleVector& x_t, double sigma_q, Rng& rng);

// min(1, exp(log_pi_star - log_pi_t)); a zero-density proposal gives 0.
// Throws InvalidChainState when the current density is zero.
double accept_prob(const SignedLog& log_pi_star, const SignedLog& log_pi_t);

// Metropolis-Hastings chain over the target |Psi(X)|^2: burn-in, then every
// `thinning`-th state contributes xi = sum_i x_i / N to the record.
// Deterministic for a fixed seed. Throws InitOnNode / InvalidChainState.
SampleRecord run_chain(const EnsembleSuperposition& target,
                       const MHConfig& cfg);

// Independent chains with seeds cfg.seed + 0 .. n_chains-1, merged in
// ascending seed order (independent of scheduling). With from_mixture init
// the chains are assigned to branches in deterministic proportion to the
// squared coefficients. max_threads <= 0 uses the hardware concurrency.
SampleRecord run_chains(const EnsembleSuperposition& target,
                        const MHConfig& cfg, int n_chains,
                        int max_threads = 0);

// Final retained state of an independent chain: one realization of the N
// pointer positions. Requires at least one retained iteration.
SampleVector one_shot(const EnsembleSuperposition& target, const MHConfig& cfg);

// Fraction of retained xi values nearest to each branch shift; exposes
// mode-coverage failures of a run.
std::vector<double> mode_fractions(const std::vector<double>& xi_values,
                                   const EnsembleSuperposition& target);

}  // namespace weakmeas

#endif  // WEAKMEAS_SAMPLER_HPP
