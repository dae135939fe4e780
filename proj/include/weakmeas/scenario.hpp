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

#ifndef WEAKMEAS_SCENARIO_HPP
#define WEAKMEAS_SCENARIO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "weakmeas/pointer.hpp"
#include "weakmeas/qubit.hpp"

namespace weakmeas {

// How outcome probabilities are assigned to Bob's measurement results.
// post_selected_norm uses the exact norms of the post-selected pointer
// superpositions (a^2 + b^2 + 2ab*overlap^N), the unique choice consistent
// between measurement orderings; born_probability ignores the pointer cross
// term (a^2 + b^2) and is kept for comparison.
enum class WeightConvention { post_selected_norm, born_probability };

// The multipartite setting: N qubits on Alice's side in the entangled state
//   alpha |+u>^N |+w>_B + beta |-u>^N |+w>_B + gamma |+u>^N |-w>_B,
// each of Alice's qubits weakly coupled (strength g) to its own Gaussian
// pointer and post-selected onto `post_select`. Qubit B states are expressed
// in the |+-w> eigenbasis; Bob's alternative bases are angles relative to w.
struct ScenarioConfig {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  int n_pointers = 1;
  double g = 0.1;
  PointerShape shape;
  QubitState post_select = QubitState::plus_x();
  Observable observable = Observable::sigma_z();
  SpinBasis alice_basis;
  WeightConvention weight_convention = WeightConvention::post_selected_norm;

  // alpha = gamma = 1/sqrt(12), beta = sqrt(5/6), g = 0.1, s = 1/sqrt(2),
  // O = sigma_z, f = |+x>, u = sigma_z basis.
  static ScenarioConfig published_defaults(int n_pointers = 200);
};

// Throws std::invalid_argument when coefficients are not normalized within
// 1e-12, N < 1, g < 0 or the pointer shape is invalid.
void validate(const ScenarioConfig& cfg);

// Pointer shifts eps_+/- = g * Re of the weak values of the +u / -u branch.
struct PointerShifts {
  double plus = 0.0;
  double minus = 0.0;
};

PointerShifts scenario_shifts(const ScenarioConfig& cfg);

struct OutcomeLabel {
  double theta = 0.0;
  int sign = +1;  // +1 or -1

  std::string str() const;
};

// One Bob outcome: the (unnormalized) pointer superposition it leaves on
// Alice's side and its probability weight. `superposition` is empty for an
// impossible outcome (both coefficients zero), which then has weight 0.
struct OutcomeBranch {
  OutcomeLabel label;
  double coeff_plus_shift = 0.0;   // on eps_+
  double coeff_minus_shift = 0.0;  // on eps_-
  std::optional<EnsembleSuperposition> superposition;
  double raw_norm = 0.0;
  double weight = 0.0;
};

// State update after Bob measures in `bob_basis` (angle theta relative to w):
// outcome o has coefficients a_o = alpha<o|+w> + gamma<o|-w> on eps_+ and
// b_o = beta<o|+w> on eps_-. Weights are raw_o / sum raw_o with raw_o per the
// configured weight convention. Returns (+theta outcome, -theta outcome).
std::pair<OutcomeBranch, OutcomeBranch> update_after_B(
    const ScenarioConfig& cfg, const SpinBasis& bob_basis);

// Joint pointer-qubit state in the frame where Alice's weak measurements
// happen first: pointer amplitude {(alpha,eps_+),(beta,eps_-)} attached to
// |+w> and {(gamma,eps_+)} attached to |-w>. Amplitudes with all-zero
// coefficients are absent.
struct FrameRPrimeState {
  std::optional<EnsembleSuperposition> plus_w_amplitude;
  std::optional<EnsembleSuperposition> minus_w_amplitude;
  double total_squared_norm = 0.0;
};

FrameRPrimeState frame_Rprime_state(const ScenarioConfig& cfg);

// Reduced density of xi irrespective of Bob's basis and outcome: raw weights
// (alpha^2 + gamma^2) at eps_+, beta^2 at eps_-, 2 alpha beta overlap^N at
// the midpoint, normalized. Equals the weight-combined branch mixtures of
// update_after_B for every theta.
XiMixture unconditional_xi_density(const ScenarioConfig& cfg);

class UndefinedPosterior : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bayes ratio of branch-weighted xi densities: (P(+theta|xi), P(-theta|xi)).
// Throws UndefinedPosterior when the unconditional density at xi <= 1e-300.
std::pair<double, double> posterior_given_xi(const ScenarioConfig& cfg,
                                             const SpinBasis& bob_basis,
                                             double xi);

// Two-qubit setting (one qubit per side). Qubit B states are expressed in the
// |+-w> eigenbasis, qubit A states in the computational basis via u.
struct BipartiteScenario {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  SpinBasis alice_basis;  // the u basis
  double g = 0.1;
  PointerShape shape;
  QubitState post_select = QubitState::plus_x();
  Observable observable = Observable::sigma_z();

  static BipartiteScenario published_defaults();
};

void validate(const BipartiteScenario& sc);

struct SingleUpdate {
  QubitState state;  // meaningful only when probability > 0
  double probability = 0.0;
};

// Qubit A update after Bob measures sigma_w: outcome +w leaves
// (alpha|+u> + beta|-u>)/sqrt(alpha^2+beta^2) with probability
// alpha^2 + beta^2; outcome -w leaves |+u> with probability gamma^2.
// Returns (+w outcome, -w outcome).
std::pair<SingleUpdate, SingleUpdate> update_single_after_B(
    const BipartiteScenario& sc);

// Pointer state after one weak measurement of `pre_state` followed by
// post-selection: branches (<+-u|pre> * <f|+-u>, eps_+-) with N = 1.
// Throws NearOrthogonalPostSelection when <f|pre> is (near) zero.
EnsembleSuperposition pointer_after_single_wm(const QubitState& pre_state,
                                              const BipartiteScenario& sc);

// Sample hit an interference node: all B amplitudes vanish.
class NodeSample : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Qubit B state conditioned on measured pointer positions X (frame R'):
// unnormalized amplitudes c_+ = alpha A_+(X) + beta A_-(X) on |+w> and
// c_- = gamma A_+(X) on |-w>, A_+- = prod_i phi^{eps_+-}(x_i); returned
// normalized with components in the w eigenbasis. Throws NodeSample when
// both amplitudes vanish.
QubitState qubit_b_given_sample(const ScenarioConfig& cfg,
                                const SampleVector& x);
QubitState qubit_b_given_sample(const BipartiteScenario& sc, double x_m);

}  // namespace weakmeas

#endif  // WEAKMEAS_SCENARIO_HPP
