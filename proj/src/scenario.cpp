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

#include "weakmeas/scenario.hpp"

#include <cmath>
#include <cstdio>

namespace weakmeas {

namespace {

constexpr double kCoefficientTolerance = 1e-12;

// The scenarios are restricted to real coefficients; a residual imaginary
// part signals a configuration outside that restriction.
double real_part(const Amplitude& z, const char* what) {
  if (std::abs(z.imag()) > 1e-9 * (1.0 + std::abs(z))) {
    throw std::domain_error(std::string(what) +
                            ": complex coefficients are not supported");
  }
  return z.real();
}

void require_common(double alpha, double beta, double gamma, double g,
                    const PointerShape& shape) {
  const double norm2 = alpha * alpha + beta * beta + gamma * gamma;
  if (std::abs(norm2 - 1.0) > kCoefficientTolerance) {
    throw std::invalid_argument(
        "scenario: alpha^2 + beta^2 + gamma^2 must be 1 within 1e-12");
  }
  if (!(g >= 0.0) || !std::isfinite(g)) {
    throw std::invalid_argument("scenario: g must be non-negative");
  }
  if (!(shape.s > 0.0) || !std::isfinite(shape.s)) {
    throw std::invalid_argument("scenario: pointer shape must be positive");
  }
}

// Impossible outcomes (all coefficients zero, or a fully destructive pair,
// which happens at g = 0) yield an empty amplitude rather than an error.
std::optional<EnsembleSuperposition> make_branch_superposition(
    double coeff_plus, double eps_plus, double coeff_minus, double eps_minus,
    int n, const PointerShape& shape) {
  std::vector<EnsembleBranch> branches;
  if (coeff_plus != 0.0) branches.push_back({coeff_plus, eps_plus});
  if (coeff_minus != 0.0) branches.push_back({coeff_minus, eps_minus});
  if (branches.empty()) return std::nullopt;
  try {
    return make_superposition(std::move(branches), n, shape);
  } catch (const ZeroNorm&) {
    return std::nullopt;
  }
}

XiMixture mixture_from_raw(std::vector<MixtureComponent> raw) {
  double total = 0.0;
  for (const auto& c : raw) total += c.weight;
  if (total <= 1e-15) {
    throw ZeroNorm("xi mixture: total weight is not positive");
  }
  XiMixture mix;
  for (auto& c : raw) {
    if (c.weight == 0.0) continue;
    c.weight /= total;
    mix.components.push_back(c);
  }
  return mix;
}

}  // namespace

ScenarioConfig ScenarioConfig::published_defaults(int n_pointers) {
  ScenarioConfig cfg;
  cfg.alpha = 1.0 / std::sqrt(12.0);
  cfg.beta = std::sqrt(5.0 / 6.0);
  cfg.gamma = cfg.alpha;
  cfg.n_pointers = n_pointers;
  cfg.g = 0.1;
  cfg.shape = PointerShape{1.0 / std::sqrt(2.0)};
  cfg.post_select = QubitState::plus_x();
  cfg.observable = Observable::sigma_z();
  cfg.alice_basis = basis_from_angle(0.0);
  return cfg;
}

void validate(const ScenarioConfig& cfg) {
  require_common(cfg.alpha, cfg.beta, cfg.gamma, cfg.g, cfg.shape);
  if (cfg.n_pointers < 1) {
    throw std::invalid_argument("scenario: n_pointers must be >= 1");
  }
}

PointerShifts scenario_shifts(const ScenarioConfig& cfg) {
  const Amplitude wv_plus =
      weak_value(cfg.alice_basis.plus_state, cfg.post_select, cfg.observable);
  const Amplitude wv_minus =
      weak_value(cfg.alice_basis.minus_state, cfg.post_select, cfg.observable);
  return {pointer_shift(cfg.g, wv_plus), pointer_shift(cfg.g, wv_minus)};
}

std::string OutcomeLabel::str() const {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%ctheta=%.6g", sign >= 0 ? '+' : '-', theta);
  return buf;
}

std::pair<OutcomeBranch, OutcomeBranch> update_after_B(
    const ScenarioConfig& cfg, const SpinBasis& bob_basis) {
  validate(cfg);
  const PointerShifts eps = scenario_shifts(cfg);
  const double ovl = ensemble_overlap(eps.plus, eps.minus, cfg.shape,
                                      cfg.n_pointers);

  const QubitState plus_w = QubitState::plus_z();
  const QubitState minus_w = QubitState::minus_z();

  auto make_outcome = [&](const QubitState& o_state, int sign) {
    const double op = real_part(inner(o_state, plus_w), "update_after_B");
    const double om = real_part(inner(o_state, minus_w), "update_after_B");
    OutcomeBranch out;
    out.label = {bob_basis.theta, sign};
    out.coeff_plus_shift = cfg.alpha * op + cfg.gamma * om;
    out.coeff_minus_shift = cfg.beta * op;
    const double a = out.coeff_plus_shift;
    const double b = out.coeff_minus_shift;
    out.raw_norm = cfg.weight_convention == WeightConvention::post_selected_norm
                       ? a * a + b * b + 2.0 * a * b * ovl
                       : a * a + b * b;
    out.superposition = make_branch_superposition(a, eps.plus, b, eps.minus,
                                                  cfg.n_pointers, cfg.shape);
    return out;
  };

  OutcomeBranch plus = make_outcome(bob_basis.plus_state, +1);
  OutcomeBranch minus = make_outcome(bob_basis.minus_state, -1);
  const double total = plus.raw_norm + minus.raw_norm;
  if (!(total > 0.0)) {
    throw ZeroNorm("update_after_B: no outcome has positive weight");
  }
  plus.weight = plus.raw_norm / total;
  minus.weight = minus.raw_norm / total;
  return {plus, minus};
}

FrameRPrimeState frame_Rprime_state(const ScenarioConfig& cfg) {
  validate(cfg);
  const PointerShifts eps = scenario_shifts(cfg);
  const double ovl = ensemble_overlap(eps.plus, eps.minus, cfg.shape,
                                      cfg.n_pointers);
  FrameRPrimeState state;
  state.plus_w_amplitude = make_branch_superposition(
      cfg.alpha, eps.plus, cfg.beta, eps.minus, cfg.n_pointers, cfg.shape);
  state.minus_w_amplitude = make_branch_superposition(
      cfg.gamma, eps.plus, 0.0, eps.minus, cfg.n_pointers, cfg.shape);
  state.total_squared_norm =
      cfg.alpha * cfg.alpha + cfg.beta * cfg.beta + cfg.gamma * cfg.gamma +
      2.0 * cfg.alpha * cfg.beta * ovl;
  return state;
}

XiMixture unconditional_xi_density(const ScenarioConfig& cfg) {
  validate(cfg);
  const PointerShifts eps = scenario_shifts(cfg);
  const double ovl = ensemble_overlap(eps.plus, eps.minus, cfg.shape,
                                      cfg.n_pointers);
  const double sd =
      cfg.shape.s / std::sqrt(static_cast<double>(cfg.n_pointers));
  std::vector<MixtureComponent> raw{
      {cfg.alpha * cfg.alpha + cfg.gamma * cfg.gamma, eps.plus, sd},
      {cfg.beta * cfg.beta, eps.minus, sd},
      {2.0 * cfg.alpha * cfg.beta * ovl, 0.5 * (eps.plus + eps.minus), sd},
  };
  return mixture_from_raw(std::move(raw));
}

std::pair<double, double> posterior_given_xi(const ScenarioConfig& cfg,
                                             const SpinBasis& bob_basis,
                                             double xi) {
  const auto [plus, minus] = update_after_B(cfg, bob_basis);
  auto weighted_density = [&](const OutcomeBranch& o) {
    if (!o.superposition) return 0.0;
    return o.weight * xi_mixture(*o.superposition).density(xi);
  };
  const double dp = weighted_density(plus);
  const double dm = weighted_density(minus);
  const double total = dp + dm;
  if (!(total > 1e-300)) {
    throw UndefinedPosterior(
        "posterior_given_xi: unconditional density vanishes at xi");
  }
  return {dp / total, dm / total};
}

BipartiteScenario BipartiteScenario::published_defaults() {
  BipartiteScenario sc;
  sc.alpha = 1.0 / std::sqrt(12.0);
  sc.beta = std::sqrt(5.0 / 6.0);
  sc.gamma = sc.alpha;
  sc.alice_basis = basis_from_angle(0.0);
  sc.g = 0.1;
  sc.shape = PointerShape{1.0 / std::sqrt(2.0)};
  sc.post_select = QubitState::plus_x();
  sc.observable = Observable::sigma_z();
  return sc;
}

void validate(const BipartiteScenario& sc) {
  require_common(sc.alpha, sc.beta, sc.gamma, sc.g, sc.shape);
}

std::pair<SingleUpdate, SingleUpdate> update_single_after_B(
    const BipartiteScenario& sc) {
  validate(sc);
  const double p_plus_w = sc.alpha * sc.alpha + sc.beta * sc.beta;
  const double p_minus_w = sc.gamma * sc.gamma;

  SingleUpdate plus_w;
  plus_w.probability = p_plus_w;
  if (p_plus_w > 0.0) {
    const QubitState& up = sc.alice_basis.plus_state;
    const QubitState& um = sc.alice_basis.minus_state;
    plus_w.state = QubitState::superposition(
        sc.alpha * up.plus + sc.beta * um.plus,
        sc.alpha * up.minus + sc.beta * um.minus);
  } else {
    plus_w.state = sc.alice_basis.plus_state;
  }

  SingleUpdate minus_w;
  minus_w.probability = p_minus_w;
  minus_w.state = sc.alice_basis.plus_state;
  return {plus_w, minus_w};
}

EnsembleSuperposition pointer_after_single_wm(const QubitState& pre_state,
                                              const BipartiteScenario& sc) {
  validate(sc);
  if (std::abs(inner(sc.post_select, pre_state)) <= 1e-12) {
    throw NearOrthogonalPostSelection(
        "pointer_after_single_wm: post-selection orthogonal to pre-state");
  }
  const QubitState& up = sc.alice_basis.plus_state;
  const QubitState& um = sc.alice_basis.minus_state;
  const double c_plus = real_part(
      inner(up, pre_state) * inner(sc.post_select, up), "pointer branch");
  const double c_minus = real_part(
      inner(um, pre_state) * inner(sc.post_select, um), "pointer branch");

  std::vector<EnsembleBranch> branches;
  if (c_plus != 0.0) {
    const double eps =
        pointer_shift(sc.g, weak_value(up, sc.post_select, sc.observable));
    branches.push_back({c_plus, eps});
  }
  if (c_minus != 0.0) {
    const double eps =
        pointer_shift(sc.g, weak_value(um, sc.post_select, sc.observable));
    branches.push_back({c_minus, eps});
  }
  return make_superposition(std::move(branches), 1, sc.shape);
}

QubitState qubit_b_given_sample(const ScenarioConfig& cfg,
                                const SampleVector& x) {
  validate(cfg);
  if (x.size() != static_cast<std::size_t>(cfg.n_pointers)) {
    throw LengthMismatch(
        "qubit_b_given_sample: sample length does not match n_pointers");
  }
  const PointerShifts eps = scenario_shifts(cfg);
  const double inv4s2 = 1.0 / (4.0 * cfg.shape.s * cfg.shape.s);

  // log A_+- = -sum_i (x_i - eps_+-)^2 / 4s^2, common constants dropped.
  double log_a_plus = 0.0, log_a_minus = 0.0;
  for (double xi : x) {
    const double dp = xi - eps.plus;
    const double dm = xi - eps.minus;
    log_a_plus -= dp * dp * inv4s2;
    log_a_minus -= dm * dm * inv4s2;
  }
  const double top = std::max(log_a_plus, log_a_minus);
  const double a_plus = std::exp(log_a_plus - top);
  const double a_minus = std::exp(log_a_minus - top);

  const double c_plus = cfg.alpha * a_plus + cfg.beta * a_minus;
  const double c_minus = cfg.gamma * a_plus;
  const double hyp = std::sqrt(c_plus * c_plus + c_minus * c_minus);
  if (!(hyp > 0.0) || !std::isfinite(hyp)) {
    throw NodeSample("qubit_b_given_sample: sample lies on a node");
  }
  return {{c_plus / hyp, 0.0}, {c_minus / hyp, 0.0}};
}

QubitState qubit_b_given_sample(const BipartiteScenario& sc, double x_m) {
  ScenarioConfig cfg;
  cfg.alpha = sc.alpha;
  cfg.beta = sc.beta;
  cfg.gamma = sc.gamma;
  cfg.n_pointers = 1;
  cfg.g = sc.g;
  cfg.shape = sc.shape;
  cfg.post_select = sc.post_select;
  cfg.observable = sc.observable;
  cfg.alice_basis = sc.alice_basis;
  return qubit_b_given_sample(cfg, SampleVector{x_m});
}

}  // namespace weakmeas
