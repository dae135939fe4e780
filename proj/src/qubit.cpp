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

#include "weakmeas/qubit.hpp"

#include <cmath>

namespace weakmeas {

namespace {

constexpr double kOrthogonalityThreshold = 1e-12;

void require_finite(const Amplitude& a, const char* what) {
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
    throw std::invalid_argument(std::string(what) + ": non-finite amplitude");
  }
}

}  // namespace

double QubitState::norm() const {
  return std::sqrt(std::norm(plus) + std::norm(minus));
}

QubitState QubitState::normalized() const {
  require_finite(plus, "QubitState");
  require_finite(minus, "QubitState");
  const double n = norm();
  if (n <= 0.0 || !std::isfinite(n)) {
    throw std::invalid_argument("QubitState: cannot normalize zero state");
  }
  return {plus / n, minus / n};
}

QubitState QubitState::plus_x() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{r, 0.0}, {r, 0.0}};
}

QubitState QubitState::minus_x() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{r, 0.0}, {-r, 0.0}};
}

QubitState QubitState::superposition(Amplitude c_plus, Amplitude c_minus) {
  return QubitState{c_plus, c_minus}.normalized();
}

Amplitude inner(const QubitState& a, const QubitState& b) {
  return std::conj(a.plus) * b.plus + std::conj(a.minus) * b.minus;
}

SpinBasis basis_from_angle(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("basis_from_angle: theta must be finite");
  }
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  SpinBasis basis;
  basis.theta = theta;
  basis.plus_state = {{c, 0.0}, {s, 0.0}};
  basis.minus_state = {{-s, 0.0}, {c, 0.0}};
  return basis;
}

Observable Observable::along(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("Observable: direction must be nonzero");
  }
  return Observable({x / n, y / n, z / n});
}

QubitState Observable::apply(const QubitState& s) const {
  // Pauli matrix n.sigma in the sigma_z eigenbasis.
  const double nx = n_[0], ny = n_[1], nz = n_[2];
  const Amplitude off_upper{nx, -ny};  // n_x - i n_y
  const Amplitude off_lower{nx, ny};   // n_x + i n_y
  return {nz * s.plus + off_upper * s.minus, off_lower * s.plus - nz * s.minus};
}

std::pair<double, double> born_probabilities(const QubitState& state,
                                             const SpinBasis& basis) {
  const double p_plus = std::norm(inner(basis.plus_state, state));
  const double p_minus = std::norm(inner(basis.minus_state, state));
  return {p_plus, p_minus};
}

Amplitude weak_value(const QubitState& pre_state, const QubitState& post_state,
                     const Observable& obs) {
  const Amplitude denom = inner(post_state, pre_state);
  if (std::abs(denom) <= kOrthogonalityThreshold) {
    throw NearOrthogonalPostSelection(
        "weak_value: post-selection nearly orthogonal to pre-selected state");
  }
  const Amplitude num = inner(post_state, obs.apply(pre_state));
  return num / denom;
}

double pointer_shift(double g, Amplitude wv) {
  if (!(g >= 0.0) || !std::isfinite(g)) {
    throw std::invalid_argument("pointer_shift: g must be non-negative");
  }
  return g * wv.real();
}

}  // namespace weakmeas
