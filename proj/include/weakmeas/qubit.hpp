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

#ifndef WEAKMEAS_QUBIT_HPP
#define WEAKMEAS_QUBIT_HPP

#include <array>
#include <complex>
#include <stdexcept>
#include <utility>

namespace weakmeas {

using Amplitude = std::complex<double>;

// Two-level state, coordinates in the sigma_z eigenbasis {|+>, |->}.
// Construction helpers return unit-norm states; arithmetic results may be
// unnormalized until normalized() is called.
struct QubitState {
  Amplitude plus{1.0, 0.0};
  Amplitude minus{0.0, 0.0};

  double norm() const;
  QubitState normalized() const;  // throws std::invalid_argument on zero norm

  static QubitState plus_z() { return {{1.0, 0.0}, {0.0, 0.0}}; }
  static QubitState minus_z() { return {{0.0, 0.0}, {1.0, 0.0}}; }
  static QubitState plus_x();
  static QubitState minus_x();
  // Normalizes (c_plus, c_minus).
  static QubitState superposition(Amplitude c_plus, Amplitude c_minus);
};

// Hermitian inner product <a|b>.
Amplitude inner(const QubitState& a, const QubitState& b);

// Orthonormal measurement basis obtained by rotating the sigma_z eigenbasis
// by theta in the x-z plane (half-angle parametrization):
//   |+theta> =  cos(theta/2)|+> + sin(theta/2)|->
//   |-theta> = -sin(theta/2)|+> + cos(theta/2)|->
// theta = 0 gives the sigma_z basis, theta = pi/2 the sigma_x basis.
struct SpinBasis {
  double theta = 0.0;
  QubitState plus_state = QubitState::plus_z();
  QubitState minus_state = QubitState::minus_z();
};

SpinBasis basis_from_angle(double theta);

// Pauli operator along a unit Bloch direction.
class Observable {
 public:
  static Observable sigma_x() { return Observable({1.0, 0.0, 0.0}); }
  static Observable sigma_y() { return Observable({0.0, 1.0, 0.0}); }
  static Observable sigma_z() { return Observable({0.0, 0.0, 1.0}); }
  // Normalizes (x, y, z); throws std::invalid_argument on a zero vector.
  static Observable along(double x, double y, double z);

  const std::array<double, 3>& bloch() const { return n_; }

  // O|s>; result is generally unnormalized.
  QubitState apply(const QubitState& s) const;

 private:
  explicit Observable(std::array<double, 3> n) : n_(n) {}
  std::array<double, 3> n_;
};

// Post-selection amplitude too small for a meaningful weak value.
class NearOrthogonalPostSelection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (p_plus, p_minus) for a projective measurement of `state` in `basis`.
std::pair<double, double> born_probabilities(const QubitState& state,
                                             const SpinBasis& basis);

// <post|O|pre> / <post|pre>. Throws NearOrthogonalPostSelection when
// |<post|pre>| <= 1e-12.
Amplitude weak_value(const QubitState& pre_state, const QubitState& post_state,
                     const Observable& obs);

// Pointer position shift for coupling strength g: eps = g * Re(wv).
double pointer_shift(double g, Amplitude wv);

}  // namespace weakmeas

#endif  // WEAKMEAS_QUBIT_HPP
