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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "weakmeas/qubit.hpp"
#include "weakmeas/rng.hpp"

using namespace weakmeas;

namespace {

QubitState random_state(Rng& rng) {
  return QubitState::superposition({rng.gauss(), rng.gauss()},
                                   {rng.gauss(), rng.gauss()});
}

}  // namespace

TEST_CASE("basis_from_angle reproduces the named special cases") {
  const SpinBasis z = basis_from_angle(0.0);
  CHECK(z.plus_state.plus.real() == 1.0);
  CHECK(z.plus_state.minus.real() == 0.0);
  CHECK(z.minus_state.minus.real() == 1.0);

  const SpinBasis x = basis_from_angle(std::numbers::pi / 2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(x.plus_state.plus.real() == doctest::Approx(r).epsilon(1e-15));
  CHECK(x.plus_state.minus.real() == doctest::Approx(r).epsilon(1e-15));
  CHECK(std::abs(inner(x.plus_state, QubitState::plus_x())) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(inner(x.minus_state, QubitState::minus_x())) ==
        doctest::Approx(1.0).epsilon(1e-15));

  const SpinBasis quarter = basis_from_angle(std::numbers::pi / 4);
  CHECK(quarter.plus_state.plus.real() ==
        doctest::Approx(std::cos(std::numbers::pi / 8)).epsilon(1e-15));
  CHECK(quarter.plus_state.minus.real() ==
        doctest::Approx(std::sin(std::numbers::pi / 8)).epsilon(1e-15));
  CHECK(quarter.plus_state.plus.real() == doctest::Approx(0.923880).epsilon(1e-6));
  CHECK(quarter.plus_state.minus.real() == doctest::Approx(0.382683).epsilon(1e-6));
}

TEST_CASE("random bases are orthonormal") {
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const double theta = (rng.uniform01() - 0.5) * 4.0 * std::numbers::pi;
    const SpinBasis basis = basis_from_angle(theta);
    CHECK(std::abs(inner(basis.plus_state, basis.minus_state)) < 1e-12);
    CHECK(std::abs(basis.plus_state.norm() - 1.0) < 1e-12);
    CHECK(std::abs(basis.minus_state.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("inner products") {
  CHECK(inner(QubitState::plus_z(), QubitState::plus_z()).real() == 1.0);
  CHECK(inner(QubitState::plus_x(), QubitState::plus_z()).real() ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

  const SpinBasis quarter = basis_from_angle(std::numbers::pi / 4);
  CHECK(inner(quarter.minus_state, QubitState::plus_z()).real() ==
        doctest::Approx(-std::sin(std::numbers::pi / 8)).epsilon(1e-15));
  CHECK(inner(quarter.minus_state, QubitState::plus_z()).real() ==
        doctest::Approx(-0.382683).epsilon(1e-6));
}

TEST_CASE("born probabilities") {
  const SpinBasis z = basis_from_angle(0.0);
  auto [p1, m1] = born_probabilities(QubitState::plus_z(), z);
  CHECK(p1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m1 == doctest::Approx(0.0).epsilon(1e-15));

  auto [p2, m2] = born_probabilities(QubitState::plus_x(), z);
  CHECK(p2 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m2 == doctest::Approx(0.5).epsilon(1e-14));

  const QubitState mixed = QubitState::superposition(
      {1.0 / std::sqrt(12.0), 0.0}, {std::sqrt(5.0 / 6.0), 0.0});
  auto [p3, m3] = born_probabilities(mixed, z);
  CHECK(p3 == doctest::Approx(1.0 / 11.0).epsilon(1e-13));
  CHECK(m3 == doctest::Approx(10.0 / 11.0).epsilon(1e-13));
}

TEST_CASE("born completeness for random states and bases") {
  Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    const QubitState state = random_state(rng);
    const SpinBasis basis = basis_from_angle(rng.uniform01() * 7.0 - 3.5);
    auto [p, m] = born_probabilities(state, basis);
    CHECK(std::abs(p + m - 1.0) < 1e-12);
  }
}

TEST_CASE("weak values of sigma_z between z eigenstates and |+x>") {
  const Observable sz = Observable::sigma_z();
  CHECK(weak_value(QubitState::plus_z(), QubitState::plus_x(), sz).real() ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(weak_value(QubitState::minus_z(), QubitState::plus_x(), sz).real() ==
        doctest::Approx(-1.0).epsilon(1e-15));

  // pre = post reduces to the expectation value.
  const Amplitude wv =
      weak_value(QubitState::plus_x(), QubitState::plus_x(), sz);
  CHECK(std::abs(wv) < 1e-14);
}

TEST_CASE("weak value beyond the eigenvalue range") {
  const QubitState pre = QubitState::superposition(
      {1.0 / std::sqrt(11.0), 0.0}, {std::sqrt(10.0 / 11.0), 0.0});
  const Amplitude wv =
      weak_value(pre, QubitState::plus_x(), Observable::sigma_z());
  const double expected =
      (1.0 - std::sqrt(10.0)) / (1.0 + std::sqrt(10.0));  // -0.5194939
  CHECK(wv.real() == doctest::Approx(expected).epsilon(1e-13));
  CHECK(std::abs(wv.imag()) < 1e-14);
}

TEST_CASE("weak value matches the expectation value when pre == post") {
  Rng rng(43);
  for (int i = 0; i < 100; ++i) {
    const QubitState state = random_state(rng);
    const Observable obs = Observable::along(rng.gauss(), rng.gauss(), rng.gauss());
    const Amplitude wv = weak_value(state, state, obs);
    const Amplitude expectation = inner(state, obs.apply(state));
    CHECK(std::abs(wv - expectation) < 1e-12);
  }
}

TEST_CASE("weak value of an eigenstate is the eigenvalue") {
  Rng rng(44);
  for (int i = 0; i < 100; ++i) {
    const double theta = rng.uniform01() * 2.0 * std::numbers::pi;
    // |+theta> is the +1 eigenstate of the Pauli operator along
    // (sin theta, 0, cos theta).
    const Observable obs = Observable::along(std::sin(theta), 0.0, std::cos(theta));
    const SpinBasis basis = basis_from_angle(theta);
    const QubitState post = random_state(rng);
    if (std::abs(inner(post, basis.plus_state)) < 1e-3) continue;
    const Amplitude wv = weak_value(basis.plus_state, post, obs);
    CHECK(std::abs(wv - Amplitude{1.0, 0.0}) < 1e-12);
  }
}

TEST_CASE("near-orthogonal post-selection is rejected") {
  CHECK_THROWS_AS(weak_value(QubitState::plus_x(), QubitState::minus_x(),
                             Observable::sigma_z()),
                  NearOrthogonalPostSelection);
}

TEST_CASE("pointer shift") {
  CHECK(pointer_shift(0.1, {1.0, 0.0}) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(pointer_shift(0.1, {0.0, 0.0}) == 0.0);
  const double wv = (1.0 - std::sqrt(10.0)) / (1.0 + std::sqrt(10.0));
  CHECK(pointer_shift(0.05, {wv, 0.7}) ==
        doctest::Approx(0.05 * wv).epsilon(1e-15));  // imaginary part ignored
  CHECK_THROWS_AS(pointer_shift(-0.1, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("observable construction and matrix action") {
  CHECK_THROWS_AS(Observable::along(0.0, 0.0, 0.0), std::invalid_argument);
  const Observable scaled = Observable::along(0.0, 0.0, 5.0);
  CHECK(scaled.bloch()[2] == doctest::Approx(1.0).epsilon(1e-15));

  const QubitState s{{0.3, 0.1}, {0.7, -0.2}};
  const QubitState zs = Observable::sigma_z().apply(s);
  CHECK(zs.plus == s.plus);
  CHECK(zs.minus == -s.minus);
  const QubitState xs = Observable::sigma_x().apply(s);
  CHECK(xs.plus == s.minus);
  CHECK(xs.minus == s.plus);
  const QubitState ys = Observable::sigma_y().apply(s);
  CHECK(ys.plus == Amplitude{0.0, -1.0} * s.minus);
  CHECK(ys.minus == Amplitude{0.0, 1.0} * s.plus);
}

TEST_CASE("normalization invariants") {
  Rng rng(45);
  for (int i = 0; i < 50; ++i) {
    const QubitState s = random_state(rng);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
  }
  const QubitState zero{{0.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(zero.normalized(), std::invalid_argument);
}
