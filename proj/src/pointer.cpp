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

#include "weakmeas/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace weakmeas {

namespace {

constexpr double kZeroNormThreshold = 1e-15;

void require_shape(const PointerShape& shape) {
  if (!(shape.s > 0.0) || !std::isfinite(shape.s)) {
    throw std::invalid_argument("PointerShape: s must be positive and finite");
  }
}

void require_superposition(const EnsembleSuperposition& psi) {
  require_shape(psi.shape);
  if (psi.n_pointers < 1) {
    throw std::invalid_argument("EnsembleSuperposition: n_pointers must be >= 1");
  }
  if (psi.branches.empty()) {
    throw std::invalid_argument("EnsembleSuperposition: no branches");
  }
  bool any_nonzero = false;
  for (const auto& b : psi.branches) {
    if (!std::isfinite(b.coeff) || !std::isfinite(b.shift)) {
      throw std::invalid_argument("EnsembleBranch: non-finite value");
    }
    any_nonzero = any_nonzero || b.coeff != 0.0;
  }
  if (!any_nonzero) {
    throw std::invalid_argument("EnsembleSuperposition: all coefficients zero");
  }
}

}  // namespace

EnsembleSuperposition make_superposition(std::vector<EnsembleBranch> branches,
                                         int n_pointers, PointerShape shape) {
  EnsembleSuperposition psi{std::move(branches), n_pointers, shape};
  require_superposition(psi);
  if (squared_norm(psi) <= kZeroNormThreshold) {
    throw ZeroNorm("EnsembleSuperposition: squared norm is not positive");
  }
  return psi;
}

double single_overlap(double eps1, double eps2, const PointerShape& shape) {
  require_shape(shape);
  const double d = eps1 - eps2;
  return std::exp(-d * d / (8.0 * shape.s * shape.s));
}

double ensemble_overlap(double eps1, double eps2, const PointerShape& shape,
                        long n) {
  require_shape(shape);
  if (n < 1) {
    throw std::invalid_argument("ensemble_overlap: n must be >= 1");
  }
  const double d = eps1 - eps2;
  return std::exp(-static_cast<double>(n) * d * d / (8.0 * shape.s * shape.s));
}

double squared_norm(const EnsembleSuperposition& psi) {
  double total = 0.0;
  const auto& br = psi.branches;
  for (std::size_t k = 0; k < br.size(); ++k) {
    total += br[k].coeff * br[k].coeff;
    for (std::size_t l = k + 1; l < br.size(); ++l) {
      total += 2.0 * br[k].coeff * br[l].coeff *
               ensemble_overlap(br[k].shift, br[l].shift, psi.shape,
                                psi.n_pointers);
    }
  }
  return total;
}

SignedLog log_density(const SampleVector& x, const EnsembleSuperposition& psi) {
  require_superposition(psi);
  if (x.size() != static_cast<std::size_t>(psi.n_pointers)) {
    throw LengthMismatch("log_density: sample length does not match n_pointers");
  }
  const double inv4s2 = 1.0 / (4.0 * psi.shape.s * psi.shape.s);

  // Per-branch log terms log|c_k| - sum_i (x_i - eps_k)^2 / 4s^2.
  std::vector<double> terms;
  std::vector<int> signs;
  terms.reserve(psi.branches.size());
  signs.reserve(psi.branches.size());
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& b : psi.branches) {
    if (b.coeff == 0.0) continue;
    double q = 0.0;
    for (double xi : x) {
      const double d = xi - b.shift;
      q += d * d;
    }
    const double t = std::log(std::abs(b.coeff)) - q * inv4s2;
    terms.push_back(t);
    signs.push_back(b.coeff > 0.0 ? +1 : -1);
    top = std::max(top, t);
  }

  double acc = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    acc += signs[k] * std::exp(terms[k] - top);
  }
  if (acc == 0.0 || top == -std::numeric_limits<double>::infinity()) {
    return SignedLog::zero();
  }
  return {2.0 * (top + std::log(std::abs(acc))), +1};
}

double normal_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

double XiMixture::density(double xi) const {
  double d = 0.0;
  for (const auto& c : components) {
    d += c.weight * normal_pdf(xi, c.mean, c.stddev);
  }
  if (d < 0.0 && d >= -1e-15) return 0.0;
  return d;
}

double XiMixture::mean() const {
  double m = 0.0;
  for (const auto& c : components) m += c.weight * c.mean;
  return m;
}

double XiMixture::stddev() const {
  if (components.size() == 1) return components.front().stddev;
  const double m = mean();
  double second = 0.0;
  for (const auto& c : components) {
    second += c.weight * (c.stddev * c.stddev + c.mean * c.mean);
  }
  return std::sqrt(std::max(0.0, second - m * m));
}

XiMixture xi_mixture(const EnsembleSuperposition& psi) {
  require_superposition(psi);
  const double sd = psi.shape.s / std::sqrt(static_cast<double>(psi.n_pointers));
  const auto& br = psi.branches;

  XiMixture mix;
  double total = 0.0;
  for (std::size_t k = 0; k < br.size(); ++k) {
    if (br[k].coeff == 0.0) continue;
    const double diag = br[k].coeff * br[k].coeff;
    mix.components.push_back({diag, br[k].shift, sd});
    total += diag;
    for (std::size_t l = k + 1; l < br.size(); ++l) {
      if (br[l].coeff == 0.0) continue;
      const double w = 2.0 * br[k].coeff * br[l].coeff *
                       ensemble_overlap(br[k].shift, br[l].shift, psi.shape,
                                        psi.n_pointers);
      mix.components.push_back({w, 0.5 * (br[k].shift + br[l].shift), sd});
      total += w;
    }
  }
  if (total <= kZeroNormThreshold) {
    throw ZeroNorm("xi_mixture: total weight is not positive");
  }
  for (auto& c : mix.components) c.weight /= total;
  return mix;
}

std::pair<double, double> xi_moments(const EnsembleSuperposition& psi) {
  const XiMixture mix = xi_mixture(psi);
  return {mix.mean(), mix.stddev()};
}

double xi_density(const EnsembleSuperposition& psi, double xi) {
  return xi_mixture(psi).density(xi);
}

}  // namespace weakmeas
