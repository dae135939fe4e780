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

#ifndef WEAKMEAS_POINTER_HPP
#define WEAKMEAS_POINTER_HPP

#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace weakmeas {

// Gaussian pointer profile. `s` is the standard deviation of the position
// probability density |phi|^2, in position units. A wavefunction written as
// exp(-x^2 / 4d^2) has s = d; one written as exp(-x^2 / 2d^2) has s = d/sqrt(2).
struct PointerShape {
  double s = 1.0;
};

// One term of a superposition of shifted pointer product states: the
// (real) coefficient and the common position shift of all N pointers.
struct EnsembleBranch {
  double coeff = 0.0;
  double shift = 0.0;
};

// Superposition sum_k coeff_k |Phi^{shift_k}> over N identical Gaussian
// pointers, |Phi^eps> = prod_i |phi_i^eps>. Kept unnormalized; the squared
// norm is available via squared_norm().
struct EnsembleSuperposition {
  std::vector<EnsembleBranch> branches;
  int n_pointers = 1;
  PointerShape shape;
};

class LengthMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Superposition with non-positive squared norm (fully destructive).
class ZeroNorm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Validating constructor: requires n >= 1, s > 0, finite branch values, at
// least one nonzero coefficient and a positive squared norm.
EnsembleSuperposition make_superposition(std::vector<EnsembleBranch> branches,
                                         int n_pointers, PointerShape shape);

// Measured pointer positions X_1..X_N.
using SampleVector = std::vector<double>;

// Value stored as (log magnitude, sign); sign 0 encodes an exact zero with
// log_abs = -infinity, so destructive interference nodes stay representable.
struct SignedLog {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static SignedLog zero() { return {}; }
  bool is_zero() const { return sign == 0; }
};

// <phi^eps1|phi^eps2> = exp(-(eps1-eps2)^2 / 8 s^2) for real Gaussian
// wavefunctions of position-density std s.
double single_overlap(double eps1, double eps2, const PointerShape& shape);

// N-pointer product overlap, single_overlap^n = exp(-n (eps1-eps2)^2 / 8 s^2).
double ensemble_overlap(double eps1, double eps2, const PointerShape& shape,
                        long n);

// <Psi|Psi> = sum_{k,l} c_k c_l * single_overlap(eps_k, eps_l)^N.
double squared_norm(const EnsembleSuperposition& psi);

// log pi(X) where pi(X) = (sum_k c_k prod_i exp(-(x_i - eps_k)^2 / 4 s^2))^2.
// Evaluated as a sign-tracked log-sum over branches, then doubled; an exact
// zero returns SignedLog::zero(). Normalization constants are dropped.
// Throws LengthMismatch when x.size() != N.
SignedLog log_density(const SampleVector& x, const EnsembleSuperposition& psi);

struct MixtureComponent {
  double weight = 0.0;  // may be negative (interference term)
  double mean = 0.0;
  double stddev = 0.0;
};

// Exact law of the ensemble-mean position xi = sum_i X_i / N: a Gaussian
// mixture with one component per branch pair, all with std s/sqrt(N).
// Weights sum to 1; cross components may carry negative weight, but the
// density is non-negative wherever it is evaluated.
struct XiMixture {
  std::vector<MixtureComponent> components;

  double density(double xi) const;  // clamps round-off in [-1e-15, 0) to 0
  double mean() const;
  double stddev() const;
};

// Expanding |Psi(X)|^2 gives, for each branch pair (k,l), a product-Gaussian
// component with mean (eps_k + eps_l)/2 and weight c_k c_l overlap^N; under
// each component xi is Gaussian with std s/sqrt(N). Throws ZeroNorm when the
// total weight is <= 1e-15.
XiMixture xi_mixture(const EnsembleSuperposition& psi);

// (mean, std) of xi, including the between-component spread.
std::pair<double, double> xi_moments(const EnsembleSuperposition& psi);

double xi_density(const EnsembleSuperposition& psi, double xi);

double normal_pdf(double x, double mean, double sd);

}  // namespace weakmeas

#endif  // WEAKMEAS_POINTER_HPP
