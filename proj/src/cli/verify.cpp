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

#include "weakmeas/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "weakmeas/cli/table.hpp"
#include "weakmeas/sampler.hpp"

namespace weakmeas::cli {

namespace {

std::string describe(double measured, double expected, double tol) {
  std::ostringstream ss;
  ss << "measured=" << measured << " expected=" << expected << " tol=" << tol;
  return ss.str();
}

double simpson(const std::function<double(double)>& f, double a, double b,
               int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) {
    sum += f(a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// Overlap of two normalized Gaussian wavefunctions by direct integration.
double overlap_by_quadrature(double eps1, double eps2, double s) {
  const double c = 1.0 / std::sqrt(s * std::sqrt(2.0 * std::numbers::pi));
  auto wf = [&](double x, double eps) {
    const double d = x - eps;
    return c * std::exp(-d * d / (4.0 * s * s));
  };
  const double lo = std::min(eps1, eps2) - 12.0 * s;
  const double hi = std::max(eps1, eps2) + 12.0 * s;
  return simpson([&](double x) { return wf(x, eps1) * wf(x, eps2); }, lo, hi,
                 20000);
}

double normal_cdf(double x, double mean, double sd) {
  return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

double mixture_mass(const XiMixture& mix, double lo, double hi) {
  double mass = 0.0;
  for (const auto& c : mix.components) {
    mass += c.weight *
            (normal_cdf(hi, c.mean, c.stddev) - normal_cdf(lo, c.mean, c.stddev));
  }
  return mass;
}

// Total-variation distance between the empirical distribution of `samples`
// and the mixture, over `bins` cells plus one out-of-range cell.
double tv_distance(const std::vector<double>& samples, const XiMixture& mix,
                   double lo, double hi, int bins) {
  Histogram hist(lo, hi, bins);
  for (double x : samples) hist.add(x);
  const double n = static_cast<double>(hist.total);
  double tv = 0.0;
  const double width = hist.bin_width();
  for (int i = 0; i < bins; ++i) {
    const double p_hat = hist.counts[static_cast<std::size_t>(i)] / n;
    const double p = mixture_mass(mix, lo + i * width, lo + (i + 1) * width);
    tv += std::abs(p_hat - p);
  }
  const double outside_hat = static_cast<double>(hist.outside) / n;
  const double outside = 1.0 - mixture_mass(mix, lo, hi);
  tv += std::abs(outside_hat - outside);
  return 0.5 * tv;
}

// Merges mixture components that share a mean, so two decompositions of the
// same law can be compared weight-by-weight.
std::map<double, double> component_map(const std::vector<MixtureComponent>& cs) {
  std::map<double, double> merged;
  for (const auto& c : cs) {
    bool found = false;
    for (auto& [mean, weight] : merged) {
      if (std::abs(mean - c.mean) < 1e-12) {
        weight += c.weight;
        found = true;
        break;
      }
    }
    if (!found) merged[c.mean] += c.weight;
  }
  return merged;
}

CheckResult check_no_signaling(const ScenarioConfig& sc, double corruption) {
  CheckResult result{"no-signaling (theta-independent total norm)", true, ""};
  const std::vector<double> thetas{0.0, std::numbers::pi / 8,
                                   std::numbers::pi / 4,
                                   3 * std::numbers::pi / 8,
                                   std::numbers::pi / 2};
  const double reference = frame_Rprime_state(sc).total_squared_norm;
  double worst = 0.0;
  for (double theta : thetas) {
    const auto [plus, minus] = update_after_B(sc, basis_from_angle(theta));
    double total = plus.raw_norm + minus.raw_norm;
    if (theta == std::numbers::pi / 4) total += corruption;
    worst = std::max(worst, std::abs(total - reference));
  }
  result.pass = worst <= 1e-12;
  result.detail = describe(worst, 0.0, 1e-12);
  return result;
}

CheckResult check_frame_consistency(const ScenarioConfig& sc) {
  CheckResult result{"frame consistency (R branches vs R' reduced density)",
                     true, ""};
  const XiMixture unconditional = unconditional_xi_density(sc);

  // Reduced density assembled from the frame-R' joint state.
  const FrameRPrimeState rp = frame_Rprime_state(sc);
  std::vector<MixtureComponent> raw;
  auto add_raw = [&](const std::optional<EnsembleSuperposition>& amp) {
    if (!amp) return;
    const double sd =
        amp->shape.s / std::sqrt(static_cast<double>(amp->n_pointers));
    const auto& br = amp->branches;
    for (std::size_t k = 0; k < br.size(); ++k) {
      raw.push_back({br[k].coeff * br[k].coeff, br[k].shift, sd});
      for (std::size_t l = k + 1; l < br.size(); ++l) {
        raw.push_back({2.0 * br[k].coeff * br[l].coeff *
                           ensemble_overlap(br[k].shift, br[l].shift,
                                            amp->shape, amp->n_pointers),
                       0.5 * (br[k].shift + br[l].shift), sd});
      }
    }
  };
  add_raw(rp.plus_w_amplitude);
  add_raw(rp.minus_w_amplitude);
  for (auto& c : raw) c.weight /= rp.total_squared_norm;

  const auto lhs = component_map(unconditional.components);
  const auto rhs = component_map(raw);
  double worst = lhs.size() == rhs.size() ? 0.0 : 1.0;
  if (worst == 0.0) {
    auto it_l = lhs.begin();
    auto it_r = rhs.begin();
    for (; it_l != lhs.end(); ++it_l, ++it_r) {
      worst = std::max(worst, std::abs(it_l->first - it_r->first));
      worst = std::max(worst, std::abs(it_l->second - it_r->second));
    }
  }
  result.pass = worst <= 1e-12;
  result.detail = describe(worst, 0.0, 1e-12);
  return result;
}

CheckResult check_overlap_quadrature(const ScenarioConfig&) {
  CheckResult result{"overlap closed form vs quadrature", true, ""};
  const std::vector<double> eps{0.0, 0.1, -0.1, 0.3, -0.3};
  const std::vector<double> widths{1.0, 1.0 / std::sqrt(2.0)};
  double worst = 0.0;
  for (double s : widths) {
    for (double e1 : eps) {
      for (double e2 : eps) {
        const double closed = single_overlap(e1, e2, PointerShape{s});
        const double quad = overlap_by_quadrature(e1, e2, s);
        worst = std::max(worst, std::abs(closed - quad) / closed);
      }
    }
  }
  result.pass = worst <= 1e-8;
  result.detail = describe(worst, 0.0, 1e-8);
  return result;
}

CheckResult check_xi_scaling(const ScenarioConfig& sc) {
  CheckResult result{"xi concentration (std = s/sqrt(N))", true, ""};
  std::ostringstream detail;
  bool pass = true;

  for (int n : {50, 200}) {
    const auto target = make_superposition({{1.0, sc.g}}, n, sc.shape);
    const auto [mean, stddev] = xi_moments(target);
    const double expected = sc.shape.s / std::sqrt(static_cast<double>(n));
    if (stddev != expected || std::abs(mean - sc.g) > 1e-15) {
      pass = false;
      detail << "analytic moments off at N=" << n << "; ";
    }
    MHConfig mh;
    mh.n_iterations = 10L * n + 60000;
    mh.burn_in = 10L * n;
    mh.thinning = 5;
    mh.seed = 97;
    const SampleRecord rec = run_chain(target, mh);
    double acc = 0.0;
    for (double xi : rec.xi_values) acc += xi;
    const double m = acc / static_cast<double>(rec.xi_values.size());
    double var = 0.0;
    for (double xi : rec.xi_values) var += (xi - m) * (xi - m);
    var /= static_cast<double>(rec.xi_values.size() - 1);
    const double rel = std::abs(std::sqrt(var) - expected) / expected;
    if (rel > 0.05) {
      pass = false;
      detail << "empirical std rel err " << rel << " at N=" << n << "; ";
    }
  }

  // Overlap decay: monotone in N and below 1e-6 past the analytic threshold.
  const double delta = 0.2;
  double prev = 1.0;
  for (int n = 1; n <= 64; n *= 2) {
    const double o = ensemble_overlap(0.1, -0.1, sc.shape, n);
    if (o >= prev) {
      pass = false;
      detail << "overlap not decreasing at N=" << n << "; ";
    }
    prev = o;
  }
  const long threshold = static_cast<long>(
      std::ceil(8.0 * sc.shape.s * sc.shape.s * 14.0 / (delta * delta)));
  if (ensemble_overlap(0.1, -0.1, sc.shape, threshold) >= 1e-6) {
    pass = false;
    detail << "overlap above 1e-6 at threshold N=" << threshold << "; ";
  }

  result.pass = pass;
  result.detail = pass ? "all scaling checks within tolerance" : detail.str();
  return result;
}

CheckResult check_oracle_convergence(const ScenarioConfig& sc) {
  CheckResult result{"MH histogram converges to analytic mixture", true, ""};
  const auto [plus, minus] = update_after_B(sc, basis_from_angle(0.0));
  const EnsembleSuperposition& target = *plus.superposition;
  const XiMixture mix = xi_mixture(target);

  MHConfig mh;
  mh.thinning = 5;
  mh.burn_in = 10L * sc.n_pointers;
  mh.seed = 1234;

  std::vector<double> tvs;
  for (long retained : {2000L, 20000L}) {
    mh.n_iterations = mh.burn_in + retained * mh.thinning;
    const SampleRecord rec = run_chains(target, mh, 8);
    tvs.push_back(tv_distance(rec.xi_values, mix, -0.25, 0.25, 50));
  }
  const bool pass = tvs.back() < tvs.front() && tvs.back() <= 0.08;
  result.pass = pass;
  std::ostringstream ss;
  ss << "tv(2e3)=" << tvs.front() << " tv(2e4)=" << tvs.back()
     << " (must decrease and end <= 0.08)";
  result.detail = ss.str();
  return result;
}

}  // namespace

std::vector<CheckResult> run_verification(const RunConfig& cfg,
                                          const VerifyOptions& options) {
  const ScenarioConfig sc = cfg.scenario();
  std::vector<CheckResult> results;
  results.push_back(check_no_signaling(sc, options.corrupt_weights));
  results.push_back(check_frame_consistency(sc));
  results.push_back(check_overlap_quadrature(sc));
  results.push_back(check_xi_scaling(sc));
  results.push_back(check_oracle_convergence(sc));
  return results;
}

bool report_verification(const std::vector<CheckResult>& results,
                         std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail
        << "\n";
    all = all && r.pass;
  }
  out << (all ? "verification passed" : "verification FAILED") << "\n";
  return all;
}

}  // namespace weakmeas::cli
