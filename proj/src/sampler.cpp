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

#include "weakmeas/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

namespace weakmeas {

namespace {

struct ResolvedConfig {
  double sigma_q;
  long n_iterations;
  long burn_in;
  long thinning;
  std::uint64_t seed;
  InitPolicy init;
  int init_branch;
};

ResolvedConfig resolve(const EnsembleSuperposition& target,
                       const MHConfig& cfg) {
  if (cfg.n_iterations < 0) {
    throw std::invalid_argument("MHConfig: n_iterations must be >= 0");
  }
  if (cfg.burn_in < 0 || cfg.burn_in > cfg.n_iterations) {
    throw std::invalid_argument("MHConfig: burn_in must be in [0, n_iterations]");
  }
  if (cfg.thinning < 1) {
    throw std::invalid_argument("MHConfig: thinning must be >= 1");
  }
  double sigma = cfg.sigma_q;
  if (sigma <= 0.0) sigma = default_sigma(target.n_pointers, target.shape);
  if (cfg.init == InitPolicy::at_branch_mean &&
      (cfg.init_branch < 0 ||
       static_cast<std::size_t>(cfg.init_branch) >= target.branches.size())) {
    throw std::invalid_argument("MHConfig: init_branch out of range");
  }
  return {sigma,    cfg.n_iterations, cfg.burn_in, cfg.thinning,
          cfg.seed, cfg.init,         cfg.init_branch};
}

// forced_branch >= 0 overrides the random branch pick of from_mixture.
ChainState make_init(const EnsembleSuperposition& target,
                     const ResolvedConfig& cfg, Rng& rng, int forced_branch) {
  const int n = target.n_pointers;
  SampleVector x(static_cast<std::size_t>(n), 0.0);
  switch (cfg.init) {
    case InitPolicy::at_origin:
      break;
    case InitPolicy::at_branch_mean:
      std::fill(x.begin(), x.end(), target.branches[cfg.init_branch].shift);
      break;
    case InitPolicy::from_mixture: {
      std::size_t pick = 0;
      if (forced_branch >= 0) {
        pick = static_cast<std::size_t>(forced_branch);
      } else {
        double total = 0.0;
        for (const auto& b : target.branches) total += b.coeff * b.coeff;
        const double u = rng.uniform01() * total;
        double acc = 0.0;
        for (std::size_t k = 0; k < target.branches.size(); ++k) {
          acc += target.branches[k].coeff * target.branches[k].coeff;
          pick = k;
          if (u < acc) break;
        }
      }
      const double shift = target.branches[pick].shift;
      for (auto& xi : x) xi = rng.gauss(shift, target.shape.s);
      break;
    }
  }
  SignedLog lp = log_density(x, target);
  if (lp.is_zero()) {
    throw InitOnNode("run_chain: initial state has zero target density");
  }
  return {std::move(x), lp};
}

struct ChainOutput {
  SampleRecord record;
  SampleVector last_retained;
  bool has_retained = false;
};

ChainOutput run_single(const EnsembleSuperposition& target,
                       const ResolvedConfig& cfg, int forced_branch,
                       bool keep_state) {
  if (squared_norm(target) <= 1e-15) {
    throw ZeroNorm("run_chain: target has zero norm");
  }
  Rng rng(cfg.seed);
  ChainState state = make_init(target, cfg, rng, forced_branch);

  ChainOutput out;
  const long n_retained =
      cfg.n_iterations > cfg.burn_in
          ? (cfg.n_iterations - cfg.burn_in) / cfg.thinning
          : 0;
  out.record.xi_values.reserve(static_cast<std::size_t>(n_retained));

  const double inv_n = 1.0 / static_cast<double>(target.n_pointers);
  for (long t = 1; t <= cfg.n_iterations; ++t) {
    SampleVector proposal = propose(state.x, cfg.sigma_q, rng);
    const SignedLog lp_star = log_density(proposal, target);
    const double alpha = accept_prob(lp_star, state.log_pi);
    const double y = rng.uniform01();
    if (y < alpha) {
      state.x = std::move(proposal);
      state.log_pi = lp_star;
      ++out.record.accept_count;
    }
    if (state.log_pi.is_zero()) {
      throw InvalidChainState("run_chain: chain reached a zero-density state");
    }
    if (t > cfg.burn_in && (t - cfg.burn_in) % cfg.thinning == 0) {
      const double xi =
          std::accumulate(state.x.begin(), state.x.end(), 0.0) * inv_n;
      out.record.xi_values.push_back(xi);
      if (keep_state) {
        out.last_retained = state.x;
        out.has_retained = true;
      }
    }
  }
  out.record.total_proposals = cfg.n_iterations;
  return out;
}

// Largest-remainder apportionment of n_chains starting branches, proportional
// to the squared branch coefficients.
std::vector<int> branch_assignment(const EnsembleSuperposition& target,
                                   int n_chains) {
  const std::size_t k = target.branches.size();
  double total = 0.0;
  for (const auto& b : target.branches) total += b.coeff * b.coeff;
  std::vector<int> counts(k, 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  int assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double exact =
        n_chains * target.branches[i].coeff * target.branches[i].coeff / total;
    counts[i] = static_cast<int>(std::floor(exact));
    assigned += counts[i];
    remainders.push_back({exact - counts[i], i});
  }
  std::sort(remainders.begin(), remainders.end(), [](auto a, auto b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  });
  for (int j = 0; j < n_chains - assigned; ++j) {
    counts[remainders[static_cast<std::size_t>(j) % k].second] += 1;
  }
  std::vector<int> assignment;
  assignment.reserve(static_cast<std::size_t>(n_chains));
  for (std::size_t i = 0; i < k; ++i) {
    assignment.insert(assignment.end(), counts[i], static_cast<int>(i));
  }
  return assignment;
}

}  // namespace

double default_sigma(long n, const PointerShape& shape) {
  if (n < 1) throw std::invalid_argument("default_sigma: n must be >= 1");
  if (!(shape.s > 0.0)) {
    throw std::invalid_argument("default_sigma: invalid pointer shape");
  }
  return 2.4 * shape.s / std::sqrt(static_cast<double>(n));
}

SampleVector propose(const SampleVector& x_t, double sigma_q, Rng& rng) {
  if (!(sigma_q > 0.0)) {
    throw std::invalid_argument("propose: sigma_q must be positive");
  }
  SampleVector out(x_t.size());
  for (std::size_t i = 0; i < x_t.size(); ++i) {
    out[i] = x_t[i] + sigma_q * rng.gauss();
  }
  return out;
}

double accept_prob(const SignedLog& log_pi_star, const SignedLog& log_pi_t) {
  if (log_pi_t.is_zero()) {
    throw InvalidChainState("accept_prob: current state has zero density");
  }
  if (log_pi_star.is_zero()) return 0.0;
  const double log_ratio = log_pi_star.log_abs - log_pi_t.log_abs;
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

SampleRecord run_chain(const EnsembleSuperposition& target,
                       const MHConfig& cfg) {
  return run_single(target, resolve(target, cfg), -1, false).record;
}

SampleRecord run_chains(const EnsembleSuperposition& target,
                        const MHConfig& cfg, int n_chains, int max_threads) {
  if (n_chains < 1) {
    throw std::invalid_argument("run_chains: n_chains must be >= 1");
  }
  if (n_chains == 1) return run_chain(target, cfg);

  const ResolvedConfig base = resolve(target, cfg);
  std::vector<int> forced(static_cast<std::size_t>(n_chains), -1);
  if (base.init == InitPolicy::from_mixture) {
    forced = branch_assignment(target, n_chains);
  }

  std::vector<SampleRecord> results(static_cast<std::size_t>(n_chains));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const int j = next.fetch_add(1);
      if (j >= n_chains) return;
      try {
        ResolvedConfig chain_cfg = base;
        chain_cfg.seed = base.seed + static_cast<std::uint64_t>(j);
        results[static_cast<std::size_t>(j)] =
            run_single(target, chain_cfg, forced[static_cast<std::size_t>(j)],
                       false)
                .record;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  int n_threads = max_threads > 0
                      ? max_threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::clamp(n_threads, 1, n_chains);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  // Merge in ascending seed order so the output is scheduling-independent.
  SampleRecord merged;
  std::size_t total_xi = 0;
  for (const auto& r : results) total_xi += r.xi_values.size();
  merged.xi_values.reserve(total_xi);
  for (const auto& r : results) {
    merged.xi_values.insert(merged.xi_values.end(), r.xi_values.begin(),
                            r.xi_values.end());
    merged.accept_count += r.accept_count;
    merged.total_proposals += r.total_proposals;
  }
  return merged;
}

SampleVector one_shot(const EnsembleSuperposition& target,
                      const MHConfig& cfg) {
  const ResolvedConfig resolved = resolve(target, cfg);
  ChainOutput out = run_single(target, resolved, -1, true);
  if (!out.has_retained) {
    throw std::invalid_argument(
        "one_shot: configuration retains no state (≥ 1 retained iteration "
        "required)");
  }
  return out.last_retained;
}

std::vector<double> mode_fractions(const std::vector<double>& xi_values,
                                   const EnsembleSuperposition& target) {
  std::vector<double> fractions(target.branches.size(), 0.0);
  if (xi_values.empty() || target.branches.empty()) return fractions;
  for (double xi : xi_values) {
    std::size_t best = 0;
    double best_dist = std::abs(xi - target.branches[0].shift);
    for (std::size_t k = 1; k < target.branches.size(); ++k) {
      const double d = std::abs(xi - target.branches[k].shift);
      if (d < best_dist) {
        best_dist = d;
        best = k;
      }
    }
    fractions[best] += 1.0;
  }
  for (auto& f : fractions) f /= static_cast<double>(xi_values.size());
  return fractions;
}

}  // namespace weakmeas
