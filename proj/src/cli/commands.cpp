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

#include "weakmeas/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "weakmeas/cli/svg.hpp"
#include "weakmeas/cli/table.hpp"
#include "weakmeas/sampler.hpp"

namespace weakmeas::cli {

namespace {

namespace fs = std::filesystem;

std::string meta(const std::string& key, double v) {
  return key + " = " + format_double(v);
}

std::string meta(const std::string& key, long v) {
  return key + " = " + std::to_string(v);
}

std::string meta(const std::string& key, std::uint64_t v) {
  return key + " = " + std::to_string(v);
}

std::string theta_file_tag(std::size_t index) {
  return std::to_string(index);
}

std::vector<std::string> scenario_metadata(const RunConfig& cfg) {
  return {
      meta("alpha", cfg.alpha),
      meta("beta", cfg.beta),
      meta("gamma", cfg.gamma),
      meta("n_pointers", static_cast<long>(cfg.n_pointers)),
      meta("g", cfg.g),
      meta("pointer_s", cfg.pointer_s),
  };
}

struct OutcomeRun {
  OutcomeBranch branch;
  SampleRecord record;
};

OutcomeRun run_outcome(const RunConfig& cfg, const OutcomeBranch& branch,
                       std::uint64_t seed_offset) {
  OutcomeRun run;
  run.branch = branch;
  if (!branch.superposition) return run;  // impossible outcome, no samples
  MHConfig mh = cfg.mh_config();
  mh.seed += seed_offset;
  run.record = run_chains(*branch.superposition, mh, cfg.mh.chains);
  return run;
}

void append_histogram_columns(Table& table, const Histogram& hist) {
  const double width = hist.bin_width();
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    table.rows.push_back({hist.lo + width * static_cast<double>(i),
                          hist.lo + width * static_cast<double>(i + 1)});
  }
}

std::string format_fractions(const std::vector<double>& fractions) {
  std::string out;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    out += format_double(fractions[i]);
    if (i + 1 < fractions.size()) out += ";";
  }
  return out;
}

}  // namespace

int cmd_branches(const RunConfig& cfg, std::ostream& out) {
  const ScenarioConfig sc = cfg.scenario();
  const PointerShifts eps = scenario_shifts(sc);
  out << "theta,outcome,coeff_eps_plus,coeff_eps_minus,eps_plus,eps_minus,"
         "raw_norm,weight\n";
  for (double theta : cfg.thetas) {
    const auto [plus, minus] = update_after_B(sc, basis_from_angle(theta));
    for (const OutcomeBranch* o : {&plus, &minus}) {
      out << format_double(theta) << "," << (o->label.sign > 0 ? "+" : "-")
          << "," << format_double(o->coeff_plus_shift) << ","
          << format_double(o->coeff_minus_shift) << ","
          << format_double(eps.plus) << "," << format_double(eps.minus) << ","
          << format_double(o->raw_norm) << "," << format_double(o->weight)
          << "\n";
    }
  }
  return kExitOk;
}

int cmd_xi_oracle(const RunConfig& cfg, std::ostream& out) {
  const ScenarioConfig sc = cfg.scenario();
  const XiMixture unconditional = unconditional_xi_density(sc);
  const double width =
      (cfg.hist.xi_max - cfg.hist.xi_min) / static_cast<double>(cfg.hist.bins);

  for (std::size_t i = 0; i < cfg.thetas.size(); ++i) {
    const double theta = cfg.thetas[i];
    const auto [plus, minus] = update_after_B(sc, basis_from_angle(theta));
    std::optional<XiMixture> mix_plus, mix_minus;
    if (plus.superposition) mix_plus = xi_mixture(*plus.superposition);
    if (minus.superposition) mix_minus = xi_mixture(*minus.superposition);

    Table table;
    table.metadata = scenario_metadata(cfg);
    table.metadata.push_back(meta("theta", theta));
    table.metadata.push_back(meta("weight_plus", plus.weight));
    table.metadata.push_back(meta("weight_minus", minus.weight));
    table.columns = {"xi", "density_plus", "density_minus", "density_total"};
    for (int b = 0; b < cfg.hist.bins; ++b) {
      const double xi = cfg.hist.xi_min + width * (b + 0.5);
      const double dp =
          mix_plus ? plus.weight * mix_plus->density(xi) : 0.0;
      const double dm =
          mix_minus ? minus.weight * mix_minus->density(xi) : 0.0;
      table.rows.push_back({xi, dp, dm, unconditional.density(xi)});
    }
    const fs::path path =
        fs::path(cfg.out_dir) / ("xi_oracle_" + theta_file_tag(i) + ".csv");
    table.write_csv(path);
    out << "wrote " << path.string() << "\n";
  }
  return kExitOk;
}

int cmd_mh_run(const RunConfig& cfg, std::ostream& out) {
  const ScenarioConfig sc = cfg.scenario();
  const XiMixture unconditional = unconditional_xi_density(sc);

  for (std::size_t i = 0; i < cfg.thetas.size(); ++i) {
    const double theta = cfg.thetas[i];
    const auto [plus, minus] = update_after_B(sc, basis_from_angle(theta));
    // Distinct seed offsets per (theta, outcome) so no chain is reused.
    const OutcomeRun run_plus =
        run_outcome(cfg, plus, 2 * i * static_cast<std::uint64_t>(cfg.mh.chains));
    const OutcomeRun run_minus = run_outcome(
        cfg, minus, (2 * i + 1) * static_cast<std::uint64_t>(cfg.mh.chains));

    Table table;
    table.metadata = scenario_metadata(cfg);
    table.metadata.push_back(meta("theta", theta));
    table.metadata.push_back(meta("seed", cfg.mh.seed));
    table.metadata.push_back(meta("chains", static_cast<long>(cfg.mh.chains)));
    table.metadata.push_back(meta("weight_plus", plus.weight));
    table.metadata.push_back(meta("weight_minus", minus.weight));
    table.metadata.push_back(
        meta("retained_plus",
             static_cast<long>(run_plus.record.xi_values.size())));
    table.metadata.push_back(
        meta("retained_minus",
             static_cast<long>(run_minus.record.xi_values.size())));
    table.columns = {"bin_left", "bin_right", "density_plus", "density_minus",
                     "density_total"};

    Histogram hist_plus(cfg.hist.xi_min, cfg.hist.xi_max, cfg.hist.bins);
    for (double xi : run_plus.record.xi_values) hist_plus.add(xi);
    Histogram hist_minus(cfg.hist.xi_min, cfg.hist.xi_max, cfg.hist.bins);
    for (double xi : run_minus.record.xi_values) hist_minus.add(xi);

    const auto dens_plus = hist_plus.weighted_density(plus.weight);
    const auto dens_minus = hist_minus.weighted_density(minus.weight);
    append_histogram_columns(table, hist_plus);
    for (int b = 0; b < cfg.hist.bins; ++b) {
      auto& row = table.rows[static_cast<std::size_t>(b)];
      row.push_back(dens_plus[static_cast<std::size_t>(b)]);
      row.push_back(dens_minus[static_cast<std::size_t>(b)]);
      row.push_back(dens_plus[static_cast<std::size_t>(b)] +
                    dens_minus[static_cast<std::size_t>(b)]);
    }

    const fs::path path =
        fs::path(cfg.out_dir) / ("mh_hist_" + theta_file_tag(i) + ".csv");
    table.write_csv(path);
    out << "wrote " << path.string() << "\n";

    for (const OutcomeRun* run : {&run_plus, &run_minus}) {
      if (!run->branch.superposition) {
        out << "  outcome " << run->branch.label.str()
            << ": impossible (weight 0)\n";
        continue;
      }
      out << "  outcome " << run->branch.label.str()
          << ": weight=" << format_double(run->branch.weight)
          << " acceptance=" << format_double(run->record.acceptance_rate())
          << " mode_fractions="
          << format_fractions(mode_fractions(run->record.xi_values,
                                             *run->branch.superposition))
          << "\n";
    }

    if (cfg.emit_plot) {
      std::vector<SvgSeries> series;
      series.push_back({"+theta (MH)", "#e66100", dens_plus, false});
      series.push_back({"-theta (MH)", "#1a9850", dens_minus, false});
      // analytic overlay on a fine grid
      std::vector<double> overlay;
      const int grid = 200;
      std::optional<XiMixture> mp, mm;
      if (plus.superposition) mp = xi_mixture(*plus.superposition);
      if (minus.superposition) mm = xi_mixture(*minus.superposition);
      for (int k = 0; k <= grid; ++k) {
        const double xi = cfg.hist.xi_min +
                          (cfg.hist.xi_max - cfg.hist.xi_min) * k / grid;
        double d = 0.0;
        if (mp) d += plus.weight * mp->density(xi);
        if (mm) d += minus.weight * mm->density(xi);
        overlay.push_back(d);
      }
      series.push_back({"analytic", "#333333", overlay, true});
      const fs::path svg_path =
          fs::path(cfg.out_dir) / ("mh_hist_" + theta_file_tag(i) + ".svg");
      write_histogram_svg(svg_path, cfg.hist.xi_min, cfg.hist.xi_max, series,
                          "xi distribution, theta index " + theta_file_tag(i));
      out << "wrote " << svg_path.string() << "\n";
    }
  }
  return kExitOk;
}

int cmd_one_shot(const RunConfig& cfg, double theta, int outcome_sign,
                 std::ostream& out) {
  const ScenarioConfig sc = cfg.scenario();
  const auto [plus, minus] = update_after_B(sc, basis_from_angle(theta));
  const OutcomeBranch& branch = outcome_sign >= 0 ? plus : minus;
  if (!branch.superposition) {
    throw InvalidChainState("one-shot target outcome has zero weight");
  }
  const SampleVector x = one_shot(*branch.superposition, cfg.mh_config());
  const double xi = std::accumulate(x.begin(), x.end(), 0.0) /
                    static_cast<double>(x.size());

  Table table;
  table.metadata = scenario_metadata(cfg);
  table.metadata.push_back(meta("theta", theta));
  table.metadata.push_back(
      std::string("outcome = ") + (outcome_sign >= 0 ? "+" : "-"));
  table.metadata.push_back(meta("seed", cfg.mh.seed));
  table.metadata.push_back(meta("xi_mean", xi));
  table.columns = {"index", "position"};
  for (std::size_t i = 0; i < x.size(); ++i) {
    table.rows.push_back({static_cast<double>(i), x[i]});
  }
  const fs::path path = fs::path(cfg.out_dir) / "one_shot.csv";
  table.write_csv(path);
  out << "wrote " << path.string() << " (xi = " << format_double(xi) << ")\n";
  return kExitOk;
}

int cmd_infer(const RunConfig& cfg, double xi, double theta,
              std::ostream& out) {
  const ScenarioConfig sc = cfg.scenario();
  const SpinBasis basis = basis_from_angle(theta);
  const auto [p_plus, p_minus] = posterior_given_xi(sc, basis, xi);

  const auto [plus, minus] = update_after_B(sc, basis);
  const double dp = plus.superposition
                        ? plus.weight * xi_mixture(*plus.superposition).density(xi)
                        : 0.0;
  const double dm =
      minus.superposition
          ? minus.weight * xi_mixture(*minus.superposition).density(xi)
          : 0.0;
  out << "theta,xi,p_plus,p_minus,density_plus,density_minus,density_total\n";
  out << format_double(theta) << "," << format_double(xi) << ","
      << format_double(p_plus) << "," << format_double(p_minus) << ","
      << format_double(dp) << "," << format_double(dm) << ","
      << format_double(dp + dm) << "\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const VerifyOptions& options,
               std::ostream& out) {
  const auto results = run_verification(cfg, options);
  return report_verification(results, out) ? kExitOk : kExitVerifyFailure;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"weak-measurement pointer-ensemble simulator"};
  app.require_subcommand(1);
  app.fallthrough();  // allow the global flags after the subcommand

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> out_override;
  app.add_option("--config", config_path, "run configuration file");
  app.add_option("--seed", seed_override, "override mh.seed");
  app.add_option("--out", out_override, "override out_dir");

  auto* branches = app.add_subcommand("branches", "outcome branch table");
  auto* xi_oracle =
      app.add_subcommand("xi-oracle", "analytic xi densities (CSV)");
  auto* mh_run = app.add_subcommand("mh-run", "MH histograms (CSV)");
  auto* one_shot_cmd =
      app.add_subcommand("one-shot", "single pointer-position realization");
  std::string one_shot_theta = "pi/4";
  std::string one_shot_outcome = "-";
  one_shot_cmd->add_option("--theta", one_shot_theta, "target basis angle");
  one_shot_cmd->add_option("--outcome", one_shot_outcome, "target outcome (+|-)");
  auto* infer = app.add_subcommand("infer", "posterior P(outcome | xi)");
  double infer_xi = 0.0;
  std::string infer_theta = "0";
  infer->add_option("--xi", infer_xi, "observed ensemble mean")->required();
  infer->add_option("--theta", infer_theta, "measurement basis angle");
  auto* verify = app.add_subcommand("verify", "run invariant suites");
  VerifyOptions verify_options;
  verify
      ->add_option("--corrupt-weights", verify_options.corrupt_weights,
                   "testing hook: bias one branch weight")
      ->default_val(0.0);

  std::vector<const char*> argv;
  argv.push_back("weakmeas");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig::defaults()
                                        : parse_config_file(config_path);
    if (seed_override) cfg.mh.seed = *seed_override;
    if (out_override) cfg.out_dir = *out_override;

    if (branches->parsed()) return cmd_branches(cfg, out);
    if (xi_oracle->parsed()) return cmd_xi_oracle(cfg, out);
    if (mh_run->parsed()) return cmd_mh_run(cfg, out);
    if (one_shot_cmd->parsed()) {
      const double theta = parse_angle(one_shot_theta);
      if (one_shot_outcome != "+" && one_shot_outcome != "-") {
        throw ConfigError("--outcome must be + or -");
      }
      return cmd_one_shot(cfg, theta, one_shot_outcome == "+" ? +1 : -1, out);
    }
    if (infer->parsed()) {
      return cmd_infer(cfg, infer_xi, parse_angle(infer_theta), out);
    }
    if (verify->parsed()) return cmd_verify(cfg, verify_options, out);
    err << "error: no subcommand selected\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "sampler error: " << e.what() << "\n";
    return kExitSamplerFailure;
  }
}

}  // namespace weakmeas::cli
