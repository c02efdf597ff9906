#include "alab/cli/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "alab/analysis.hpp"
#include "alab/cli/config.hpp"
#include "alab/cli/report.hpp"
#include "alab/equilibrium.hpp"

namespace alab::cli {

namespace {

struct CommandContext {
  std::optional<std::string> config_path;
  ExperimentConfig overrides;
  // expert-compare extras
  int aligned_n = 0;
  std::string expert_scheme = "minimum";

  ExperimentConfig effective() const {
    ExperimentConfig cfg;
    if (config_path) cfg = load_config(*config_path);
    cfg.merge(overrides);
    return cfg;
  }
};

void add_common_options(CLI::App* cmd, CommandContext& ctx) {
  cmd->add_option("--config", ctx.config_path, "key = value config file");
  auto& o = ctx.overrides;
  cmd->add_option("--noise", o.noise, "gaussian|laplace|uniform");
  cmd->add_option("--scale", o.scale, "noise scale / halfwidth");
  cmd->add_option("--n", o.n, "anecdote count");
  cmd->add_option("--m-sender", o.m_sender, "sender personal preference");
  cmd->add_option("--m-receiver", o.m_receiver, "receiver personal preference");
  cmd->add_option("--mode", o.mode, "foresight|no_foresight");
  cmd->add_option("--replicates", o.replicates, "Monte Carlo replicates");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--r-min", o.r_min, "offset grid minimum");
  cmd->add_option("--r-max", o.r_max, "offset grid maximum");
  cmd->add_option("--r-step", o.r_step, "offset grid step");
  cmd->add_option("--delta-min", o.delta_min, "misalignment grid minimum");
  cmd->add_option("--delta-max", o.delta_max, "misalignment grid maximum");
  cmd->add_option("--delta-step", o.delta_step, "misalignment grid step");
  cmd->add_option("--bracket-lo", o.bracket_lo, "solver bracket lower bound");
  cmd->add_option("--bracket-hi", o.bracket_hi, "solver bracket upper bound");
  cmd->add_option("--tol-r", o.tol_r, "solver bracket width tolerance");
  cmd->add_option("--max-iter", o.max_iter, "solver iteration cap");
  cmd->add_option("--output", o.output, "output file path (default stdout)");
  cmd->add_option("--format", o.format, "csv|json");
}

RunReport base_report(const std::string& command,
                      const ExperimentConfig& cfg) {
  RunReport report;
  report.command = command;
  report.config_echo = cfg.echo();
  report.seed = cfg.seed.value_or(0);
  return report;
}

void push_estimate(std::vector<Cell>& row, const Estimate& e) {
  row.push_back(e.value);
  row.push_back(e.std_error);
}

int run_solve(const ExperimentConfig& cfg) {
  const GameConfig game = cfg.game_config();
  const SolverParams params = cfg.solver_params();
  RunReport report = base_report("solve", cfg);
  const EquilibriumResult res = solve_equilibrium(game, params);
  report.columns = {"offset_r",
                    "bias_delta",
                    "receiver_shift",
                    "residual",
                    "residual_std_error",
                    "sender_total",
                    "sender_total_std_error",
                    "info_loss",
                    "info_loss_std_error",
                    "persuasion_term",
                    "persuasion_term_std_error",
                    "receiver_loss",
                    "receiver_loss_std_error",
                    "iterations"};
  std::vector<Cell> row{res.offset_r, res.bias_delta, res.receiver_shift,
                        res.residual, res.residual_std_error};
  push_estimate(row, res.sender_loss.total);
  push_estimate(row, res.sender_loss.info_loss);
  push_estimate(row, res.sender_loss.persuasion_term);
  push_estimate(row, res.receiver_loss);
  row.push_back(static_cast<double>(res.iterations));
  report.rows.push_back(std::move(row));
  emit_report(report, cfg.output_format(), cfg.output.value_or(""));
  return 0;
}

int run_scan_h(const ExperimentConfig& cfg) {
  const GameConfig game = cfg.game_config();
  const McParams mc = cfg.mc_params();
  RunReport report = base_report("scan-h", cfg);
  const BiasCurve curve = scan_H(game, cfg.r_grid(), mc);
  report.columns = {"r", "h_estimate", "std_error", "replicates"};
  for (const auto& p : curve.points) {
    report.rows.push_back({p.r, p.h.value, p.h.std_error,
                           static_cast<double>(p.h.replicates)});
  }
  emit_report(report, cfg.output_format(), cfg.output.value_or(""));
  return 0;
}

int run_scan_delta(const ExperimentConfig& cfg) {
  const GameConfig game = cfg.game_config();
  const SolverParams params = cfg.solver_params();
  RunReport report = base_report("scan-delta", cfg);
  const auto points = equilibrium_scan(game, cfg.delta_grid(), params);
  report.columns = {"delta",          "offset_r",
                    "bias_delta",     "receiver_shift",
                    "residual",       "receiver_loss",
                    "receiver_loss_std_error", "iterations",
                    "error"};
  bool any_failed = false;
  for (const auto& p : points) {
    std::vector<Cell> row{p.delta};
    if (p.result) {
      const auto& r = *p.result;
      row.insert(row.end(),
                 {r.offset_r, r.bias_delta, r.receiver_shift, r.residual,
                  r.receiver_loss.value, r.receiver_loss.std_error,
                  static_cast<double>(r.iterations), std::string{}});
    } else {
      any_failed = true;
      const double nan = std::nan("");
      row.insert(row.end(), {nan, nan, nan, nan, nan, nan, nan, p.error});
      std::cerr << "scan-delta: solve failed at delta=" << p.delta << ": "
                << p.error << "\n";
    }
    report.rows.push_back(std::move(row));
  }
  emit_report(report, cfg.output_format(), cfg.output.value_or(""));
  return any_failed ? 2 : 0;
}

int run_commit_scan(const ExperimentConfig& cfg) {
  const GameConfig game = cfg.game_config();
  const McParams mc = cfg.mc_params();
  RunReport report = base_report("commit-scan", cfg);
  const CommitmentResult res = commitment_scan(game, cfg.r_grid(), mc);
  report.columns = {"r", "variance", "variance_std_error", "replicates",
                    "is_argmin"};
  for (std::size_t i = 0; i < res.grid.size(); ++i) {
    report.rows.push_back(
        {res.grid[i], res.variance_at[i].value, res.variance_at[i].std_error,
         static_cast<double>(res.variance_at[i].replicates),
         res.grid[i] == res.argmin_offset ? 1.0 : 0.0});
  }
  emit_report(report, cfg.output_format(), cfg.output.value_or(""));
  return 0;
}

int run_expert_compare(const ExperimentConfig& cfg, int aligned_n,
                       const std::string& expert_scheme_name) {
  const GameConfig expert = cfg.game_config();
  const McParams mc = cfg.mc_params();
  if (aligned_n < 1) {
    throw ConfigError("expert-compare requires --aligned-n >= 1");
  }
  GameConfig aligned = expert;
  aligned.n = aligned_n;
  aligned.m_sender = aligned.m_receiver;

  TargetingScheme scheme = TargetingScheme::minimum();
  if (expert_scheme_name == "minimum") {
    scheme = TargetingScheme::minimum();
  } else if (expert_scheme_name == "maximum") {
    scheme = TargetingScheme::maximum();
  } else {
    throw ConfigError("unsupported expert scheme '" + expert_scheme_name +
                      "' (expected minimum or maximum)");
  }

  RunReport report = base_report("expert-compare", cfg);
  const ComparisonResult res = expert_compare(aligned, expert, mc, scheme);
  report.columns = {"loss_aligned", "loss_aligned_std_error", "loss_expert",
                    "loss_expert_std_error", "preferred"};
  const char* preferred = res.preferred == PreferredSender::aligned ? "aligned"
                          : res.preferred == PreferredSender::expert
                              ? "expert"
                              : "tie";
  report.rows.push_back({res.loss_aligned.value, res.loss_aligned.std_error,
                         res.loss_expert.value, res.loss_expert.std_error,
                         std::string(preferred)});
  emit_report(report, cfg.output_format(), cfg.output.value_or(""));
  return 0;
}

int run_reproduce_appendix_b(const ExperimentConfig& cfg) {
  const double r_max = cfg.r_max.value_or(0.5);
  const double r_step = cfg.r_step.value_or(0.05);
  if (!(r_step > 0.0)) throw ConfigError("r_step must be > 0");
  if (!(r_max >= 0.0 && r_max <= 0.5)) {
    throw ConfigError("r_max must lie in [0, 0.5]");
  }
  RunReport report = base_report("reproduce-appendix-b", cfg);
  report.columns = {"r", "loss", "loss_std_error"};
  const int count = static_cast<int>(std::floor(r_max / r_step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) {
    const double r = i * r_step;
    report.rows.push_back({r, three_uniform_targeted_loss(r), 0.0});
  }
  emit_report(report, cfg.output_format(), cfg.output.value_or(""));
  return 0;
}

int run_extreme_values(const ExperimentConfig& cfg) {
  if (!cfg.noise) throw ConfigError("missing required config key 'noise'");
  if (!cfg.scale) throw ConfigError("missing required config key 'scale'");
  if (!cfg.n) throw ConfigError("missing required config key 'n'");
  NoiseDistribution dist = NoiseDistribution::gaussian(1.0);
  if (*cfg.noise == "gaussian") {
    dist = NoiseDistribution::gaussian(*cfg.scale);
  } else if (*cfg.noise == "laplace") {
    dist = NoiseDistribution::laplace(*cfg.scale);
  } else {
    throw ConfigError("extreme-values supports gaussian and laplace noise");
  }
  RunReport report = base_report("extreme-values", cfg);
  const ExtremeValueStats stats = extreme_value_params(dist, *cfg.n);
  report.columns = {"a_n", "b_n", "gumbel_mean", "gumbel_variance",
                    "std_error"};
  report.rows.push_back(
      {stats.a_n, stats.b_n, stats.gumbel_mean, stats.gumbel_variance, 0.0});
  emit_report(report, cfg.output_format(), cfg.output.value_or(""));
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Numerical laboratory for biased anecdote-selection games"};
  app.require_subcommand(1);

  CommandContext ctx;
  const char* names[] = {"solve",          "scan-h",
                         "scan-delta",     "commit-scan",
                         "expert-compare", "reproduce-appendix-b",
                         "extreme-values"};
  const char* descriptions[] = {
      "solve the equilibrium fixed point H(r) = -Delta",
      "estimate the H curve on an offset grid",
      "equilibrium scan over preference misalignment",
      "sent-anecdote variance scan over commitment offsets",
      "aligned poorly-informed sender vs misaligned expert",
      "closed-form three-uniform loss table",
      "Gumbel norming constants for the extreme anecdote"};
  for (int i = 0; i < 7; ++i) {
    CLI::App* cmd = app.add_subcommand(names[i], descriptions[i]);
    add_common_options(cmd, ctx);
    if (std::string(names[i]) == "expert-compare") {
      cmd->add_option("--aligned-n", ctx.aligned_n,
                      "anecdote count of the aligned sender")
          ->required();
      cmd->add_option("--expert-scheme", ctx.expert_scheme,
                      "minimum|maximum (default minimum)");
    }
  }

  // CLI11 parses argv in reverse order.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    const ExperimentConfig cfg = ctx.effective();
    if (command == "solve") {
      code = run_solve(cfg);
    } else if (command == "scan-h") {
      code = run_scan_h(cfg);
    } else if (command == "scan-delta") {
      code = run_scan_delta(cfg);
    } else if (command == "commit-scan") {
      code = run_commit_scan(cfg);
    } else if (command == "expert-compare") {
      code = run_expert_compare(cfg, ctx.aligned_n, ctx.expert_scheme);
    } else if (command == "reproduce-appendix-b") {
      code = run_reproduce_appendix_b(cfg);
    } else if (command == "extreme-values") {
      code = run_extreme_values(cfg);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const BracketingError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  }
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  std::cerr << command << ": completed in " << elapsed.count() << " s ("
            << kVersion << ")\n";
  return code;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace alab::cli
