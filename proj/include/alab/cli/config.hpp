#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alab/equilibrium.hpp"

namespace alab::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

// Flat experiment configuration, merged from a key=value file and
// command-line overrides (overrides win). Every field is optional at parse
// time; the per-subcommand builders below enforce which keys are required.
struct ExperimentConfig {
  std::optional<std::string> noise;
  std::optional<double> scale;
  std::optional<int> n;
  std::optional<double> m_sender;
  std::optional<double> m_receiver;
  std::optional<std::string> mode;
  std::optional<std::int64_t> replicates;
  std::optional<std::uint64_t> seed;
  std::optional<double> r_min, r_max, r_step;
  std::optional<double> delta_min, delta_max, delta_step;
  std::optional<double> bracket_lo, bracket_hi;
  std::optional<double> tol_r;
  std::optional<int> max_iter;
  std::optional<std::string> output;
  std::optional<std::string> format;

  // Fields set here replace the corresponding fields of *this.
  void merge(const ExperimentConfig& overrides);

  // Echo of every set key, sorted by key name, for the run report.
  std::vector<std::pair<std::string, std::string>> echo() const;

  GameConfig game_config() const;
  McParams mc_params() const;
  SolverParams solver_params() const;
  std::vector<double> r_grid() const;
  std::vector<double> delta_grid() const;
  OutputFormat output_format() const;
};

// Parses the line-oriented `key = value` format; '#' starts a comment and
// blank lines are ignored. Unknown keys or unparsable values raise
// ConfigError naming the offending line.
ExperimentConfig load_config(const std::string& path);

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin);

}  // namespace alab::cli
