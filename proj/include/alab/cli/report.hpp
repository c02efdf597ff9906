#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "alab/cli/config.hpp"

namespace alab::cli {

inline constexpr const char* kVersion = "anecdote-lab 1.0.0";

using Cell = std::variant<double, std::string>;

// Machine-readable result of one CLI run. Wall-clock time is reported on
// the console only, never in emitted artifacts, so identical inputs always
// produce byte-identical files.
struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  double wall_clock_seconds = 0.0;
  std::uint64_t seed = 0;
  std::string version = kVersion;
};

// CSV: header row then data rows, doubles rendered with 9 significant
// digits. JSON: one top-level object with snake_case fields; doubles kept
// at full precision so a parse of the emission round-trips exactly.
std::string render_report(const RunReport& report, OutputFormat format);

// Writes the rendered report to the path, or to stdout when path is empty.
void emit_report(const RunReport& report, OutputFormat format,
                 const std::string& path);

}  // namespace alab::cli
