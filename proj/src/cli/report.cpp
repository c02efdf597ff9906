#include "alab/cli/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace alab::cli {

namespace {

std::string render_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string render_cell_csv(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return render_double(*d);
  return std::get<std::string>(cell);
}

std::string render_csv(const RunReport& report) {
  std::ostringstream out;
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    if (c) out << ',';
    out << report.columns[c];
  }
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << render_cell_csv(row[c]);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["command"] = report.command;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.config_echo) cfg[key] = value;
  j["config"] = cfg;
  j["columns"] = report.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (const auto* d = std::get_if<double>(&cell)) {
        jrow.push_back(*d);
      } else {
        jrow.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(jrow));
  }
  j["rows"] = rows;
  j["seed"] = report.seed;
  j["version"] = report.version;
  return j.dump(2) + "\n";
}

}  // namespace

std::string render_report(const RunReport& report, OutputFormat format) {
  return format == OutputFormat::csv ? render_csv(report)
                                     : render_json(report);
}

void emit_report(const RunReport& report, OutputFormat format,
                 const std::string& path) {
  const std::string text = render_report(report, format);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file: " + path);
  out << text;
  if (!out) throw IoError("write failure on output file: " + path);
}

}  // namespace alab::cli
