#include "alab/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace alab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_line(const std::string& origin, int line_no,
                           const std::string& line, const std::string& why) {
  std::ostringstream msg;
  msg << origin << ":" << line_no << ": " << why << " in line \"" << line
      << "\"";
  throw ConfigError(msg.str());
}

template <typename T>
T parse_number(const std::string& origin, int line_no, const std::string& line,
               const std::string& value) {
  std::istringstream in(value);
  T out;
  in >> out;
  if (in.fail() || !(in >> std::ws).eof()) {
    bad_line(origin, line_no, line, "unparsable value '" + value + "'");
  }
  return out;
}

std::string render(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      bad_line(origin, line_no, raw, "missing '='");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      bad_line(origin, line_no, raw, "empty key or value");
    }

    const auto num_d = [&] {
      return parse_number<double>(origin, line_no, raw, value);
    };
    if (key == "noise") {
      cfg.noise = value;
    } else if (key == "scale") {
      cfg.scale = num_d();
    } else if (key == "n") {
      cfg.n = parse_number<int>(origin, line_no, raw, value);
    } else if (key == "m_sender") {
      cfg.m_sender = num_d();
    } else if (key == "m_receiver") {
      cfg.m_receiver = num_d();
    } else if (key == "mode") {
      cfg.mode = value;
    } else if (key == "replicates") {
      cfg.replicates = parse_number<std::int64_t>(origin, line_no, raw, value);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(origin, line_no, raw, value);
    } else if (key == "r_min") {
      cfg.r_min = num_d();
    } else if (key == "r_max") {
      cfg.r_max = num_d();
    } else if (key == "r_step") {
      cfg.r_step = num_d();
    } else if (key == "delta_min") {
      cfg.delta_min = num_d();
    } else if (key == "delta_max") {
      cfg.delta_max = num_d();
    } else if (key == "delta_step") {
      cfg.delta_step = num_d();
    } else if (key == "bracket_lo") {
      cfg.bracket_lo = num_d();
    } else if (key == "bracket_hi") {
      cfg.bracket_hi = num_d();
    } else if (key == "tol_r") {
      cfg.tol_r = num_d();
    } else if (key == "max_iter") {
      cfg.max_iter = parse_number<int>(origin, line_no, raw, value);
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "format") {
      cfg.format = value;
    } else {
      bad_line(origin, line_no, raw, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

void ExperimentConfig::merge(const ExperimentConfig& o) {
  const auto take = [](auto& dst, const auto& src) {
    if (src.has_value()) dst = src;
  };
  take(noise, o.noise);
  take(scale, o.scale);
  take(n, o.n);
  take(m_sender, o.m_sender);
  take(m_receiver, o.m_receiver);
  take(mode, o.mode);
  take(replicates, o.replicates);
  take(seed, o.seed);
  take(r_min, o.r_min);
  take(r_max, o.r_max);
  take(r_step, o.r_step);
  take(delta_min, o.delta_min);
  take(delta_max, o.delta_max);
  take(delta_step, o.delta_step);
  take(bracket_lo, o.bracket_lo);
  take(bracket_hi, o.bracket_hi);
  take(tol_r, o.tol_r);
  take(max_iter, o.max_iter);
  take(output, o.output);
  take(format, o.format);
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo()
    const {
  std::vector<std::pair<std::string, std::string>> out;
  const auto add_str = [&](const char* k, const auto& v) {
    if (v.has_value()) out.emplace_back(k, *v);
  };
  const auto add_num = [&](const char* k, const auto& v) {
    if (v.has_value()) out.emplace_back(k, render(static_cast<double>(*v)));
  };
  add_num("bracket_hi", bracket_hi);
  add_num("bracket_lo", bracket_lo);
  add_num("delta_max", delta_max);
  add_num("delta_min", delta_min);
  add_num("delta_step", delta_step);
  add_str("format", format);
  add_num("m_receiver", m_receiver);
  add_num("m_sender", m_sender);
  add_num("max_iter", max_iter);
  add_str("mode", mode);
  add_num("n", n);
  add_str("noise", noise);
  add_str("output", output);
  add_num("r_max", r_max);
  add_num("r_min", r_min);
  add_num("r_step", r_step);
  add_num("replicates", replicates);
  add_num("scale", scale);
  if (seed.has_value()) out.emplace_back("seed", std::to_string(*seed));
  add_num("tol_r", tol_r);
  return out;
}

namespace {

[[noreturn]] void missing(const char* key) {
  throw ConfigError(std::string("missing required config key '") + key + "'");
}

std::vector<double> make_grid(double lo, double hi, double step,
                              const char* what) {
  if (!(step > 0.0)) {
    throw ConfigError(std::string(what) + "_step must be > 0");
  }
  if (hi < lo) {
    throw ConfigError(std::string(what) + "_max must be >= " + what + "_min");
  }
  std::vector<double> grid;
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  grid.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) grid.push_back(lo + i * step);
  return grid;
}

}  // namespace

GameConfig ExperimentConfig::game_config() const {
  if (!noise) missing("noise");
  if (!scale) missing("scale");
  if (!n) missing("n");
  if (!m_sender) missing("m_sender");
  if (!m_receiver) missing("m_receiver");
  if (!mode) missing("mode");

  GameConfig cfg;
  if (*noise == "gaussian") {
    cfg.noise = NoiseDistribution::gaussian(*scale);
  } else if (*noise == "laplace") {
    cfg.noise = NoiseDistribution::laplace(*scale);
  } else if (*noise == "uniform") {
    cfg.noise = NoiseDistribution::uniform(*scale);
  } else {
    throw ConfigError("unsupported distribution '" + *noise +
                      "' (expected gaussian, laplace, or uniform)");
  }
  if (*mode == "foresight") {
    cfg.mode = PosteriorMode::foresight;
  } else if (*mode == "no_foresight") {
    cfg.mode = PosteriorMode::no_foresight;
  } else {
    throw ConfigError("unsupported mode '" + *mode +
                      "' (expected foresight or no_foresight)");
  }
  cfg.n = *n;
  cfg.m_sender = *m_sender;
  cfg.m_receiver = *m_receiver;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

McParams ExperimentConfig::mc_params() const {
  if (!replicates) missing("replicates");
  if (!seed) missing("seed");
  McParams mc;
  mc.replicates = *replicates;
  mc.seed = *seed;
  try {
    mc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return mc;
}

SolverParams ExperimentConfig::solver_params() const {
  SolverParams params;
  params.mc = mc_params();
  params.bracket_lo = bracket_lo.value_or(0.0);
  params.bracket_hi = bracket_hi.value_or(0.0);
  params.tol_r = tol_r.value_or(0.01);
  params.max_iter = max_iter.value_or(60);
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return params;
}

std::vector<double> ExperimentConfig::r_grid() const {
  if (!r_min) missing("r_min");
  if (!r_max) missing("r_max");
  if (!r_step) missing("r_step");
  return make_grid(*r_min, *r_max, *r_step, "r");
}

std::vector<double> ExperimentConfig::delta_grid() const {
  if (!delta_min) missing("delta_min");
  if (!delta_max) missing("delta_max");
  if (!delta_step) missing("delta_step");
  return make_grid(*delta_min, *delta_max, *delta_step, "delta");
}

OutputFormat ExperimentConfig::output_format() const {
  const std::string fmt = format.value_or("csv");
  if (fmt == "csv") return OutputFormat::csv;
  if (fmt == "json") return OutputFormat::json;
  throw ConfigError("unsupported format '" + fmt + "' (expected csv or json)");
}

}  // namespace alab::cli
