// End-to-end acceptance checks. Each check prints one PASS/FAIL line; the
// exit code is the number of failures.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "alab/analysis.hpp"
#include "alab/cli/cli.hpp"
#include "alab/equilibrium.hpp"

using namespace alab;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s %2d %-38s %s\n", ok ? "PASS" : "FAIL", id, name,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

McParams mc_with(std::int64_t replicates, std::uint64_t seed) {
  McParams mc;
  mc.replicates = replicates;
  mc.seed = seed;
  return mc;
}

GameConfig game(NoiseDistribution noise, int n, double delta,
                PosteriorMode mode) {
  GameConfig cfg;
  cfg.noise = noise;
  cfg.n = n;
  cfg.m_sender = delta;
  cfg.m_receiver = 0.0;
  cfg.mode = mode;
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

// 1. The closed-form three-uniform loss table from the CLI: loss(0) = 1/20,
// loss(0.2) near 0.036, and a minimum away from zero offset.
void check_loss_table(const std::filesystem::path& dir) {
  const std::string out = (dir / "appb.csv").string();
  const int code = cli::run_cli(
      {"reproduce-appendix-b", "--seed", "1", "--r-step", "0.05", "--r-max",
       "0.5", "--output", out});
  bool ok = code == 0;
  double loss0 = -1.0, loss02 = -1.0, min_loss = 1e9, min_r = 0.0;
  if (ok) {
    const auto rows = csv_rows(slurp(out));
    ok = rows.size() == 12;
    for (std::size_t i = 1; ok && i < rows.size(); ++i) {
      const double r = std::stod(rows[i][0]);
      const double loss = std::stod(rows[i][1]);
      if (r == 0.0) loss0 = loss;
      if (std::abs(r - 0.2) < 1e-9) loss02 = loss;
      if (loss < min_loss) {
        min_loss = loss;
        min_r = r;
      }
    }
  }
  ok = ok && std::abs(loss0 - 0.05) <= 5e-6 && loss02 >= 0.035 &&
       loss02 <= 0.037 && min_r != 0.0;
  std::ostringstream detail;
  detail << "loss(0)=" << loss0 << " loss(0.2)=" << loss02
         << " argmin=" << min_r;
  report(1, "three-uniform loss table", ok, detail.str());
}

// 2. Monte Carlo variance of the anecdote closest to the state under
// laplace(1) noise agrees with the exact 2/n^2.
void check_closest_of_n() {
  bool ok = true;
  std::ostringstream detail;
  const auto cfg_base =
      game(NoiseDistribution::laplace(1.0), 2, 0.0, PosteriorMode::foresight);
  for (const int n : {2, 5, 10}) {
    GameConfig cfg = cfg_base;
    cfg.n = n;
    const Estimate var = estimate_anecdote_variance(
        TargetingScheme::targeting(0.0), cfg, mc_with(1000000, 201));
    const double exact = 2.0 / (static_cast<double>(n) * n);
    ok = ok && std::abs(var.value - exact) <= 3.0 * var.std_error;
    detail << "n=" << n << ":" << var.value << "(exact " << exact << ") ";
  }
  report(2, "laplace closest-of-n variance", ok, detail.str());
}

// 3. Sample variance of the minimum of 10^4 laplace draws approaches the
// Gumbel limit pi^2/6.
void check_extreme_value_limit() {
  const auto cfg = game(NoiseDistribution::laplace(1.0), 10000, 0.0,
                        PosteriorMode::foresight);
  const Estimate var = estimate_anecdote_variance(TargetingScheme::minimum(),
                                                  cfg, mc_with(100000, 211));
  const double limit = M_PI * M_PI / 6.0;
  const bool ok = std::abs(var.value - limit) <= 0.05 * limit;
  std::ostringstream detail;
  detail << "variance=" << var.value << " limit=" << limit;
  report(3, "laplace extreme-value variance", ok, detail.str());
}

// 4. Receiver's choice of sender reverses between laplace and gaussian
// noise, with at least 3-combined-std-error separation either way.
void check_expert_choice() {
  const auto lap_aligned =
      game(NoiseDistribution::laplace(1.0), 2, 0.0, PosteriorMode::foresight);
  auto lap_expert = lap_aligned;
  lap_expert.n = 10000;
  const auto lap = expert_compare(lap_aligned, lap_expert, mc_with(20000, 221),
                                  TargetingScheme::minimum());

  const auto gau_aligned =
      game(NoiseDistribution::gaussian(1.0), 1, 0.0, PosteriorMode::foresight);
  auto gau_expert = gau_aligned;
  gau_expert.n = 10000;
  const auto gau = expert_compare(gau_aligned, gau_expert, mc_with(20000, 223),
                                  TargetingScheme::minimum());

  const bool ok = lap.preferred == PreferredSender::aligned &&
                  gau.preferred == PreferredSender::expert;
  std::ostringstream detail;
  detail << "laplace " << lap.loss_aligned.value << " vs "
         << lap.loss_expert.value << "; gaussian " << gau.loss_aligned.value
         << " vs " << gau.loss_expert.value;
  report(4, "expert-choice reversal", ok, detail.str());
}

// 5. Aligned players admit an unbiased equilibrium: offset and perceived
// bias both within 0.02 of zero at the full budget.
void check_aligned_equilibrium() {
  const auto cfg =
      game(NoiseDistribution::gaussian(1.0), 5, 0.0, PosteriorMode::foresight);
  SolverParams params;
  params.tol_r = 0.005;
  params.mc = mc_with(1000000, 231);
  const auto eq = solve_equilibrium(cfg, params);
  const bool ok = std::abs(eq.offset_r) <= 0.02 &&
                  std::abs(eq.bias_delta) <= 0.02;
  std::ostringstream detail;
  detail << "r*=" << eq.offset_r << " delta*=" << eq.bias_delta;
  report(5, "aligned equilibrium is unbiased", ok, detail.str());
}

// 6. Negative misalignment unravels toward the minimum: r* < Delta and
// r* < delta* < 0, with r* nondecreasing in Delta.
void check_unraveling() {
  const auto base =
      game(NoiseDistribution::gaussian(1.0), 5, 0.0, PosteriorMode::foresight);
  SolverParams params;
  params.tol_r = 0.005;
  params.mc = mc_with(500000, 241);
  const std::vector<double> deltas{-2.0, -1.0, -0.5};
  const auto scan = equilibrium_scan(base, deltas, params);
  bool ok = scan.size() == deltas.size();
  std::ostringstream detail;
  double prev_r = -1e9;
  for (std::size_t i = 0; ok && i < scan.size(); ++i) {
    if (!scan[i].result) {
      ok = false;
      detail << scan[i].error;
      break;
    }
    const auto& eq = *scan[i].result;
    ok = eq.offset_r < deltas[i] && eq.offset_r < eq.bias_delta &&
         eq.bias_delta < 0.0 &&
         eq.offset_r >= prev_r - 2.0 * params.tol_r;
    prev_r = eq.offset_r;
    detail << "D=" << deltas[i] << ":r*=" << eq.offset_r
           << ",d*=" << eq.bias_delta << " ";
  }
  report(6, "unraveling toward the minimum", ok, detail.str());
}

// 7. Debiased receiver loss equals sent-anecdote variance across all noise
// laws and both information modes.
void check_receiver_loss_identity() {
  bool ok = true;
  std::ostringstream detail;
  const NoiseDistribution dists[] = {NoiseDistribution::gaussian(1.0),
                                     NoiseDistribution::laplace(1.0),
                                     NoiseDistribution::uniform(0.5)};
  const PosteriorMode modes[] = {PosteriorMode::foresight,
                                 PosteriorMode::no_foresight};
  std::uint64_t seed = 251;
  for (const auto& dist : dists) {
    for (const auto mode : modes) {
      const auto cfg = game(dist, 3, 0.3, mode);
      const auto scheme = TargetingScheme::targeting(0.2);
      const std::int64_t reps =
          dist.kind == NoiseKind::laplace && mode == PosteriorMode::no_foresight
              ? 30000
              : 200000;
      const McParams mc = mc_with(reps, seed++);
      const Estimate loss = estimate_receiver_loss(scheme, cfg, mc);
      const Estimate var = estimate_anecdote_variance(
          scheme, cfg, mc.with_stream(mc.stream_id + 2 * kStreamStride));
      const double band = 3.0 * std::hypot(loss.std_error, var.std_error);
      const bool this_ok = std::abs(loss.value - var.value) <= band;
      ok = ok && this_ok;
      if (!this_ok) {
        detail << "mismatch " << loss.value << " vs " << var.value << "; ";
      }
    }
  }
  if (ok) detail << "6/6 configurations agree";
  report(7, "receiver loss equals sent variance", ok, detail.str());
}

// 8. Sender loss decomposes into information loss plus the persuasion term
// across randomized scheme/perception/misalignment triples.
void check_loss_decomposition() {
  bool ok = true;
  std::ostringstream detail;
  RandomStream rng(261, 0, 0);
  for (int t = 0; t < 9; ++t) {
    const double r_actual = 2.0 * rng.next_unit() - 1.0;
    const double perceived = 2.0 * rng.next_unit() - 1.0;
    const double delta = 2.0 * rng.next_unit() - 1.0;
    const auto cfg = game(NoiseDistribution::gaussian(1.0), 4, delta,
                          PosteriorMode::foresight);
    const auto loss =
        estimate_sender_loss(TargetingScheme::targeting(r_actual), perceived,
                             cfg, mc_with(100000, 271 + t));
    const double gap = loss.total.value - loss.info_loss.value -
                       loss.persuasion_term.value;
    const double band =
        3.0 * std::sqrt(loss.total.std_error * loss.total.std_error +
                        loss.info_loss.std_error * loss.info_loss.std_error +
                        loss.persuasion_term.std_error *
                            loss.persuasion_term.std_error);
    const bool this_ok = std::abs(gap) <= band;
    ok = ok && this_ok;
    if (!this_ok) detail << "gap=" << gap << ">" << band << "; ";
  }
  if (ok) detail << "9/9 triples decompose";
  report(8, "sender loss decomposition", ok, detail.str());
}

// 9. Large-n variance of the targeted anecdote matches the asymptotic
// 1/(2 n^2 f(delta)^2) within 15%.
void check_asymptotic_variance() {
  bool ok = true;
  std::ostringstream detail;
  const int n = 500;
  for (const double offset : {0.0, 0.5}) {
    const auto cfg = game(NoiseDistribution::gaussian(1.0), n, 0.0,
                          PosteriorMode::foresight);
    const Estimate var = estimate_anecdote_variance(
        TargetingScheme::targeting(offset), cfg,
        mc_with(400000, 281 + static_cast<std::uint64_t>(10.0 * offset)));
    const double predicted =
        asymptotic_commit_loss(NoiseDistribution::gaussian(1.0), n, offset);
    const double ratio = var.value / predicted;
    ok = ok && ratio >= 0.85 && ratio <= 1.15;
    detail << "offset=" << offset << ":ratio=" << ratio << " ";
  }
  report(9, "asymptotic variance of targeted anecdote", ok, detail.str());
}

// 10. Byte-identical artifacts for repeated runs, independent of the
// worker-thread count.
void check_determinism(const std::filesystem::path& dir) {
  const std::string out = (dir / "det.json").string();
  const std::vector<std::string> args{
      "scan-h", "--noise", "gaussian", "--scale", "1",  "--n",
      "4",      "--m-sender", "0",     "--m-receiver", "0", "--mode",
      "foresight", "--replicates", "50000", "--seed", "3",
      "--r-min", "-1", "--r-max", "1", "--r-step", "0.5",
      "--format", "json", "--output", out};
  setenv("ALAB_THREADS", "1", 1);
  bool ok = cli::run_cli(args) == 0;
  const std::string single = slurp(out);
  setenv("ALAB_THREADS", "7", 1);
  ok = ok && cli::run_cli(args) == 0;
  const std::string multi = slurp(out);
  unsetenv("ALAB_THREADS");
  ok = ok && !single.empty() && single == multi;
  report(10, "artifacts independent of thread count", ok,
         ok ? "byte-identical across 1 and 7 threads" : "outputs differ");
}

}  // namespace

int main() {
  const auto dir = std::filesystem::temp_directory_path() / "alab-acceptance";
  std::filesystem::create_directories(dir);

  check_loss_table(dir);
  check_closest_of_n();
  check_extreme_value_limit();
  check_expert_choice();
  check_aligned_equilibrium();
  check_unraveling();
  check_receiver_loss_identity();
  check_loss_decomposition();
  check_asymptotic_variance();
  check_determinism(dir);

  std::error_code ec;
  std::filesystem::remove_all(dir, ec);
  if (failures == 0) {
    std::printf("all acceptance checks passed\n");
  } else {
    std::printf("%d acceptance check(s) failed\n", failures);
  }
  return failures;
}
