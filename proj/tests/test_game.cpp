#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "alab/game.hpp"

using namespace alab;

namespace {

GameConfig gaussian_config(int n, PosteriorMode mode) {
  GameConfig cfg;
  cfg.n = n;
  cfg.noise = NoiseDistribution::gaussian(1.0);
  cfg.mode = mode;
  return cfg;
}

}  // namespace

TEST_CASE("draw_round basics") {
  SUBCASE("foresight pins y and posterior mean to theta") {
    RandomStream s(1, 0, 0);
    const auto round = draw_round(gaussian_config(4, PosteriorMode::foresight), s);
    CHECK(round.y == 0.0);
    CHECK(round.posterior_mean == 0.0);
    CHECK(round.anecdotes.size() == 4);
  }

  SUBCASE("gaussian no-foresight posterior mean is the sample mean") {
    RandomStream s(2, 0, 0);
    const auto round =
        draw_round(gaussian_config(3, PosteriorMode::no_foresight), s);
    const double mean =
        (round.anecdotes[0] + round.anecdotes[1] + round.anecdotes[2]) / 3.0;
    CHECK(round.posterior_mean == doctest::Approx(mean));
  }

  SUBCASE("same seed twice gives identical rounds") {
    RandomStream a(3, 1, 7);
    RandomStream b(3, 1, 7);
    const auto cfg = gaussian_config(5, PosteriorMode::foresight);
    const auto ra = draw_round(cfg, a);
    const auto rb = draw_round(cfg, b);
    CHECK(ra.anecdotes == rb.anecdotes);
    CHECK(ra.posterior_mean == rb.posterior_mean);
  }

  SUBCASE("invalid n rejected") {
    GameConfig cfg = gaussian_config(0, PosteriorMode::foresight);
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
}

TEST_CASE("select_anecdote") {
  RoundDraw round;

  SUBCASE("targeting picks the nearest anecdote") {
    round.anecdotes = {-3.0, 0.2, 5.0};
    round.posterior_mean = 0.0;
    const auto [idx, value] =
        select_anecdote(TargetingScheme::targeting(0.0), round);
    CHECK(idx == 1);
    CHECK(value == 0.2);
  }

  SUBCASE("three-uniform posterior target") {
    // posterior mean (min+max)/2 = 0.55, target 0.75 -> 0.9 wins over 0.5
    round.anecdotes = {0.2, 0.5, 0.9};
    round.posterior_mean = 0.55;
    const auto [idx, value] =
        select_anecdote(TargetingScheme::targeting(0.2), round);
    CHECK(idx == 2);
    CHECK(value == 0.9);
  }

  SUBCASE("equidistant tie goes to the smaller value") {
    round.anecdotes = {-1.0, 1.0};
    round.posterior_mean = 0.0;
    const auto [idx, value] =
        select_anecdote(TargetingScheme::targeting(0.0), round);
    CHECK(idx == 0);
    CHECK(value == -1.0);
  }

  SUBCASE("minimum and maximum variants") {
    round.anecdotes = {0.4, -2.0, 1.7, 0.0};
    CHECK(select_anecdote(TargetingScheme::minimum(), round).second == -2.0);
    CHECK(select_anecdote(TargetingScheme::maximum(), round).second == 1.7);
  }
}

TEST_CASE("receiver_action and utilities") {
  CHECK(receiver_action({0.2}, 2.0) == doctest::Approx(2.2));
  CHECK(receiver_action({0.0}, -1.5) == -1.5);
  CHECK(receiver_action({-0.7}, 0.7) == doctest::Approx(0.0));

  CHECK(quadratic_utility(1.0, 1.0, 0.0) == 0.0);
  CHECK(quadratic_utility(0.0, 1.0, 0.5) == doctest::Approx(-2.25));
  RandomStream s(5, 0, 0);
  for (int i = 0; i < 10; ++i) {
    const double theta = 4.0 * s.next_unit() - 2.0;
    const double m = 4.0 * s.next_unit() - 2.0;
    CHECK(quadratic_utility(theta + m, theta, m) == doctest::Approx(0.0));
  }
}

TEST_CASE("best_response_shift") {
  GameConfig cfg = gaussian_config(2, PosteriorMode::foresight);
  cfg.m_receiver = 0.0;
  CHECK(best_response_shift(cfg, 0.0) == 0.0);
  cfg.m_receiver = 0.3;
  CHECK(best_response_shift(cfg, 0.1) == doctest::Approx(0.2));
  cfg.m_receiver = -1.0;
  CHECK(best_response_shift(cfg, 0.5) == doctest::Approx(-1.5));
}

TEST_CASE("selection is translation invariant") {
  RandomStream s(17, 0, 0);
  const auto cfg = gaussian_config(6, PosteriorMode::no_foresight);
  for (int rep = 0; rep < 50; ++rep) {
    RandomStream rs(17, 1, static_cast<std::uint64_t>(rep));
    RoundDraw round = draw_round(cfg, rs);
    const double c = 10.0 * s.next_unit() - 5.0;
    RoundDraw shifted = round;
    for (double& x : shifted.anecdotes) x += c;
    shifted.posterior_mean += c;
    const auto scheme = TargetingScheme::targeting(0.7);
    const auto base = select_anecdote(scheme, round);
    const auto moved = select_anecdote(scheme, shifted);
    CHECK(moved.first == base.first);
    CHECK(moved.second == doctest::Approx(base.second + c));
  }
}

TEST_CASE("reflection duality of targeting schemes") {
  const auto cfg = gaussian_config(5, PosteriorMode::no_foresight);
  for (int rep = 0; rep < 50; ++rep) {
    RandomStream rs(23, 0, static_cast<std::uint64_t>(rep));
    RoundDraw round = draw_round(cfg, rs);
    RoundDraw negated = round;
    for (double& x : negated.anecdotes) x = -x;
    negated.posterior_mean = -round.posterior_mean;
    const double r = 0.4;
    const auto neg_sel = select_anecdote(TargetingScheme::targeting(r), negated);
    const auto pos_sel =
        select_anecdote(TargetingScheme::targeting(-r), round);
    CHECK(neg_sel.second == doctest::Approx(-pos_sel.second));
  }
}

TEST_CASE("extreme offsets select the extreme anecdote") {
  const auto cfg = gaussian_config(5, PosteriorMode::foresight);
  for (int rep = 0; rep < 30; ++rep) {
    RandomStream rs(29, 0, static_cast<std::uint64_t>(rep));
    const RoundDraw round = draw_round(cfg, rs);
    // Beyond the sample range everything past r0 hits the extreme.
    const double r0 = 50.0;
    CHECK(select_anecdote(TargetingScheme::targeting(r0), round).second ==
          select_anecdote(TargetingScheme::maximum(), round).second);
    CHECK(select_anecdote(TargetingScheme::targeting(-r0), round).second ==
          select_anecdote(TargetingScheme::minimum(), round).second);
  }
}

TEST_CASE("sender best response is the targeting scheme") {
  // Against a translation with shift sigma, exhaustive per-draw utility
  // search must pick the anecdote closest to theta_S + (M_S - sigma).
  GameConfig cfg = gaussian_config(6, PosteriorMode::foresight);
  cfg.m_sender = 0.8;
  const double sigma = -0.3;
  const ActionRule rule{sigma};
  for (int rep = 0; rep < 100; ++rep) {
    RandomStream rs(41, 0, static_cast<std::uint64_t>(rep));
    const RoundDraw round = draw_round(cfg, rs);
    int best = 0;
    double best_u = -1e300;
    for (int i = 0; i < cfg.n; ++i) {
      const double u = quadratic_utility(
          receiver_action(rule, round.anecdotes[i]), round.theta, cfg.m_sender);
      if (u > best_u) {
        best_u = u;
        best = i;
      }
    }
    const auto scheme = TargetingScheme::targeting(cfg.m_sender - sigma);
    CHECK(select_anecdote(scheme, round).first == best);
  }
}
