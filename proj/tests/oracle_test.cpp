// Self-checks for the exact tiny-game oracle: four of the six possible deals
// play out with no random branching at all, so their outcomes can be verified
// by hand and pinned here. If the oracle is right about the deterministic
// deals and internally consistent about the mixture, the Monte Carlo
// cross-check in the acceptance suite is measuring against solid ground.

#include "support/exact_oracle.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

namespace {

using oracle::solve_tiny_game;
using oracle::solve_tiny_game_from;
using oracle::TinySolution;

// Shoe a,a,b,b deals P0=[a,b], P1=[a,b]. Traced by hand: P1 collects the two
// a's on turn 2, P0 collects the two b's on turn 4, and the remaining six
// plays run P0 out of cards. P1 wins on turn 8, every time.
TEST(TinyOracle, ShoeAABBIsADeterministicEightTurnLossForPlayerZero) {
  const TinySolution s = solve_tiny_game_from({0, 0, 1, 1});
  EXPECT_NEAR(s.p0_win, 0.0, 1e-12);
  EXPECT_NEAR(s.p1_win, 1.0, 1e-12);
  EXPECT_NEAR(s.expected_turns, 8.0, 1e-9);
}

TEST(TinyOracle, ShoeBBAAMirrorsAABB) {
  const TinySolution s = solve_tiny_game_from({1, 1, 0, 0});
  EXPECT_NEAR(s.p0_win, 0.0, 1e-12);
  EXPECT_NEAR(s.expected_turns, 8.0, 1e-9);
}

// Shoe a,b,a,b gives each player a same-rank pair; the pile alternates ranks,
// no match ever fires, and the game is the minimal 4-turn run-out won by the
// second player (who plays the last card).
TEST(TinyOracle, AlternatingShoesAreMatchlessFourTurnGames) {
  for (const std::array<int, 4> shoe : {std::array<int, 4>{0, 1, 0, 1}, {1, 0, 1, 0}}) {
    const TinySolution s = solve_tiny_game_from(shoe);
    EXPECT_NEAR(s.p0_win, 0.0, 1e-12);
    EXPECT_NEAR(s.expected_turns, 4.0, 1e-9);
  }
}

TEST(TinyOracle, RankRelabelingCannotChangeTheSolution) {
  const TinySolution abba = solve_tiny_game_from({0, 1, 1, 0});
  const TinySolution baab = solve_tiny_game_from({1, 0, 0, 1});
  EXPECT_NEAR(abba.p0_win, baab.p0_win, 1e-12);
  EXPECT_NEAR(abba.expected_turns, baab.expected_turns, 1e-9);
}

TEST(TinyOracle, MixtureMatchesTheAverageOverAllSixDeals) {
  const std::array<std::array<int, 4>, 6> deals{{{0, 0, 1, 1},
                                                 {0, 1, 0, 1},
                                                 {0, 1, 1, 0},
                                                 {1, 0, 0, 1},
                                                 {1, 0, 1, 0},
                                                 {1, 1, 0, 0}}};
  double p0 = 0.0, turns = 0.0;
  for (const auto& shoe : deals) {
    const TinySolution s = solve_tiny_game_from(shoe);
    p0 += s.p0_win / 6.0;
    turns += s.expected_turns / 6.0;
  }
  const TinySolution mixed = solve_tiny_game();
  EXPECT_NEAR(mixed.p0_win, p0, 1e-12);
  EXPECT_NEAR(mixed.expected_turns, turns, 1e-9);
  EXPECT_NEAR(mixed.p0_win + mixed.p1_win, 1.0, 1e-12);
  EXPECT_GE(mixed.expected_turns, 4.0);
  EXPECT_TRUE(std::isfinite(mixed.expected_turns));
}

}  // namespace
