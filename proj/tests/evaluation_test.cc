// Copyright 2026 The fifarank Authors
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

#include "fifarank/evaluation.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fifarank/online_rating.h"
#include "test_util.h"

namespace fifarank {
namespace {

using testing::Game;

TEST(Window, SecondHalf) {
  GameWindow w = WindowSecondHalf(10);
  EXPECT_EQ(w.first, 6);
  EXPECT_EQ(w.last, 10);
  w = WindowSecondHalf(11);
  EXPECT_EQ(w.first, 6);
  EXPECT_EQ(w.last, 11);
  w = WindowSecondHalf(2);
  EXPECT_EQ(w.first, 2);
  EXPECT_EQ(w.size(), 1);
}

TEST(Mse, Examples) {
  std::vector<ScoreForecast> draws = {{1, 0.5, 0.5}, {2, 0.5, 0.5}};
  EXPECT_EQ(Mse(draws, WindowAll(2)), 0.0);
  std::vector<ScoreForecast> win = {{1, 0.5, 1.0}};
  EXPECT_DOUBLE_EQ(Mse(win, WindowAll(1)), 0.25);
  std::vector<ScoreForecast> mixed = {{1, 0.9, 0.0}, {2, 0.5, 1.0}};
  EXPECT_DOUBLE_EQ(Mse(mixed, {2, 2}), 0.25);
  EXPECT_THROW(Mse(mixed, {3, 2}), std::invalid_argument);
}

TEST(LogScore, Uniform) {
  OutcomeProbs u{1.0 / 3, 1.0 / 3, 1.0 / 3};
  std::vector<Forecast> games = {{1, u, Outcome::kHome}, {2, u, Outcome::kAway},
                                 {3, u, Outcome::kDraw}, {4, u, Outcome::kAway}};
  LogScoreResult ls = LogScore(games, WindowAll(4));
  EXPECT_NEAR(ls.value, std::log(3.0), 1e-15);
  EXPECT_EQ(ls.games, 4);
  AccuracyResult acc = Accuracy(games, WindowAll(4));
  EXPECT_DOUBLE_EQ(acc.value, 0.25);  // ties go to H
  EXPECT_EQ(acc.ties, 4);
}

TEST(LogScore, GeometricMean) {
  std::vector<Forecast> games = {{1, {0.5, 0.3, 0.2}, Outcome::kHome},
                                 {2, {0.1, 0.3, 0.6}, Outcome::kDraw},
                                 {3, {0.2, 0.2, 0.6}, Outcome::kAway}};
  double ls = LogScore(games, WindowAll(3)).value;
  EXPECT_NEAR(std::exp(-ls), std::cbrt(0.5 * 0.3 * 0.6), 1e-14);
}

TEST(LogScore, ZeroProbability) {
  std::vector<Forecast> games = {{1, {0.5, 0.0, 0.5}, Outcome::kHome},
                                 {2, {0.5, 0.0, 0.5}, Outcome::kDraw}};
  LogScoreResult ls = LogScore(games, WindowAll(2));
  EXPECT_TRUE(std::isinf(ls.value));
  ASSERT_TRUE(ls.zero_probability_at.has_value());
  EXPECT_EQ(*ls.zero_probability_at, 2);
}

TEST(LogScore, MovingMassTowardObserved) {
  std::vector<Forecast> games = {{1, {0.4, 0.3, 0.3}, Outcome::kHome},
                                 {2, {0.3, 0.3, 0.4}, Outcome::kDraw}};
  double before = LogScore(games, WindowAll(2)).value;
  games[0].probs = {0.5, 0.25, 0.25};
  games[1].probs = {0.3, 0.4, 0.3};
  EXPECT_LT(LogScore(games, WindowAll(2)).value, before);
}

TEST(Accuracy, TieOrderAndMonotoneInvariance) {
  EXPECT_EQ(PredictedOutcome({0.3, 0.3, 0.4}), Outcome::kAway);
  EXPECT_EQ(PredictedOutcome({0.4, 0.4, 0.2}), Outcome::kHome);
  EXPECT_EQ(PredictedOutcome({0.2, 0.4, 0.4}), Outcome::kDraw);
  EXPECT_TRUE(HasTiedMaximum({0.2, 0.4, 0.4}));
  EXPECT_FALSE(HasTiedMaximum({0.2, 0.3, 0.5}));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 1);
  std::uniform_int_distribution<int> y(0, 2);
  const Outcome outcomes[] = {Outcome::kHome, Outcome::kDraw, Outcome::kAway};
  std::vector<Forecast> games, warped;
  for (int t = 1; t <= 200; ++t) {
    OutcomeProbs p{u(rng), u(rng), u(rng)};
    Outcome o = outcomes[y(rng)];
    games.push_back({t, p, o});
    warped.push_back({t, {std::exp(3 * p.home), std::exp(3 * p.draw), std::exp(3 * p.away)}, o});
  }
  EXPECT_EQ(Accuracy(games, WindowAll(200)).value, Accuracy(warped, WindowAll(200)).value);
}

TEST(EvaluateReplay, FifaWrapperAndWindow) {
  std::vector<MatchRecord> games;
  for (int t = 1; t <= 11; ++t) games.push_back(Game(t, t % 2, 1 - t % 2, t % 3, 1));
  ReplayResult r = Replay(games, RatingState({1000, 1100}), FifaEngine{});
  EvaluationReport rep = EvaluateReplay(r, FifaEngine{}, WindowSecondHalf(11), {{"k", 1}});
  EXPECT_EQ(rep.games_counted, 6);
  ASSERT_TRUE(rep.mse && rep.log_score && rep.accuracy);
  double mse = 0;
  for (int t = 6; t <= 11; ++t) {
    const GamePrediction& g = r.games[t - 1];
    EXPECT_NEAR(g.expected_score, FifaExpectedScore(g.z / 600), 1e-15);
    EXPECT_NEAR(g.probs.home + 0.5 * g.probs.draw, g.expected_score, 1e-12);
    mse += std::pow(g.realized_score - g.expected_score, 2);
  }
  EXPECT_NEAR(*rep.mse, mse / 6, 1e-15);
  nlohmann::json j = ToJson(rep);
  EXPECT_EQ(j["params"]["k"], 1);
  EXPECT_EQ(j["window"]["first"], 6);

  EvaluationReport sk = EvaluateReplay(Replay(games, RatingState({0, 0}), SkellamEngine{}),
                                       SkellamEngine{}, WindowSecondHalf(11));
  EXPECT_FALSE(sk.mse.has_value());
  EXPECT_TRUE(sk.log_score.has_value());
}

TEST(Spearman, Basics) {
  std::vector<double> a = {1, 2, 3, 4}, b = {10, 20, 30, 40}, c = {4, 3, 2, 1};
  EXPECT_NEAR(SpearmanCorrelation(a, b), 1.0, 1e-15);
  EXPECT_NEAR(SpearmanCorrelation(a, c), -1.0, 1e-15);
  std::vector<double> tied = {1, 1, 2, 3};
  EXPECT_GT(SpearmanCorrelation(tied, b), 0.9);
  EXPECT_THROW(SpearmanCorrelation(std::vector<double>{1}, std::vector<double>{1}),
               std::invalid_argument);
}

}  // namespace
}  // namespace fifarank
