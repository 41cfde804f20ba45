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

// Prediction metrics over a window of games: squared error of the expected
// score, log-score and accuracy of outcome forecasts.

#ifndef FIFARANK_EVALUATION_H_
#define FIFARANK_EVALUATION_H_

#include <optional>
#include <span>
#include <string>

#include "fifarank/match_data.h"
#include "fifarank/models.h"
#include "fifarank/online_rating.h"
#include "json.hpp"

namespace fifarank {

// Inclusive range of match indices.
struct GameWindow {
  int first = 1;
  int last = 0;

  bool Contains(int match_index) const {
    return match_index >= first && match_index <= last;
  }
  int size() const { return last >= first ? last - first + 1 : 0; }
};

// Games floor(T/2)+1 .. T.
GameWindow WindowSecondHalf(int num_games);
GameWindow WindowAll(int num_games);

struct ScoreForecast {
  int match_index = 0;
  double expected = 0;
  double realized = 0;
};

struct Forecast {
  int match_index = 0;
  OutcomeProbs probs;
  Outcome observed = Outcome::kDraw;
};

// Argmax with ties resolved in the order H, D, A.
Outcome PredictedOutcome(const OutcomeProbs& probs);
bool HasTiedMaximum(const OutcomeProbs& probs);

// Mean squared difference. Throws std::invalid_argument on an empty window.
double Mse(std::span<const ScoreForecast> games, GameWindow window);

struct LogScoreResult {
  double value = 0;  // +inf when some observed outcome had probability 0
  int games = 0;
  std::optional<int> zero_probability_at;  // first offending match index
};
LogScoreResult LogScore(std::span<const Forecast> games, GameWindow window);

struct AccuracyResult {
  double value = 0;
  int games = 0;
  int ties = 0;  // forecasts whose maximum was shared
};
AccuracyResult Accuracy(std::span<const Forecast> games, GameWindow window);

struct EvaluationReport {
  std::optional<double> mse;
  std::optional<double> log_score;
  std::optional<double> accuracy;
  std::optional<int> zero_probability_at;
  GameWindow window;
  int games_counted = 0;
  int accuracy_ties = 0;
  int rule_affected_games = 0;  // within the window
  nlohmann::json params_echo = nlohmann::json::object();
};

nlohmann::json ToJson(const EvaluationReport& report);

// Metrics of an online replay. MSE is reported for engines whose expected
// score lives in [0, 1] (FIFA and Davidson), not for the Skellam engine.
EvaluationReport EvaluateReplay(const ReplayResult& replay, const Engine& engine,
                                GameWindow window, nlohmann::json params_echo = {});

// Rank correlation with average ranks for ties. Requires equal sizes >= 2.
double SpearmanCorrelation(std::span<const double> a, std::span<const double> b);

}  // namespace fifarank

#endif  // FIFARANK_EVALUATION_H_
