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

#include <cmath>
#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fifarank {

GameWindow WindowSecondHalf(int num_games) { return {num_games / 2 + 1, num_games}; }

GameWindow WindowAll(int num_games) { return {1, num_games}; }

Outcome PredictedOutcome(const OutcomeProbs& probs) {
  Outcome best = Outcome::kHome;
  double best_p = probs.home;
  if (probs.draw > best_p) {
    best = Outcome::kDraw;
    best_p = probs.draw;
  }
  if (probs.away > best_p) best = Outcome::kAway;
  return best;
}

bool HasTiedMaximum(const OutcomeProbs& probs) {
  double top = std::max({probs.home, probs.draw, probs.away});
  int count = (probs.home == top) + (probs.draw == top) + (probs.away == top);
  return count > 1;
}

double Mse(std::span<const ScoreForecast> games, GameWindow window) {
  double sum = 0;
  int count = 0;
  for (const ScoreForecast& g : games) {
    if (!window.Contains(g.match_index)) continue;
    double err = g.realized - g.expected;
    sum += err * err;
    ++count;
  }
  if (count == 0) throw std::invalid_argument("empty evaluation window");
  return sum / count;
}

LogScoreResult LogScore(std::span<const Forecast> games, GameWindow window) {
  LogScoreResult result;
  double sum = 0;
  for (const Forecast& g : games) {
    if (!window.Contains(g.match_index)) continue;
    ++result.games;
    double p = g.probs[g.observed];
    if (!(p > 0)) {
      if (!result.zero_probability_at) result.zero_probability_at = g.match_index;
      sum = std::numeric_limits<double>::infinity();
      continue;
    }
    sum -= std::log(p);
  }
  if (result.games == 0) throw std::invalid_argument("empty evaluation window");
  result.value = sum / result.games;
  return result;
}

AccuracyResult Accuracy(std::span<const Forecast> games, GameWindow window) {
  AccuracyResult result;
  int hits = 0;
  for (const Forecast& g : games) {
    if (!window.Contains(g.match_index)) continue;
    ++result.games;
    if (PredictedOutcome(g.probs) == g.observed) ++hits;
    if (HasTiedMaximum(g.probs)) ++result.ties;
  }
  if (result.games == 0) throw std::invalid_argument("empty evaluation window");
  result.value = static_cast<double>(hits) / result.games;
  return result;
}

nlohmann::json ToJson(const EvaluationReport& report) {
  nlohmann::json j;
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    if (!v) return nullptr;
    if (std::isinf(*v)) return "inf";
    return *v;
  };
  j["mse"] = opt(report.mse);
  j["log_score"] = opt(report.log_score);
  j["accuracy"] = opt(report.accuracy);
  j["zero_probability_at"] = report.zero_probability_at
                                 ? nlohmann::json(*report.zero_probability_at)
                                 : nlohmann::json(nullptr);
  j["window"] = {{"first", report.window.first}, {"last", report.window.last}};
  j["games_counted"] = report.games_counted;
  j["accuracy_ties"] = report.accuracy_ties;
  j["rule_affected_games"] = report.rule_affected_games;
  j["params"] = report.params_echo;
  return j;
}

EvaluationReport EvaluateReplay(const ReplayResult& replay, const Engine& engine,
                                GameWindow window, nlohmann::json params_echo) {
  EvaluationReport report;
  report.window = window;
  report.params_echo = std::move(params_echo);
  std::vector<Forecast> forecasts;
  std::vector<ScoreForecast> scores;
  for (const GamePrediction& g : replay.games) {
    forecasts.push_back({g.match_index, g.probs, g.observed});
    scores.push_back({g.match_index, g.expected_score, g.realized_score});
    if (window.Contains(g.match_index) && g.rule_affected) ++report.rule_affected_games;
  }
  LogScoreResult ls = LogScore(forecasts, window);
  AccuracyResult acc = Accuracy(forecasts, window);
  report.log_score = ls.value;
  report.zero_probability_at = ls.zero_probability_at;
  report.accuracy = acc.value;
  report.accuracy_ties = acc.ties;
  report.games_counted = ls.games;
  if (!std::holds_alternative<SkellamEngine>(engine)) report.mse = Mse(scores, window);
  return report;
}

}  // namespace fifarank

namespace fifarank {
namespace {

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t i, size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(values.size());
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double SpearmanCorrelation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw std::invalid_argument("rank correlation needs two equal samples of size >= 2");
  }
  std::vector<double> ra = AverageRanks(a);
  std::vector<double> rb = AverageRanks(b);
  const double n = static_cast<double>(a.size());
  double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0 || sbb == 0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace fifarank
