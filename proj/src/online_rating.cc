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

#include "fifarank/online_rating.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fifarank {

RatingState::RatingState(std::vector<double> skills, int as_of)
    : skills_(std::move(skills)),
      as_of_(as_of),
      total_points_(std::accumulate(skills_.begin(), skills_.end(), 0.0)) {}

RatingState RatingState::FromRatings(const TeamRegistry& teams,
                                     const std::map<TeamId, double>& ratings,
                                     bool seed_newcomers) {
  double mean = 0;
  for (const auto& [id, rating] : ratings) mean += rating;
  if (!ratings.empty()) mean /= static_cast<double>(ratings.size());
  std::vector<double> skills(teams.size(), 0.0);
  for (TeamId id = 0; id < teams.size(); ++id) {
    auto it = ratings.find(id);
    if (it != ratings.end()) {
      skills[id] = it->second;
    } else if (seed_newcomers) {
      skills[id] = mean;
    } else {
      throw std::invalid_argument("no initial rating for team '" +
                                  teams.Name(id) + "'");
    }
  }
  return RatingState(std::move(skills));
}

void RatingState::CheckTeam(TeamId id) const {
  if (id < 0 || id >= size()) {
    throw std::out_of_range("unknown team id " + std::to_string(id));
  }
}

void RatingState::Apply(TeamId home, double home_change, TeamId away,
                        double away_change, int match_index) {
  skills_[home] += home_change;
  skills_[away] += away_change;
  total_points_ += home_change + away_change;
  as_of_ = match_index;
}

ImportanceTable ImportanceTable::FromStepAndWeights(
    double k, const std::array<double, kNumCategories>& xi) {
  ImportanceTable table;
  for (int c = 0; c < kNumCategories; ++c) table.steps[c] = k * xi[c];
  return table;
}

double WeightScheme::Weight(const MatchRecord& match) const {
  double w = xi[match.category];
  if (UsesMov()) w *= zeta[MovCategory(match.GoalDiff(), mov_cap())];
  return w;
}

void WeightScheme::Validate() const {
  if (xi[0] != 1.0) throw std::invalid_argument("xi_0 is pinned to 1");
  if (zeta.empty() || zeta[0] != 1.0) {
    throw std::invalid_argument("zeta_0 is pinned to 1");
  }
  for (double w : xi) {
    if (!(w >= 0) || !std::isfinite(w)) {
      throw std::invalid_argument("category weights must be finite and >= 0");
    }
  }
  for (double w : zeta) {
    if (!(w >= 0) || !std::isfinite(w)) {
      throw std::invalid_argument("MOV weights must be finite and >= 0");
    }
  }
}

double EngineScale(const Engine& engine) {
  return std::visit(
      [](const auto& e) -> double {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, FifaEngine>) {
          return e.scale;
        } else {
          return e.params.scale;
        }
      },
      engine);
}

Engine WithScale(const Engine& engine, double scale) {
  return std::visit(
      [scale](auto e) -> Engine {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, FifaEngine>) {
          e.forecast.scale *= scale / e.scale;
          e.scale = scale;
        } else {
          e.params.scale = scale;
        }
        return e;
      },
      engine);
}

namespace {

struct FifaStep {
  RatingChange change;
  double home_score = 0;
  bool rule_affected = false;
};

FifaStep ComputeFifaStep(const RatingState& state, const MatchRecord& match,
                         const ImportanceTable& table, double scale,
                         RuleToggles rules) {
  state.CheckTeam(match.home);
  state.CheckTeam(match.away);
  double z = state.skill(match.home) - state.skill(match.away);
  FifaStep step;
  double home_score = SubjectiveScore(match, Side::kHome, rules.shootout);
  double away_score = SubjectiveScore(match, Side::kAway, rules.shootout);
  step.rule_affected = home_score + away_score != 1.0;
  double delta_home = home_score - FifaExpectedScore(z / scale);
  double delta_away = away_score - FifaExpectedScore(-z / scale);
  if (rules.knockout && match.knockout) {
    if (delta_home < 0 || delta_away < 0) step.rule_affected = true;
    delta_home = std::max(0.0, delta_home);
    delta_away = std::max(0.0, delta_away);
  }
  double importance = table.steps.at(match.category);
  step.change = {importance * delta_home, importance * delta_away};
  step.home_score = home_score;
  return step;
}

}  // namespace

RatingChange FifaUpdate(RatingState& state, const MatchRecord& match,
                        const ImportanceTable& table, double scale,
                        RuleToggles rules) {
  FifaStep step = ComputeFifaStep(state, match, table, scale, rules);
  state.Apply(match.home, step.change.home, match.away, step.change.away,
              match.match_index);
  return step.change;
}

RatingChange SgUpdateDavidson(RatingState& state, const MatchRecord& match,
                              double k, const WeightScheme& weights,
                              const DavidsonParams& p) {
  state.CheckTeam(match.home);
  state.CheckTeam(match.away);
  double z = (state.skill(match.home) - state.skill(match.away)) / p.scale;
  double residual =
      NumericScore(OutcomeOf(match)) - DavidsonExpectedScore(z, match.Venue(), p);
  double change = k * weights.Weight(match) * residual;
  state.Apply(match.home, change, match.away, -change, match.match_index);
  return {change, -change};
}

RatingChange SgUpdateSkellam(RatingState& state, const MatchRecord& match,
                             double k, const SkellamParams& p) {
  state.CheckTeam(match.home);
  state.CheckTeam(match.away);
  double z = (state.skill(match.home) - state.skill(match.away)) / p.scale;
  double change = k * (match.GoalDiff() - SkellamExpectedDiff(z, match.Venue(), p));
  state.Apply(match.home, change, match.away, -change, match.match_index);
  return {change, -change};
}

RatingState ReplayResult::StateAfter(int match_index) const {
  std::vector<double> skills = initial.skills();
  int as_of = initial.as_of();
  for (const TrajectoryEntry& e : trajectory) {
    if (e.match_index > match_index) break;
    skills[e.team] = e.after;
    as_of = e.match_index;
  }
  return RatingState(std::move(skills), as_of);
}

ReplayResult Replay(std::span<const MatchRecord> matches,
                    const RatingState& initial, const Engine& engine,
                    RuleToggles rules) {
  ReplayResult result;
  result.initial = initial;
  RatingState state = initial;
  result.games.reserve(matches.size());
  result.trajectory.reserve(2 * matches.size());
  for (const MatchRecord& match : matches) {
    state.CheckTeam(match.home);
    state.CheckTeam(match.away);
    GamePrediction game;
    game.match_index = match.match_index;
    game.z = state.skill(match.home) - state.skill(match.away);
    game.observed = OutcomeOf(match);
    double home_before = state.skill(match.home);
    double away_before = state.skill(match.away);

    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, FifaEngine>) {
            FifaStep step = ComputeFifaStep(state, match, e.table, e.scale, rules);
            game.expected_score = FifaExpectedScore(game.z / e.scale);
            game.realized_score = step.home_score;
            game.probs = DavidsonProbs(game.z / e.forecast.scale, match.Venue(),
                                       e.forecast);
            game.rule_affected = step.rule_affected;
            state.Apply(match.home, step.change.home, match.away,
                        step.change.away, match.match_index);
          } else if constexpr (std::is_same_v<T, DavidsonEngine>) {
            double zs = game.z / e.params.scale;
            game.expected_score = DavidsonExpectedScore(zs, match.Venue(), e.params);
            game.realized_score = NumericScore(game.observed);
            game.probs = DavidsonProbs(zs, match.Venue(), e.params);
            SgUpdateDavidson(state, match, e.k, e.weights, e.params);
          } else {
            double zs = game.z / e.params.scale;
            game.expected_score = SkellamExpectedDiff(zs, match.Venue(), e.params);
            game.realized_score = match.GoalDiff();
            game.probs = SkellamOutcomeProbs(zs, match.Venue(), e.params);
            SgUpdateSkellam(state, match, e.k, e.params);
          }
        },
        engine);

    if (game.rule_affected) ++result.rule_affected_games;
    result.trajectory.push_back(
        {match.match_index, match.home, home_before, state.skill(match.home)});
    result.trajectory.push_back(
        {match.match_index, match.away, away_before, state.skill(match.away)});
    result.games.push_back(game);
  }
  result.inflation = state.total_points() - initial.total_points();
  result.final_state = std::move(state);
  return result;
}

double SkillStdDev(const RatingState& state) {
  const auto& skills = state.skills();
  if (skills.empty()) throw std::invalid_argument("no teams");
  double mean = std::accumulate(skills.begin(), skills.end(), 0.0) /
                static_cast<double>(skills.size());
  double sq = 0;
  for (double s : skills) sq += (s - mean) * (s - mean);
  return std::sqrt(sq / static_cast<double>(skills.size()));
}

ScaleSelection SelectScale(std::span<const MatchRecord> matches,
                           const RatingState& initial, const Engine& engine,
                           std::span<const double> candidates,
                           RuleToggles rules) {
  if (candidates.empty()) throw std::invalid_argument("no candidate scales");
  ScaleSelection selection;
  selection.initial_stddev = SkillStdDev(initial);
  std::vector<double> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end());
  double best_gap = std::numeric_limits<double>::infinity();
  for (double scale : sorted) {
    if (!(scale > 0)) throw std::invalid_argument("scales must be positive");
    ReplayResult run = Replay(matches, initial, WithScale(engine, scale), rules);
    double sigma = SkillStdDev(run.final_state);
    selection.table.push_back({scale, sigma});
    double gap = std::abs(sigma - selection.initial_stddev);
    if (gap < best_gap) {
      best_gap = gap;
      selection.chosen_scale = scale;
    }
  }
  return selection;
}

}  // namespace fifarank
