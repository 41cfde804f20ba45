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

// Game-by-game rating: the FIFA replica and stochastic-gradient engines for
// the Davidson and Skellam models.

#ifndef FIFARANK_ONLINE_RATING_H_
#define FIFARANK_ONLINE_RATING_H_

#include <array>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "fifarank/match_data.h"
#include "fifarank/models.h"

namespace fifarank {

class RatingState {
 public:
  RatingState() = default;
  explicit RatingState(std::vector<double> skills, int as_of = 0);

  // Builds a state for every team in `teams` from explicit ratings. Teams
  // without a rating are an error unless `seed_newcomers`, in which case
  // they receive the mean of the given ratings.
  static RatingState FromRatings(const TeamRegistry& teams,
                                 const std::map<TeamId, double>& ratings,
                                 bool seed_newcomers);

  int size() const { return static_cast<int>(skills_.size()); }
  double skill(TeamId id) const { return skills_.at(id); }
  const std::vector<double>& skills() const { return skills_; }
  double total_points() const { return total_points_; }
  int as_of() const { return as_of_; }

  // Adds to two entries and advances as_of; keeps total_points in sync.
  void Apply(TeamId home, double home_change, TeamId away, double away_change,
             int match_index);
  void CheckTeam(TeamId id) const;

 private:
  std::vector<double> skills_;
  int as_of_ = 0;
  double total_points_ = 0;
};

// Update steps I_c = K * xi_c for the nine FIFA categories.
struct ImportanceTable {
  std::array<double, kNumCategories> steps = {5, 10, 15, 25, 25, 35, 40, 50, 60};

  static ImportanceTable FromStepAndWeights(
      double k, const std::array<double, kNumCategories>& xi);
};

// Category weights xi_0..xi_8 and margin-of-victory weights zeta_0..zeta_V.
// xi_0 and zeta_0 are pinned to 1. Weights may be zero (the game is ignored).
struct WeightScheme {
  std::array<double, kNumCategories> xi = {1, 1, 1, 1, 1, 1, 1, 1, 1};
  std::vector<double> zeta = {1};  // size V + 1; V = 0 disables MOV weighting

  int mov_cap() const { return static_cast<int>(zeta.size()) - 1; }
  double Weight(const MatchRecord& match) const;
  // Throws std::invalid_argument on a broken pin or a negative weight.
  void Validate() const;
  bool UsesMov() const { return zeta.size() > 1; }
};

struct RuleToggles {
  bool shootout = true;
  bool knockout = true;
};

struct FifaEngine {
  ImportanceTable table;
  double scale = 600.0;
  // Draw model used only to turn the logistic expected score into outcome
  // probabilities for log-score/accuracy. With kappa = 2 and eta = 0 the
  // wrapper reproduces F(z/s) exactly when its scale is s/2.
  DavidsonParams forecast{0.0, 2.0, 300.0};
};

struct DavidsonEngine {
  double k = 35.0;  // ln10 absorbed
  WeightScheme weights;
  DavidsonParams params{0.3, 0.9, 200.0};
};

struct SkellamEngine {
  double k = 7.5;
  SkellamParams params{-0.1, 0.2, 300.0, 50};
};

using Engine = std::variant<FifaEngine, DavidsonEngine, SkellamEngine>;

double EngineScale(const Engine& engine);
Engine WithScale(const Engine& engine, double scale);

struct RatingChange {
  double home = 0;
  double away = 0;
};

RatingChange FifaUpdate(RatingState& state, const MatchRecord& match,
                        const ImportanceTable& table, double scale = 600.0,
                        RuleToggles rules = {});
RatingChange SgUpdateDavidson(RatingState& state, const MatchRecord& match,
                              double k, const WeightScheme& weights,
                              const DavidsonParams& p);
RatingChange SgUpdateSkellam(RatingState& state, const MatchRecord& match,
                             double k, const SkellamParams& p);

// Everything known about a game just before its update.
struct GamePrediction {
  int match_index = 0;
  double z = 0;               // home minus away skill, rating points
  double expected_score = 0;  // F(z/s), F_kappa(z/s) or expected goal diff
  double realized_score = 0;  // home score used by the update (or goal diff)
  OutcomeProbs probs;
  Outcome observed = Outcome::kDraw;
  bool rule_affected = false;  // knockout clamp or shootout substitution used
};

struct TrajectoryEntry {
  int match_index = 0;
  TeamId team = 0;
  double before = 0;
  double after = 0;
};

struct ReplayResult {
  RatingState initial;
  RatingState final_state;
  std::vector<GamePrediction> games;
  std::vector<TrajectoryEntry> trajectory;  // two entries per game
  double inflation = 0;                     // final minus initial total
  int rule_affected_games = 0;

  // Ratings just after game `match_index` (0 gives the initial state).
  RatingState StateAfter(int match_index) const;
};

ReplayResult Replay(std::span<const MatchRecord> matches,
                    const RatingState& initial, const Engine& engine,
                    RuleToggles rules = {});

// Population standard deviation of the skills.
double SkillStdDev(const RatingState& state);

struct ScaleCandidate {
  double scale = 0;
  double final_stddev = 0;
};

struct ScaleSelection {
  double chosen_scale = 0;
  double initial_stddev = 0;
  std::vector<ScaleCandidate> table;  // sorted by scale
};

// Picks the candidate whose final skill spread is closest to the initial
// spread; ties go to the smallest scale.
ScaleSelection SelectScale(std::span<const MatchRecord> matches,
                           const RatingState& initial, const Engine& engine,
                           std::span<const double> candidates,
                           RuleToggles rules = {});

}  // namespace fifarank

#endif  // FIFARANK_ONLINE_RATING_H_
