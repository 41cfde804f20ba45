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

#include "fifarank/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace fifarank {
namespace {

std::string TeamName(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "T%02d", index + 1);
  return buf;
}

Outcome SampleOutcome(const OutcomeProbs& probs, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  if (u < probs.home) return Outcome::kHome;
  if (u < probs.home + probs.draw) return Outcome::kDraw;
  return Outcome::kAway;
}

}  // namespace

SynthData GenerateSynthetic(const SynthOptions& options) {
  if (options.num_teams < 2) throw std::invalid_argument("need at least two teams");
  if (options.num_games < 0) throw std::invalid_argument("negative game count");
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> pick_team(0, options.num_teams - 1);
  std::uniform_int_distribution<int> pick_category(0, kNumCategories - 1);
  std::bernoulli_distribution home_venue(options.home_venue_rate);

  const double scale =
      options.skellam ? options.skellam_params.scale : options.davidson.scale;
  SynthData data;
  std::vector<double> skills(options.num_teams);
  for (int m = 0; m < options.num_teams; ++m) {
    data.matches.teams.Intern(TeamName(m));
    skills[m] = options.skill_spread * scale * normal(rng);
  }
  double mean = 0;
  for (double s : skills) mean += s;
  mean /= options.num_teams;
  for (int m = 0; m < options.num_teams; ++m) data.truth[m] = skills[m] - mean;

  const std::chrono::sys_days start =
      std::chrono::year_month_day{std::chrono::year(2018), std::chrono::June,
                                  std::chrono::day(4)};
  for (int t = 0; t < options.num_games; ++t) {
    MatchRecord m;
    m.match_index = t + 1;
    m.date = std::chrono::year_month_day{start + std::chrono::days(t)};
    m.home = pick_team(rng);
    do {
      m.away = pick_team(rng);
    } while (m.away == m.home);
    m.category = pick_category(rng);
    m.home_venue = home_venue(rng);
    double z = (data.truth[m.home] - data.truth[m.away]) / scale;

    if (options.skellam) {
      const SkellamParams& p = options.skellam_params;
      double w = z + p.eta * m.Venue();
      std::poisson_distribution<int> home_goals(std::exp(p.c + w));
      std::poisson_distribution<int> away_goals(std::exp(p.c - w));
      m.home_goals = std::min(home_goals(rng), kMaxGoals);
      m.away_goals = std::min(away_goals(rng), kMaxGoals);
    } else {
      Outcome y = SampleOutcome(DavidsonProbs(z, m.Venue(), options.davidson), rng);
      std::poisson_distribution<int> base(0.8);
      std::poisson_distribution<int> margin(0.6);
      int low = base(rng);
      if (y == Outcome::kDraw) {
        m.home_goals = m.away_goals = low;
      } else {
        int high = low + 1 + margin(rng);
        m.home_goals = y == Outcome::kHome ? high : low;
        m.away_goals = y == Outcome::kHome ? low : high;
      }
    }
    data.matches.matches.push_back(m);
  }
  return data;
}

}  // namespace fifarank
