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

// Seeded synthetic match data sampled from the Davidson or Skellam model at
// known skills. Stands in for real results when testing recovery.

#ifndef FIFARANK_SYNTH_H_
#define FIFARANK_SYNTH_H_

#include <cstdint>
#include <map>
#include <vector>

#include "fifarank/match_data.h"
#include "fifarank/models.h"

namespace fifarank {

struct SynthOptions {
  std::uint64_t seed = 1;
  int num_teams = 8;
  int num_games = 200;
  bool skellam = false;
  DavidsonParams davidson{0.3, 0.8, 200.0};
  SkellamParams skellam_params{0.0, 0.2, 300.0, 50};
  double skill_spread = 1.0;      // std-dev of true skills in units of the scale
  double home_venue_rate = 0.7;   // fraction of games with b = 1
  double initial_rating = 1500.0; // written to the initial-ratings file
};

struct SynthData {
  MatchSet matches;
  std::map<TeamId, double> truth;  // ground-truth skills, rating points
};

SynthData GenerateSynthetic(const SynthOptions& options);

}  // namespace fifarank

#endif  // FIFARANK_SYNTH_H_
