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

// Hyperparameter search: one parameter at a time over a grid, plus the
// closed-form home-advantage/draw estimates from outcome frequencies.

#ifndef FIFARANK_TUNING_H_
#define FIFARANK_TUNING_H_

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fifarank/batch_rating.h"
#include "fifarank/evaluation.h"
#include "fifarank/online_rating.h"

namespace fifarank {

// Named hyperparameters: K, s, alpha, eta, kappa, c, D, V, xi0..xi8,
// zeta0..zetaV, forecast_kappa, forecast_eta, forecast_s.
using ParamSet = std::map<std::string, double>;

enum class ModelKind { kFifa, kDavidson, kSkellam };

ModelKind ParseModelKind(const std::string& name);
std::string ModelKindName(ModelKind kind);

// Defaults for every parameter the model understands.
ParamSet DefaultOnlineParams(ModelKind kind);
ParamSet DefaultBatchParams(ModelKind kind);

// Overlays `overrides` on the defaults; unknown keys throw.
ParamSet ResolveParams(const ParamSet& defaults, const ParamSet& overrides);

Engine MakeEngine(ModelKind kind, const ParamSet& params);
WeightScheme MakeWeights(const ParamSet& params);
// Batch problem for the Davidson or Skellam model.
BatchProblem MakeBatchProblem(ModelKind kind, const ParamSet& params,
                              std::vector<MatchRecord> matches, int num_teams);

struct ParamSpec {
  std::string name;
  bool free = false;
  double value = 0;  // fixed value, or the starting point when free
  double lower = 0;
  double upper = 0;
  double step = 0;

  static ParamSpec Fixed(std::string name, double value);
  static ParamSpec Free(std::string name, double lower, double upper, double step,
                        double start);
};

// Grid used when a parameter is declared free without explicit bounds.
std::optional<ParamSpec> DefaultGrid(const std::string& name);

struct TraceEntry {
  int sweep = 0;
  std::string param;
  double value = 0;
  double objective = 0;
};

struct TuneResult {
  ParamSet best;
  double best_objective = 0;
  double initial_objective = 0;
  std::vector<TraceEntry> trace;
  int evaluations = 0;
  int sweeps = 0;
};

using TuneObjective = std::function<double(const ParamSet&)>;

struct SearchOptions {
  double tol = 1e-5;
  int max_sweeps = 50;
  bool parallel = true;  // evaluate grid points of one coordinate concurrently
};

// Alternating minimization: each free parameter in turn is set to the grid
// minimum of its 1-D restriction (refined once at half the grid step).
// Objective exceptions count as +inf.
TuneResult CoordinateSearch(const TuneObjective& objective,
                            std::span<const ParamSpec> specs,
                            const SearchOptions& options = {});

// `key = value` or `key = [lower, upper, step(, start)]` or `key = free`.
// '#' starts a comment. Free parameters without a start begin at
// `defaults[key]` clamped to the bounds, or at the lower bound.
std::vector<ParamSpec> ParseTuneConfig(std::istream& in, const ParamSet& defaults);

void WriteTrace(std::ostream& out, const TuneResult& result);

struct EtaKappa {
  double eta = 0;
  double kappa = 0;
};

// eta = log10(f_H / f_A), kappa = f_D / sqrt(f_H f_A).
EtaKappa EmpiricalEtaKappa(const OutcomeFrequencies& freq);

enum class OnlineMetric { kMse, kLogScore };

// Metric of a full replay over the second half of the games.
TuneObjective MakeOnlineObjective(std::vector<MatchRecord> matches,
                                  RatingState initial, ModelKind kind,
                                  OnlineMetric metric, RuleToggles rules = {});

// Approximate leave-one-out log-score of a batch fit.
TuneObjective MakeAloObjective(std::vector<MatchRecord> matches, int num_teams,
                               ModelKind kind);

}  // namespace fifarank

#endif  // FIFARANK_TUNING_H_
