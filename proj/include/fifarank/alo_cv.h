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

// Approximate leave-one-out predictions from a single full-data fit.
//
// For game t with weight w, scaled-loss derivatives g and h at the full fit,
// and a = x' H^-1 x, the left-out prediction is
//
//   x' theta_{-t} ~= x' theta + w g a s / (s^2 - w h a).

#ifndef FIFARANK_ALO_CV_H_
#define FIFARANK_ALO_CV_H_

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "fifarank/batch_rating.h"
#include "fifarank/evaluation.h"

namespace fifarank {

struct AloPrediction {
  int match_index = 0;
  double z_full = 0;  // rating points
  double z_loo = 0;
  double leverage = 0;  // a = x' H^-1 x
  double correction = 0;
  double denominator = 0;  // s^2 - w h a
};

class AloSingularity : public std::runtime_error {
 public:
  AloSingularity(int match_index, double denominator);
  int match_index() const { return match_index_; }

 private:
  int match_index_;
};

// `solution` must be the fit of exactly `problem`.
std::vector<AloPrediction> AloPredictions(const BatchSolution& solution,
                                          const BatchProblem& problem);

// x_t' theta from a refit without game `match_index`.
double ExactLoo(const BatchProblem& problem, int match_index,
                const SolveOptions& options = {});

// Outcome forecast at a given skill difference (rating points).
OutcomeProbs ForecastAt(const BatchModel& model, double z, int venue);

enum class AloMetric { kLogScore, kAccuracy };

struct AloEvaluation {
  EvaluationReport report;  // log_score and accuracy over all games
  std::vector<AloPrediction> predictions;
  std::vector<double> log_score_terms;  // -log p(observed) per game
  std::vector<double> accuracy_terms;   // 1 when the argmax was observed
};

AloEvaluation AloScores(const BatchProblem& problem, const BatchSolution& solution);

// CSV `t,z_full,z_loo,a_t,correction,metric_contribution`.
void WriteAloReport(std::ostream& out, const AloEvaluation& evaluation,
                    AloMetric metric);

}  // namespace fifarank

#endif  // FIFARANK_ALO_CV_H_
