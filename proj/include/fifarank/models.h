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

// Outcome models relating a scaled skill difference z to game results.
//
// Every function here takes z already divided by the scale; callers own the
// scale. The Davidson model works in base 10 (10^{z/2}), the Skellam model in
// natural-log units of the goal intensities.

#ifndef FIFARANK_MODELS_H_
#define FIFARANK_MODELS_H_

#include <stdexcept>

#include "fifarank/match_data.h"

namespace fifarank {

inline constexpr double kLn10 = 2.302585092994045684017991454684364208;

struct DavidsonParams {
  double eta = 0.0;    // home-field advantage
  double kappa = 2.0;  // draw propensity; 0 disables draws
  double scale = 600.0;
};

struct SkellamParams {
  double c = 0.0;  // log goal intensity at z + b*eta = 0
  double eta = 0.0;
  double scale = 300.0;
  int truncation = 50;  // outcome sums run over d in [-D, D]
};

struct OutcomeProbs {
  double home = 0;
  double draw = 0;
  double away = 0;

  double operator[](Outcome y) const {
    return y == Outcome::kHome ? home : y == Outcome::kDraw ? draw : away;
  }
};

// Thrown when |z + b*eta| exceeds kMaxSkellamExponent.
class IntensityOverflow : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kMaxSkellamExponent = 30.0;

// Logistic expected score 1 / (1 + 10^-z).
double FifaExpectedScore(double z);

OutcomeProbs DavidsonProbs(double z, int venue, const DavidsonParams& p);
double DavidsonLikelihood(double z, int venue, Outcome y, const DavidsonParams& p);
// -log L(z; y); +inf for a draw when kappa = 0.
double DavidsonLoss(double z, int venue, Outcome y, const DavidsonParams& p);
// F_kappa(z) = L(H) + L(D) / 2.
double DavidsonExpectedScore(double z, int venue, const DavidsonParams& p);
// d/dz of DavidsonLoss: -ln10 * (score(y) - F_kappa(z)).
double DavidsonGradient(double z, int venue, Outcome y, const DavidsonParams& p);
// d^2/dz^2 of DavidsonLoss; independent of y.
double DavidsonHessian(double z, int venue, const DavidsonParams& p);

// Exponentially scaled modified Bessel function I_v(t) * exp(-t), t >= 0.
double BesselIScaled(int order, double t);
// log(I_v(t) * exp(-t)); stays finite where BesselIScaled underflows.
double LogBesselIScaled(int order, double t);

// -log P(d | z) under the Skellam model with
// mu_home = exp(c + z + b*eta), mu_away = exp(c - z - b*eta).
double SkellamLoss(double z, int venue, int goal_diff, const SkellamParams& p);
// mu_home - mu_away.
double SkellamExpectedDiff(double z, int venue, const SkellamParams& p);
double SkellamGradient(double z, int venue, int goal_diff, const SkellamParams& p);
double SkellamHessian(double z, int venue, const SkellamParams& p);
// Away/draw/home probabilities from sums truncated at +-truncation.
OutcomeProbs SkellamOutcomeProbs(double z, int venue, const SkellamParams& p);

}  // namespace fifarank

#endif  // FIFARANK_MODELS_H_
