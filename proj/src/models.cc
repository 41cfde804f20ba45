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

#include "fifarank/models.h"

#include <cmath>
#include <limits>

namespace fifarank {
namespace {

// Half the shifted difference in natural-log units: u = ln10 * (z + eta*b) / 2.
double DavidsonExponent(double z, int venue, const DavidsonParams& p) {
  return 0.5 * kLn10 * (z + p.eta * venue);
}

// Davidson probabilities written with a = exp(-|u|) so nothing overflows:
// L(H) = e^u / (e^u + kappa + e^-u) = {1 or a^2} / (1 + kappa*a + a^2).
OutcomeProbs DavidsonFromExponent(double u, double kappa) {
  double a = std::exp(-std::abs(u));
  double a2 = a * a;
  double denom = 1.0 + kappa * a + a2;
  OutcomeProbs probs;
  probs.draw = kappa * a / denom;
  if (u >= 0) {
    probs.home = 1.0 / denom;
    probs.away = a2 / denom;
  } else {
    probs.home = a2 / denom;
    probs.away = 1.0 / denom;
  }
  return probs;
}

double SkellamExponent(double z, int venue, const SkellamParams& p) {
  double w = z + p.eta * venue;
  if (!(std::abs(w) <= kMaxSkellamExponent)) {
    throw IntensityOverflow("intensity overflow: |z + b*eta| = " +
                            std::to_string(std::abs(w)));
  }
  return w;
}

// log((t/2)^v / v!) and sum_k q^k / (k! (v+1)_k) with q = t^2/4.
double LogSeriesPrefactor(int order, double t) {
  return order * std::log(0.5 * t) - std::lgamma(order + 1.0);
}

double SeriesSum(int order, double t) {
  double q = 0.25 * t * t;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * (order + k));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

inline constexpr double kSeriesLimit = 15.0;

// Miller's backward recurrence I_{k-1} = I_{k+1} + (2k/t) I_k, normalized by
// the identity 1 = I~_0(t) + 2 sum_{k>=1} I~_k(t). Returns log I~_v(t).
double LogBesselBackward(int order, double t) {
  const int start =
      order + static_cast<int>(std::ceil(std::sqrt(80.0 * t))) + 40;
  constexpr double kRescale = 1e-250;
  const double log_rescale = std::log(kRescale);
  double next = 0.0;  // I_{k+1}
  double cur = 1e-300;  // I_k
  double sum = 0.0;     // 2 * sum_{j>=1} I_j, then + I_0
  double captured = 0.0;
  bool have_order = false;
  int rescales_after_capture = 0;
  for (int k = start; k >= 1; --k) {
    sum += 2.0 * cur;
    if (k == order) {
      captured = std::log(cur);
      have_order = true;
    }
    double prev = next + (2.0 * k / t) * cur;
    next = cur;
    cur = prev;
    if (cur > 1e250) {
      cur *= kRescale;
      next *= kRescale;
      sum *= kRescale;
      if (have_order) ++rescales_after_capture;
    }
  }
  // cur now holds I_0.
  sum += cur;
  if (order == 0) {
    captured = std::log(cur);
  } else {
    captured += rescales_after_capture * log_rescale;
  }
  return captured - std::log(sum);
}

}  // namespace

double FifaExpectedScore(double z) { return 1.0 / (1.0 + std::pow(10.0, -z)); }

OutcomeProbs DavidsonProbs(double z, int venue, const DavidsonParams& p) {
  return DavidsonFromExponent(DavidsonExponent(z, venue, p), p.kappa);
}

double DavidsonLikelihood(double z, int venue, Outcome y, const DavidsonParams& p) {
  return DavidsonProbs(z, venue, p)[y];
}

double DavidsonLoss(double z, int venue, Outcome y, const DavidsonParams& p) {
  double u = DavidsonExponent(z, venue, p);
  double a = std::exp(-std::abs(u));
  // log(e^u + kappa + e^-u) = |u| + log(1 + kappa*a + a^2)
  double log_denom = std::abs(u) + std::log1p(p.kappa * a + a * a);
  switch (y) {
    case Outcome::kHome:
      return log_denom - u;
    case Outcome::kAway:
      return log_denom + u;
    case Outcome::kDraw:
      if (p.kappa <= 0) return std::numeric_limits<double>::infinity();
      return log_denom - std::log(p.kappa);
  }
  return 0.0;
}

double DavidsonExpectedScore(double z, int venue, const DavidsonParams& p) {
  OutcomeProbs probs = DavidsonProbs(z, venue, p);
  return probs.home + 0.5 * probs.draw;
}

double DavidsonGradient(double z, int venue, Outcome y, const DavidsonParams& p) {
  return -kLn10 * (NumericScore(y) - DavidsonExpectedScore(z, venue, p));
}

double DavidsonHessian(double z, int venue, const DavidsonParams& p) {
  // (ln10)^2/4 * (k e^u + 4 + k e^-u) / (e^u + k + e^-u)^2, scaled by e^{-2|u|}.
  double u = DavidsonExponent(z, venue, p);
  double a = std::exp(-std::abs(u));
  double denom = 1.0 + p.kappa * a + a * a;
  double numer = p.kappa * a + 4.0 * a * a + p.kappa * a * a * a;
  return 0.25 * kLn10 * kLn10 * numer / (denom * denom);
}

double BesselIScaled(int order, double t) {
  if (order < 0) order = -order;
  if (t < 0) throw std::invalid_argument("BesselIScaled: t must be >= 0");
  if (t == 0) return order == 0 ? 1.0 : 0.0;
  if (t <= kSeriesLimit) {
    double prefactor = 1.0;
    double half = 0.5 * t;
    for (int i = 1; i <= order; ++i) prefactor *= half / i;
    return prefactor * SeriesSum(order, t) * std::exp(-t);
  }
  return std::exp(LogBesselBackward(order, t));
}

double LogBesselIScaled(int order, double t) {
  if (order < 0) order = -order;
  if (t < 0) throw std::invalid_argument("LogBesselIScaled: t must be >= 0");
  if (t == 0) return order == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (t <= kSeriesLimit) {
    return LogSeriesPrefactor(order, t) + std::log(SeriesSum(order, t)) - t;
  }
  return LogBesselBackward(order, t);
}

double SkellamLoss(double z, int venue, int goal_diff, const SkellamParams& p) {
  double w = SkellamExponent(z, venue, p);
  double intensity = std::exp(p.c);
  // mu_h + mu_a - 2 e^c = 4 e^c sinh^2(w/2)
  double sh = std::sinh(0.5 * w);
  return 4.0 * intensity * sh * sh - goal_diff * w -
         LogBesselIScaled(goal_diff, 2.0 * intensity);
}

double SkellamExpectedDiff(double z, int venue, const SkellamParams& p) {
  double w = SkellamExponent(z, venue, p);
  return 2.0 * std::exp(p.c) * std::sinh(w);
}

double SkellamGradient(double z, int venue, int goal_diff, const SkellamParams& p) {
  return -(goal_diff - SkellamExpectedDiff(z, venue, p));
}

double SkellamHessian(double z, int venue, const SkellamParams& p) {
  double w = SkellamExponent(z, venue, p);
  return 2.0 * std::exp(p.c) * std::cosh(w);
}

OutcomeProbs SkellamOutcomeProbs(double z, int venue, const SkellamParams& p) {
  OutcomeProbs probs;
  for (int d = -p.truncation; d <= p.truncation; ++d) {
    double mass = std::exp(-SkellamLoss(z, venue, d, p));
    if (d < 0) {
      probs.away += mass;
    } else if (d == 0) {
      probs.draw = mass;
    } else {
      probs.home += mass;
    }
  }
  return probs;
}

}  // namespace fifarank
