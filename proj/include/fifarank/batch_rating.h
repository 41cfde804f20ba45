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

// Regularized weighted maximum-likelihood fit of constant skills:
//
//   J(theta) = sum_t w_t * loss(x_t' theta / s; y_t) + alpha / (2 s^2) |theta|^2
//
// where x_t = e_home - e_away and w_t = xi_c * zeta_v.

#ifndef FIFARANK_BATCH_RATING_H_
#define FIFARANK_BATCH_RATING_H_

#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "fifarank/match_data.h"
#include "fifarank/models.h"
#include "fifarank/online_rating.h"

namespace fifarank {

// Per-game loss 0.5 * curvature * (z - target)^2 with target = score(y) - 0.5.
// A testing hook: with a quadratic loss one Newton step is exact, so
// approximate leave-one-out must match the exact refit.
struct QuadraticLoss {
  double curvature = 1.0;
  double scale = 1.0;
};

using BatchModel = std::variant<DavidsonParams, SkellamParams, QuadraticLoss>;

struct BatchProblem {
  std::vector<MatchRecord> matches;
  int num_teams = 0;
  BatchModel model = DavidsonParams{};
  WeightScheme weights;
  double alpha = 1.0;

  double scale() const;
  double GameWeight(const MatchRecord& match) const { return weights.Weight(match); }
};

// Loss value and its first two derivatives in the scaled difference z.
struct LossTerms {
  double value = 0;
  double gradient = 0;
  double hessian = 0;
};

LossTerms GameLoss(const BatchModel& model, double z, const MatchRecord& match);

double Objective(const Eigen::VectorXd& theta, const BatchProblem& problem);
Eigen::VectorXd Gradient(const Eigen::VectorXd& theta, const BatchProblem& problem);
Eigen::MatrixXd Hessian(const Eigen::VectorXd& theta, const BatchProblem& problem);

// Teams whose every result has the same sign (all wins or all losses).
std::vector<TeamId> SingleSignedTeams(const BatchProblem& problem);

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverLogEntry {
  int iter = 0;
  double objective = 0;
  double grad_norm = 0;
  double step = 0;
};

struct SolveOptions {
  double tol = 1e-8;  // max-norm of the gradient
  int max_iter = 200;
};

struct BatchSolution {
  Eigen::VectorXd theta;
  double objective = 0;
  double gradient_norm = 0;
  Eigen::MatrixXd hessian;  // at theta
  int iterations = 0;
  std::vector<SolverLogEntry> log;
};

// Damped Newton with halving line search; falls back to a gradient step when
// the Newton direction does not decrease J. Starts at zero unless `init`.
BatchSolution Solve(const BatchProblem& problem, const SolveOptions& options = {},
                    const Eigen::VectorXd* init = nullptr);

}  // namespace fifarank

#endif  // FIFARANK_BATCH_RATING_H_
