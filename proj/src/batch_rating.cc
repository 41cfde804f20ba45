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

#include "fifarank/batch_rating.h"

#include <cmath>
#include <limits>
#include <sstream>

namespace fifarank {

double BatchProblem::scale() const {
  return std::visit([](const auto& m) { return m.scale; }, model);
}

LossTerms GameLoss(const BatchModel& model, double z, const MatchRecord& match) {
  return std::visit(
      [&](const auto& m) -> LossTerms {
        using T = std::decay_t<decltype(m)>;
        const int venue = match.Venue();
        if constexpr (std::is_same_v<T, DavidsonParams>) {
          Outcome y = OutcomeOf(match);
          return {DavidsonLoss(z, venue, y, m), DavidsonGradient(z, venue, y, m),
                  DavidsonHessian(z, venue, m)};
        } else if constexpr (std::is_same_v<T, SkellamParams>) {
          int d = match.GoalDiff();
          return {SkellamLoss(z, venue, d, m), SkellamGradient(z, venue, d, m),
                  SkellamHessian(z, venue, m)};
        } else {
          double residual = z - (NumericScore(OutcomeOf(match)) - 0.5);
          return {0.5 * m.curvature * residual * residual, m.curvature * residual,
                  m.curvature};
        }
      },
      model);
}

namespace {

void CheckTeams(const BatchProblem& problem) {
  for (const MatchRecord& m : problem.matches) {
    if (m.home < 0 || m.home >= problem.num_teams || m.away < 0 ||
        m.away >= problem.num_teams) {
      throw std::out_of_range("match " + std::to_string(m.match_index) +
                              " references an unknown team");
    }
  }
}

double ScaledDiff(const Eigen::VectorXd& theta, const MatchRecord& m, double s) {
  return (theta[m.home] - theta[m.away]) / s;
}

double MaxNorm(const Eigen::VectorXd& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

}  // namespace

double Objective(const Eigen::VectorXd& theta, const BatchProblem& problem) {
  const double s = problem.scale();
  double total = 0;
  for (const MatchRecord& m : problem.matches) {
    double w = problem.GameWeight(m);
    if (w == 0) continue;
    total += w * GameLoss(problem.model, ScaledDiff(theta, m, s), m).value;
  }
  return total + problem.alpha / (2 * s * s) * theta.squaredNorm();
}

Eigen::VectorXd Gradient(const Eigen::VectorXd& theta, const BatchProblem& problem) {
  const double s = problem.scale();
  Eigen::VectorXd grad = (problem.alpha / (s * s)) * theta;
  for (const MatchRecord& m : problem.matches) {
    double w = problem.GameWeight(m);
    if (w == 0) continue;
    double g = w * GameLoss(problem.model, ScaledDiff(theta, m, s), m).gradient / s;
    grad[m.home] += g;
    grad[m.away] -= g;
  }
  return grad;
}

Eigen::MatrixXd Hessian(const Eigen::VectorXd& theta, const BatchProblem& problem) {
  const double s = problem.scale();
  const int n = problem.num_teams;
  Eigen::MatrixXd hess = Eigen::MatrixXd::Identity(n, n) * (problem.alpha / (s * s));
  for (const MatchRecord& m : problem.matches) {
    double w = problem.GameWeight(m);
    if (w == 0) continue;
    double h = w * GameLoss(problem.model, ScaledDiff(theta, m, s), m).hessian / (s * s);
    hess(m.home, m.home) += h;
    hess(m.away, m.away) += h;
    hess(m.home, m.away) -= h;
    hess(m.away, m.home) -= h;
  }
  return hess;
}

std::vector<TeamId> SingleSignedTeams(const BatchProblem& problem) {
  // 1 = won, 2 = lost, 4 = drew, seen from each team.
  std::vector<int> seen(problem.num_teams, 0);
  for (const MatchRecord& m : problem.matches) {
    if (problem.GameWeight(m) == 0) continue;
    int d = m.GoalDiff();
    seen[m.home] |= d > 0 ? 1 : d < 0 ? 2 : 4;
    seen[m.away] |= d < 0 ? 1 : d > 0 ? 2 : 4;
  }
  std::vector<TeamId> teams;
  for (TeamId id = 0; id < problem.num_teams; ++id) {
    if (seen[id] == 1 || seen[id] == 2) teams.push_back(id);
  }
  return teams;
}

BatchSolution Solve(const BatchProblem& problem, const SolveOptions& options,
                    const Eigen::VectorXd* init) {
  CheckTeams(problem);
  problem.weights.Validate();
  if (!(problem.alpha > 0)) {
    if (!SingleSignedTeams(problem).empty()) {
      throw SolverError("unregularized degenerate problem: a team has only wins "
                        "or only losses and alpha = 0");
    }
    throw SolverError("alpha must be > 0: without the ridge term the skills "
                      "are only defined up to a common offset");
  }
  if (!(problem.scale() > 0)) throw SolverError("scale must be > 0");

  const int n = problem.num_teams;
  BatchSolution sol;
  sol.theta = init != nullptr ? *init : Eigen::VectorXd::Zero(n);
  if (sol.theta.size() != n) throw SolverError("initial point has the wrong size");
  double objective = Objective(sol.theta, problem);
  if (!std::isfinite(objective)) {
    throw SolverError("objective is not finite at the starting point");
  }
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double last_step = 0;

  for (int iter = 0; iter <= options.max_iter; ++iter) {
    Eigen::VectorXd grad = Gradient(sol.theta, problem);
    double grad_norm = MaxNorm(grad);
    sol.log.push_back({iter, objective, grad_norm, last_step});
    if (grad_norm <= options.tol) {
      // A gradient test in rating points leaves theta loose by about s^2 * tol;
      // one extra full Newton step, kept only if it helps, tightens it. J is
      // flat to rounding here, so the objective test allows for that.
      Eigen::LLT<Eigen::MatrixXd> llt(Hessian(sol.theta, problem));
      if (grad_norm > 0 && llt.info() == Eigen::Success) {
        Eigen::VectorXd polished = sol.theta - llt.solve(grad);
        double value = Objective(polished, problem);
        double polished_norm = MaxNorm(Gradient(polished, problem));
        if (std::isfinite(value) &&
            value <= objective + 1e-12 * std::max(1.0, std::abs(objective)) &&
            polished_norm <= grad_norm) {
          sol.theta = polished;
          objective = value;
          grad_norm = polished_norm;
          sol.log.push_back({iter + 1, objective, grad_norm, 1.0});
          ++iter;
        }
      }
      sol.objective = objective;
      sol.gradient_norm = grad_norm;
      sol.hessian = Hessian(sol.theta, problem);
      sol.iterations = iter;
      return sol;
    }
    if (iter == options.max_iter) break;

    Eigen::MatrixXd hess = Hessian(sol.theta, problem);
    Eigen::LLT<Eigen::MatrixXd> llt(hess);
    Eigen::VectorXd newton;
    bool have_newton = false;
    if (llt.info() == Eigen::Success) {
      newton = -llt.solve(grad);
      have_newton = newton.allFinite() && grad.dot(newton) < 0;
    }

    // Accept any step that does not raise J beyond rounding noise.
    const double slack = 4 * kEps * std::max(1.0, std::abs(objective));
    auto line_search = [&](const Eigen::VectorXd& direction, double* step,
                           double* value) {
      double t = 1.0;
      for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
        double candidate = Objective(sol.theta + t * direction, problem);
        if (std::isfinite(candidate) && candidate <= objective + slack) {
          *step = t;
          *value = candidate;
          return true;
        }
      }
      return false;
    };

    double step = 0, value = 0;
    bool moved = false;
    if (have_newton && line_search(newton, &step, &value)) {
      sol.theta += step * newton;
      moved = true;
    } else {
      // Scale the gradient step by the diagonal curvature.
      Eigen::VectorXd direction = -grad.cwiseQuotient(hess.diagonal());
      if (line_search(direction, &step, &value)) {
        sol.theta += step * direction;
        moved = true;
      }
    }
    if (!moved) {
      std::ostringstream msg;
      msg << "no convergence: line search failed at iteration " << iter
          << " (objective " << objective << ", grad_norm " << grad_norm << ")";
      throw SolverError(msg.str());
    }
    objective = value;
    last_step = step;
  }
  std::ostringstream msg;
  msg << "no convergence after " << options.max_iter << " iterations (objective "
      << objective << ", grad_norm " << sol.log.back().grad_norm << ")";
  throw SolverError(msg.str());
}

}  // namespace fifarank
