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

#include "fifarank/alo_cv.h"

#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

namespace fifarank {

AloSingularity::AloSingularity(int match_index, double denominator)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "ALO singularity at game " << match_index << ": denominator "
            << denominator << " <= 0";
        return msg.str();
      }()),
      match_index_(match_index) {}

std::vector<AloPrediction> AloPredictions(const BatchSolution& solution,
                                          const BatchProblem& problem) {
  const double s = problem.scale();
  const int n = problem.num_teams;
  if (solution.hessian.rows() != n || solution.theta.size() != n) {
    throw std::invalid_argument("solution does not match the problem size");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(solution.hessian);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("Hessian at the optimum is not positive definite");
  }
  const auto lower = llt.matrixL();

  // a_t depends only on the unordered team pair.
  std::map<std::pair<TeamId, TeamId>, double> leverage_cache;
  auto leverage = [&](TeamId i, TeamId j) {
    auto key = std::minmax(i, j);
    auto it = leverage_cache.find(key);
    if (it != leverage_cache.end()) return it->second;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    x[i] = 1.0;
    x[j] = -1.0;
    double a = lower.solve(x).squaredNorm();
    leverage_cache.emplace(key, a);
    return a;
  };

  std::vector<AloPrediction> out;
  out.reserve(problem.matches.size());
  for (const MatchRecord& m : problem.matches) {
    AloPrediction p;
    p.match_index = m.match_index;
    p.z_full = solution.theta[m.home] - solution.theta[m.away];
    p.leverage = leverage(m.home, m.away);
    double w = problem.GameWeight(m);
    if (w == 0) {
      p.denominator = s * s;
      p.z_loo = p.z_full;
      out.push_back(p);
      continue;
    }
    LossTerms terms = GameLoss(problem.model, p.z_full / s, m);
    p.denominator = s * s - w * terms.hessian * p.leverage;
    if (!(p.denominator > 0)) throw AloSingularity(m.match_index, p.denominator);
    p.correction = w * terms.gradient * p.leverage * s / p.denominator;
    p.z_loo = p.z_full + p.correction;
    out.push_back(p);
  }
  return out;
}

double ExactLoo(const BatchProblem& problem, int match_index,
                const SolveOptions& options) {
  BatchProblem reduced = problem;
  reduced.matches.clear();
  const MatchRecord* left_out = nullptr;
  for (const MatchRecord& m : problem.matches) {
    if (m.match_index == match_index) {
      left_out = &m;
    } else {
      reduced.matches.push_back(m);
    }
  }
  if (left_out == nullptr) {
    throw std::invalid_argument("no game with index " + std::to_string(match_index));
  }
  BatchSolution sol = Solve(reduced, options);
  return sol.theta[left_out->home] - sol.theta[left_out->away];
}

OutcomeProbs ForecastAt(const BatchModel& model, double z, int venue) {
  return std::visit(
      [&](const auto& m) -> OutcomeProbs {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DavidsonParams>) {
          return DavidsonProbs(z / m.scale, venue, m);
        } else if constexpr (std::is_same_v<T, SkellamParams>) {
          return SkellamOutcomeProbs(z / m.scale, venue, m);
        } else {
          throw std::invalid_argument("the quadratic loss has no outcome distribution");
        }
      },
      model);
}

AloEvaluation AloScores(const BatchProblem& problem, const BatchSolution& solution) {
  AloEvaluation eval;
  eval.predictions = AloPredictions(solution, problem);
  std::vector<Forecast> forecasts;
  forecasts.reserve(problem.matches.size());
  for (size_t i = 0; i < problem.matches.size(); ++i) {
    const MatchRecord& m = problem.matches[i];
    Forecast f{m.match_index, ForecastAt(problem.model, eval.predictions[i].z_loo, m.Venue()),
               OutcomeOf(m)};
    double p = f.probs[f.observed];
    eval.log_score_terms.push_back(p > 0 ? -std::log(p)
                                         : std::numeric_limits<double>::infinity());
    eval.accuracy_terms.push_back(PredictedOutcome(f.probs) == f.observed ? 1.0 : 0.0);
    forecasts.push_back(f);
  }
  if (forecasts.empty()) return eval;
  int first = forecasts.front().match_index;
  int last = forecasts.front().match_index;
  for (const Forecast& f : forecasts) {
    first = std::min(first, f.match_index);
    last = std::max(last, f.match_index);
  }
  GameWindow window{first, last};
  LogScoreResult ls = LogScore(forecasts, window);
  AccuracyResult acc = Accuracy(forecasts, window);
  eval.report.window = window;
  eval.report.log_score = ls.value;
  eval.report.zero_probability_at = ls.zero_probability_at;
  eval.report.accuracy = acc.value;
  eval.report.accuracy_ties = acc.ties;
  eval.report.games_counted = ls.games;
  return eval;
}

void WriteAloReport(std::ostream& out, const AloEvaluation& evaluation,
                    AloMetric metric) {
  out << "t,z_full,z_loo,a_t,correction,metric_contribution\n";
  const auto& terms = metric == AloMetric::kLogScore ? evaluation.log_score_terms
                                                     : evaluation.accuracy_terms;
  out.precision(17);
  for (size_t i = 0; i < evaluation.predictions.size(); ++i) {
    const AloPrediction& p = evaluation.predictions[i];
    out << p.match_index << ',' << p.z_full << ',' << p.z_loo << ',' << p.leverage
        << ',' << p.correction << ',' << terms[i] << '\n';
  }
}

}  // namespace fifarank
