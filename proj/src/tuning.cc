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

#include "fifarank/tuning.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <istream>
#include <limits>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fifarank/alo_cv.h"

namespace fifarank {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void AddUniformWeights(ParamSet& params) {
  for (int c = 0; c < kNumCategories; ++c) params["xi" + std::to_string(c)] = 1.0;
  params["V"] = 0;
  params["zeta0"] = 1.0;
}

bool IsMovWeightKey(const std::string& key) {
  static const std::regex pattern("zeta[0-9]+");
  return std::regex_match(key, pattern);
}

double Get(const ParamSet& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument("missing parameter " + key);
  return it->second;
}

int GetInt(const ParamSet& params, const std::string& key) {
  double v = Get(params, key);
  if (v != std::floor(v)) throw std::invalid_argument(key + " must be an integer");
  return static_cast<int>(v);
}

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double ParseNumber(const std::string& text, int line) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw std::invalid_argument("line " + std::to_string(line) + ": bad number '" +
                                text + "'");
  }
  return v;
}

std::vector<double> GridPoints(const ParamSpec& spec) {
  std::vector<double> points;
  const double eps = 1e-9 * spec.step;
  for (int i = 0;; ++i) {
    double v = spec.lower + i * spec.step;
    if (v > spec.upper + eps) break;
    points.push_back(v);
  }
  return points;
}

double SafeEvaluate(const TuneObjective& objective, const ParamSet& params) {
  try {
    double v = objective(params);
    return std::isfinite(v) ? v : kInf;
  } catch (const std::exception&) {
    return kInf;
  }
}

std::vector<double> EvaluateAll(const TuneObjective& objective,
                                const std::vector<ParamSet>& points, bool parallel) {
  std::vector<double> values(points.size(), kInf);
  if (!parallel || points.size() < 2) {
    for (size_t i = 0; i < points.size(); ++i) values[i] = SafeEvaluate(objective, points[i]);
    return values;
  }
  const size_t width = std::max(1u, std::thread::hardware_concurrency());
  for (size_t begin = 0; begin < points.size(); begin += width) {
    size_t end = std::min(points.size(), begin + width);
    std::vector<std::future<double>> pending;
    for (size_t i = begin; i < end; ++i) {
      pending.push_back(std::async(std::launch::async, SafeEvaluate,
                                   std::cref(objective), std::cref(points[i])));
    }
    for (size_t i = begin; i < end; ++i) values[i] = pending[i - begin].get();
  }
  return values;
}

}  // namespace

ModelKind ParseModelKind(const std::string& name) {
  if (name == "fifa") return ModelKind::kFifa;
  if (name == "davidson") return ModelKind::kDavidson;
  if (name == "skellam") return ModelKind::kSkellam;
  throw std::invalid_argument("unknown model '" + name + "' (fifa, davidson, skellam)");
}

std::string ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kFifa:
      return "fifa";
    case ModelKind::kDavidson:
      return "davidson";
    case ModelKind::kSkellam:
      return "skellam";
  }
  return "?";
}

ParamSet DefaultOnlineParams(ModelKind kind) {
  ParamSet p;
  switch (kind) {
    case ModelKind::kFifa: {
      const double xi[kNumCategories] = {1, 2, 3, 5, 5, 7, 8, 10, 12};
      p = {{"K", 5}, {"s", 600}, {"forecast_kappa", 2}, {"forecast_eta", 0},
           {"forecast_s", 300}};
      for (int c = 0; c < kNumCategories; ++c) p["xi" + std::to_string(c)] = xi[c];
      break;
    }
    case ModelKind::kDavidson:
      p = {{"K", 35}, {"s", 200}, {"eta", 0.3}, {"kappa", 0.9}};
      AddUniformWeights(p);
      break;
    case ModelKind::kSkellam:
      p = {{"K", 7.5}, {"s", 300}, {"eta", 0.2}, {"c", -0.1}, {"D", 50}};
      break;
  }
  return p;
}

ParamSet DefaultBatchParams(ModelKind kind) {
  ParamSet p;
  switch (kind) {
    case ModelKind::kFifa:
      throw std::invalid_argument("batch fitting needs the davidson or skellam model");
    case ModelKind::kDavidson:
      p = {{"alpha", 0.4}, {"s", 200}, {"eta", 0.3}, {"kappa", 0.8}};
      break;
    case ModelKind::kSkellam:
      p = {{"alpha", 0.21}, {"s", 300}, {"eta", 0.2}, {"c", 0}, {"D", 50}};
      break;
  }
  AddUniformWeights(p);
  return p;
}

ParamSet ResolveParams(const ParamSet& defaults, const ParamSet& overrides) {
  ParamSet out = defaults;
  for (const auto& [key, value] : overrides) {
    if (!defaults.contains(key) && !(defaults.contains("zeta0") && IsMovWeightKey(key))) {
      throw std::invalid_argument("unknown parameter '" + key + "' for this model");
    }
    if (!std::isfinite(value)) throw std::invalid_argument(key + " must be finite");
    out[key] = value;
  }
  return out;
}

WeightScheme MakeWeights(const ParamSet& params) {
  WeightScheme weights;
  for (int c = 0; c < kNumCategories; ++c) {
    auto it = params.find("xi" + std::to_string(c));
    weights.xi[c] = it == params.end() ? 1.0 : it->second;
  }
  int cap = params.contains("V") ? GetInt(params, "V") : 0;
  if (cap < 0) throw std::invalid_argument("V must be >= 0");
  weights.zeta.assign(cap + 1, 1.0);
  for (const auto& [key, value] : params) {
    if (!IsMovWeightKey(key)) continue;
    int v = std::stoi(key.substr(4));
    if (v > cap) {
      throw std::invalid_argument(key + " exceeds the MOV cap V=" + std::to_string(cap));
    }
    weights.zeta[v] = value;
  }
  weights.Validate();
  return weights;
}

Engine MakeEngine(ModelKind kind, const ParamSet& params) {
  switch (kind) {
    case ModelKind::kFifa: {
      FifaEngine e;
      WeightScheme w = MakeWeights(params);
      e.table = ImportanceTable::FromStepAndWeights(Get(params, "K"), w.xi);
      e.scale = Get(params, "s");
      e.forecast = {Get(params, "forecast_eta"), Get(params, "forecast_kappa"),
                    Get(params, "forecast_s")};
      return e;
    }
    case ModelKind::kDavidson: {
      DavidsonEngine e;
      e.k = Get(params, "K");
      e.weights = MakeWeights(params);
      e.params = {Get(params, "eta"), Get(params, "kappa"), Get(params, "s")};
      if (e.params.kappa < 0) throw std::invalid_argument("kappa must be >= 0");
      return e;
    }
    case ModelKind::kSkellam: {
      SkellamEngine e;
      e.k = Get(params, "K");
      e.params = {Get(params, "c"), Get(params, "eta"), Get(params, "s"),
                  GetInt(params, "D")};
      return e;
    }
  }
  throw std::invalid_argument("unknown model");
}

BatchProblem MakeBatchProblem(ModelKind kind, const ParamSet& params,
                              std::vector<MatchRecord> matches, int num_teams) {
  BatchProblem problem;
  problem.matches = std::move(matches);
  problem.num_teams = num_teams;
  problem.alpha = Get(params, "alpha");
  problem.weights = MakeWeights(params);
  if (kind == ModelKind::kDavidson) {
    problem.model = DavidsonParams{Get(params, "eta"), Get(params, "kappa"),
                                   Get(params, "s")};
  } else if (kind == ModelKind::kSkellam) {
    problem.model = SkellamParams{Get(params, "c"), Get(params, "eta"), Get(params, "s"),
                                  GetInt(params, "D")};
  } else {
    throw std::invalid_argument("batch fitting needs the davidson or skellam model");
  }
  return problem;
}

ParamSpec ParamSpec::Fixed(std::string name, double value) {
  ParamSpec spec;
  spec.name = std::move(name);
  spec.value = value;
  return spec;
}

ParamSpec ParamSpec::Free(std::string name, double lower, double upper, double step,
                          double start) {
  ParamSpec spec;
  spec.name = std::move(name);
  spec.free = true;
  spec.lower = lower;
  spec.upper = upper;
  spec.step = step;
  spec.value = start;
  return spec;
}

std::optional<ParamSpec> DefaultGrid(const std::string& name) {
  if (name == "K") return ParamSpec::Free(name, 1, 100, 1, 1);
  if (name == "alpha") return ParamSpec::Free(name, 0.05, 5, 0.05, 0.05);
  if (name == "eta") return ParamSpec::Free(name, 0, 1, 0.05, 0);
  if (name == "kappa") return ParamSpec::Free(name, 0.1, 3, 0.05, 0.1);
  if (name == "c") return ParamSpec::Free(name, -1, 1, 0.05, -1);
  if ((name.rfind("xi", 0) == 0 && name != "xi0") ||
      (IsMovWeightKey(name) && name != "zeta0")) {
    return ParamSpec::Free(name, 0.1, 10, 0.1, 0.1);
  }
  return std::nullopt;
}

TuneResult CoordinateSearch(const TuneObjective& objective,
                            std::span<const ParamSpec> specs,
                            const SearchOptions& options) {
  TuneResult result;
  ParamSet current;
  std::vector<const ParamSpec*> free_specs;
  for (const ParamSpec& spec : specs) {
    if (spec.free) {
      if (spec.name == "xi0" || spec.name == "zeta0") {
        throw std::invalid_argument(spec.name + " is pinned to 1");
      }
      if (!(spec.step > 0) || !std::isfinite(spec.lower) || !std::isfinite(spec.upper) ||
          spec.upper < spec.lower) {
        throw std::invalid_argument("bad grid for " + spec.name);
      }
      free_specs.push_back(&spec);
    }
    current[spec.name] = spec.value;
  }

  double best = SafeEvaluate(objective, current);
  ++result.evaluations;
  if (!std::isfinite(best)) {
    throw std::invalid_argument("objective is not finite at the initial point");
  }
  result.initial_objective = best;

  for (int sweep = 1; sweep <= options.max_sweeps && !free_specs.empty(); ++sweep) {
    result.sweeps = sweep;
    const double sweep_start = best;
    for (const ParamSpec* spec : free_specs) {
      std::vector<double> values = GridPoints(*spec);
      std::vector<ParamSet> points(values.size(), current);
      for (size_t i = 0; i < values.size(); ++i) points[i][spec->name] = values[i];
      std::vector<double> scores = EvaluateAll(objective, points, options.parallel);
      result.evaluations += static_cast<int>(points.size());
      auto min_it = std::min_element(scores.begin(), scores.end());
      if (min_it == scores.end() || !std::isfinite(*min_it)) {
        throw std::runtime_error("objective is not finite anywhere on the grid of " +
                                 spec->name);
      }
      double arg = values[min_it - scores.begin()];
      double arg_score = *min_it;

      // One refinement at half the grid step on either side.
      std::vector<double> refined_values;
      for (double v : {arg - 0.5 * spec->step, arg + 0.5 * spec->step}) {
        if (v >= spec->lower && v <= spec->upper) refined_values.push_back(v);
      }
      std::vector<ParamSet> refined(refined_values.size(), current);
      for (size_t i = 0; i < refined_values.size(); ++i) {
        refined[i][spec->name] = refined_values[i];
      }
      std::vector<double> refined_scores = EvaluateAll(objective, refined, options.parallel);
      result.evaluations += static_cast<int>(refined.size());
      for (size_t i = 0; i < refined_values.size(); ++i) {
        if (refined_scores[i] < arg_score) {
          arg_score = refined_scores[i];
          arg = refined_values[i];
        }
      }

      if (arg_score < best) {
        best = arg_score;
        current[spec->name] = arg;
      }
      result.trace.push_back({sweep, spec->name, current[spec->name], best});
    }
    if (sweep_start - best < options.tol) break;
  }
  result.best = current;
  result.best_objective = best;
  return result;
}

std::vector<ParamSpec> ParseTuneConfig(std::istream& in, const ParamSet& defaults) {
  std::vector<ParamSpec> specs;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = Trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
    }
    auto start_for = [&](double lower, double upper) {
      auto it = defaults.find(key);
      double start = it == defaults.end() ? lower : it->second;
      return std::clamp(start, lower, upper);
    };
    if (value == "free") {
      std::optional<ParamSpec> grid = DefaultGrid(key);
      if (!grid) {
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": no default grid for " + key);
      }
      grid->value = start_for(grid->lower, grid->upper);
      specs.push_back(*grid);
    } else if (value.front() == '[') {
      if (value.back() != ']') {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": missing ']'");
      }
      std::vector<double> numbers;
      std::stringstream body(value.substr(1, value.size() - 2));
      std::string item;
      while (std::getline(body, item, ',')) numbers.push_back(ParseNumber(Trim(item), line_no));
      if (numbers.size() != 3 && numbers.size() != 4) {
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": expected [lower, upper, step] or "
                                    "[lower, upper, step, start]");
      }
      double start = numbers.size() == 4 ? numbers[3] : start_for(numbers[0], numbers[1]);
      specs.push_back(ParamSpec::Free(key, numbers[0], numbers[1], numbers[2], start));
    } else {
      specs.push_back(ParamSpec::Fixed(key, ParseNumber(value, line_no)));
    }
  }
  return specs;
}

void WriteTrace(std::ostream& out, const TuneResult& result) {
  out << "sweep,param,value,objective\n";
  out.precision(12);
  for (const TraceEntry& e : result.trace) {
    out << e.sweep << ',' << e.param << ',' << e.value << ',' << e.objective << '\n';
  }
}

EtaKappa EmpiricalEtaKappa(const OutcomeFrequencies& freq) {
  if (!(freq.home > 0) || !(freq.draw > 0) || !(freq.away > 0)) {
    throw std::invalid_argument("zero outcome frequency");
  }
  return {std::log10(freq.home / freq.away), freq.draw / std::sqrt(freq.home * freq.away)};
}

TuneObjective MakeOnlineObjective(std::vector<MatchRecord> matches, RatingState initial,
                                  ModelKind kind, OnlineMetric metric,
                                  RuleToggles rules) {
  return [matches = std::move(matches), initial = std::move(initial), kind, metric,
          rules](const ParamSet& params) {
    Engine engine = MakeEngine(kind, ResolveParams(DefaultOnlineParams(kind), params));
    ReplayResult replay = Replay(matches, initial, engine, rules);
    GameWindow window = WindowSecondHalf(static_cast<int>(matches.size()));
    if (metric == OnlineMetric::kMse) {
      std::vector<ScoreForecast> scores;
      for (const GamePrediction& g : replay.games) {
        scores.push_back({g.match_index, g.expected_score, g.realized_score});
      }
      return Mse(scores, window);
    }
    std::vector<Forecast> forecasts;
    for (const GamePrediction& g : replay.games) {
      forecasts.push_back({g.match_index, g.probs, g.observed});
    }
    return LogScore(forecasts, window).value;
  };
}

TuneObjective MakeAloObjective(std::vector<MatchRecord> matches, int num_teams,
                               ModelKind kind) {
  return [matches = std::move(matches), num_teams, kind](const ParamSet& params) {
    BatchProblem problem = MakeBatchProblem(
        kind, ResolveParams(DefaultBatchParams(kind), params), matches, num_teams);
    BatchSolution solution = Solve(problem);
    return *AloScores(problem, solution).report.log_score;
  };
}

}  // namespace fifarank
