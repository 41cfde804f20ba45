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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fifarank/synth.h"
#include "test_util.h"

namespace fifarank {
namespace {

double Quadratic(const ParamSet& p) {
  return std::pow(p.at("x") - 1.23, 2) + 2 * std::pow(p.at("y") + 0.47, 2);
}

TEST(CoordinateSearch, SeparableQuadratic) {
  std::vector<ParamSpec> specs = {ParamSpec::Free("x", -5, 5, 0.1, 4),
                                  ParamSpec::Free("y", -5, 5, 0.1, -3)};
  TuneResult r = CoordinateSearch(Quadratic, specs);
  EXPECT_NEAR(r.best.at("x"), 1.23, 0.05 + 1e-9);
  EXPECT_NEAR(r.best.at("y"), -0.47, 0.05 + 1e-9);
  EXPECT_LE(r.best_objective, r.initial_objective);
  double prev = r.initial_objective;
  for (const TraceEntry& e : r.trace) {
    EXPECT_LE(e.objective, prev);
    prev = e.objective;
  }
  EXPECT_EQ(r.trace.size(), static_cast<size_t>(2 * r.sweeps));
}

TEST(CoordinateSearch, AllFixed) {
  std::vector<ParamSpec> specs = {ParamSpec::Fixed("x", 0.5), ParamSpec::Fixed("y", 0)};
  TuneResult r = CoordinateSearch(Quadratic, specs);
  EXPECT_TRUE(r.trace.empty());
  EXPECT_EQ(r.best.at("x"), 0.5);
  EXPECT_EQ(r.best_objective, Quadratic(r.best));
}

TEST(CoordinateSearch, FixedPointAndOrder) {
  std::vector<ParamSpec> specs = {ParamSpec::Free("x", -5, 5, 0.1, 4),
                                  ParamSpec::Free("y", -5, 5, 0.1, -3)};
  TuneResult r = CoordinateSearch(Quadratic, specs);
  std::vector<ParamSpec> again = {ParamSpec::Free("x", -5, 5, 0.1, r.best.at("x")),
                                  ParamSpec::Free("y", -5, 5, 0.1, r.best.at("y"))};
  EXPECT_EQ(CoordinateSearch(Quadratic, again).sweeps, 1);
  std::vector<ParamSpec> swapped = {specs[1], specs[0]};
  TuneResult s = CoordinateSearch(Quadratic, swapped, {1e-5, 50, false});
  EXPECT_NEAR(s.best_objective, r.best_objective, 2e-5);
}

TEST(CoordinateSearch, Errors) {
  // The start 4.03 is off the grid, so every grid point is non-finite.
  std::vector<ParamSpec> specs = {ParamSpec::Free("x", -5, 5, 0.1, 4.03)};
  auto nan_everywhere = [](const ParamSet& p) {
    return p.at("x") == 4.03 ? 1.0 : std::nan("");
  };
  EXPECT_THROW(CoordinateSearch(nan_everywhere, specs), std::runtime_error);
  auto nan_start = [](const ParamSet&) { return std::nan(""); };
  EXPECT_THROW(CoordinateSearch(nan_start, specs), std::invalid_argument);
  std::vector<ParamSpec> pinned = {ParamSpec::Free("xi0", 0.1, 10, 0.1, 1)};
  EXPECT_THROW(CoordinateSearch(Quadratic, pinned), std::invalid_argument);
  // Throwing objectives count as +inf, not as failures.
  auto picky = [](const ParamSet& p) {
    if (p.at("x") > 2) throw std::domain_error("bad");
    return std::pow(p.at("x") - 1, 2);
  };
  TuneResult r = CoordinateSearch(picky, std::vector<ParamSpec>{ParamSpec::Free("x", 0, 5, 0.5, 0)});
  EXPECT_NEAR(r.best.at("x"), 1.0, 1e-12);
}

TEST(EmpiricalEtaKappa, Examples) {
  EtaKappa ek = EmpiricalEtaKappa({1.0 / 3, 1.0 / 3, 1.0 / 3, 3});
  EXPECT_NEAR(ek.eta, 0, 1e-15);
  EXPECT_NEAR(ek.kappa, 1, 1e-15);
  ek = EmpiricalEtaKappa({0.39, 0.24, 0.37, 100});
  EXPECT_NEAR(ek.eta, std::log10(0.39 / 0.37), 1e-15);
  EXPECT_NEAR(ek.eta, 0.023, 5e-4);
  EXPECT_NEAR(ek.kappa, 0.632, 5e-4);
  ek = EmpiricalEtaKappa({0.51, 0.22, 0.27, 100});
  EXPECT_NEAR(ek.eta, 0.276, 5e-4);
  EXPECT_NEAR(ek.kappa, 0.593, 5e-4);
  EXPECT_THROW(EmpiricalEtaKappa({0.5, 0, 0.5, 2}), std::invalid_argument);
}

TEST(Params, ResolveAndBuild) {
  ParamSet p = ResolveParams(DefaultOnlineParams(ModelKind::kDavidson), {{"K", 20}});
  EXPECT_EQ(p.at("K"), 20);
  EXPECT_THROW(ResolveParams(DefaultOnlineParams(ModelKind::kDavidson), {{"bogus", 1}}),
               std::invalid_argument);
  Engine e = MakeEngine(ModelKind::kDavidson, p);
  EXPECT_EQ(std::get<DavidsonEngine>(e).k, 20);

  ParamSet fifa = DefaultOnlineParams(ModelKind::kFifa);
  FifaEngine f = std::get<FifaEngine>(MakeEngine(ModelKind::kFifa, fifa));
  ImportanceTable table;
  for (int c = 0; c < kNumCategories; ++c) EXPECT_DOUBLE_EQ(f.table.steps[c], table.steps[c]);

  ParamSet mov = ResolveParams(DefaultOnlineParams(ModelKind::kDavidson),
                               {{"V", 2}, {"zeta1", 0.6}, {"zeta2", 1.1}});
  WeightScheme w = MakeWeights(mov);
  EXPECT_EQ(w.zeta, (std::vector<double>{1, 0.6, 1.1}));
  EXPECT_THROW(MakeWeights(ResolveParams(DefaultOnlineParams(ModelKind::kDavidson),
                                         {{"V", 1}, {"zeta2", 1.0}})),
               std::invalid_argument);
  EXPECT_THROW(MakeBatchProblem(ModelKind::kFifa, fifa, {}, 2), std::invalid_argument);
}

TEST(ParseTuneConfig, Forms) {
  std::istringstream in(
      "# comment\n"
      "K = [1, 100, 1]\n"
      "eta = 0.25   # fixed\n"
      "kappa = free\n"
      "xi1 = [0.1, 10, 0.1, 2]\n");
  auto specs = ParseTuneConfig(in, DefaultOnlineParams(ModelKind::kDavidson));
  ASSERT_EQ(specs.size(), 4u);
  EXPECT_TRUE(specs[0].free);
  EXPECT_EQ(specs[0].value, 35);  // default, inside the bounds
  EXPECT_FALSE(specs[1].free);
  EXPECT_EQ(specs[1].value, 0.25);
  EXPECT_TRUE(specs[2].free);
  EXPECT_EQ(specs[2].lower, 0.1);
  EXPECT_EQ(specs[2].upper, 3);
  EXPECT_EQ(specs[3].value, 2);
  std::istringstream bad("K = [1, 100\n");
  EXPECT_THROW(ParseTuneConfig(bad, {}), std::invalid_argument);
}

TEST(Objectives, OnlineAndAlo) {
  SynthOptions opts;
  opts.seed = 21;
  opts.num_games = 120;
  SynthData data = GenerateSynthetic(opts);
  RatingState init(std::vector<double>(data.matches.teams.size(), 1500.0));
  TuneObjective online = MakeOnlineObjective(data.matches.matches, init, ModelKind::kDavidson,
                                             OnlineMetric::kLogScore);
  ParamSet p = DefaultOnlineParams(ModelKind::kDavidson);
  double v = online(p);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_EQ(online(p), v);
  TuneObjective mse = MakeOnlineObjective(data.matches.matches, init, ModelKind::kFifa,
                                          OnlineMetric::kMse);
  double m = mse(DefaultOnlineParams(ModelKind::kFifa));
  EXPECT_GT(m, 0);
  EXPECT_LT(m, 1);

  TuneObjective alo = MakeAloObjective(data.matches.matches, data.matches.teams.size(),
                                       ModelKind::kDavidson);
  std::vector<ParamSpec> specs = {ParamSpec::Free("alpha", 0.05, 5, 0.05, 0.4)};
  for (const auto& [k, val] : DefaultBatchParams(ModelKind::kDavidson)) {
    if (k != "alpha") specs.push_back(ParamSpec::Fixed(k, val));
  }
  TuneResult r = CoordinateSearch(alo, specs);
  EXPECT_LE(r.best_objective, r.initial_objective);
  EXPECT_GT(r.evaluations, 100);
  std::ostringstream trace;
  WriteTrace(trace, r);
  EXPECT_EQ(trace.str().substr(0, 29), "sweep,param,value,objective\n1");
}

}  // namespace
}  // namespace fifarank
