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

#include "fifarank/cli.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fifarank/alo_cv.h"
#include "fifarank/batch_rating.h"
#include "fifarank/evaluation.h"
#include "fifarank/match_data.h"
#include "fifarank/online_rating.h"
#include "fifarank/synth.h"
#include "fifarank/tuning.h"

namespace fifarank {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Raised for bad flags or unreadable files; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string HexDigest(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

json FileRecord(const std::string& path) {
  return {{"path", path}, {"fnv1a64", HexDigest(Fnv1a64(ReadFile(path)))}};
}

ParamSet ParseParamTokens(const std::vector<std::string>& tokens) {
  ParamSet params;
  for (const std::string& token : tokens) {
    size_t eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("--params expects key=value, got '" + token + "'");
    }
    std::string key = token.substr(0, eq);
    std::string text = token.substr(eq + 1);
    size_t used = 0;
    double value = 0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) {
      throw UsageError("--params " + key + ": bad number '" + text + "'");
    }
    params[key] = value;
  }
  return params;
}

json ParamsJson(const ParamSet& params) {
  json j = json::object();
  for (const auto& [k, v] : params) j[k] = v;
  return j;
}

struct RunOutput {
  std::string dir;  // empty when no --out was given

  void Write(const std::string& name, const std::string& contents) const {
    if (dir.empty()) return;
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    if (!out) throw UsageError("cannot write " + (fs::path(dir) / name).string());
    out << contents;
  }
};

RunOutput OpenRun(const std::string& base, const json& manifest, std::ostream& out) {
  RunOutput run;
  if (base.empty()) return run;
  run.dir = RunDirectory(base, manifest);
  std::error_code ec;
  fs::create_directories(run.dir, ec);
  if (ec) throw UsageError("cannot create " + run.dir + ": " + ec.message());
  run.Write("manifest.json", manifest.dump(2) + "\n");
  out << "run directory: " << run.dir << "\n";
  return run;
}

std::string RatingsCsv(const TeamRegistry& teams, const std::vector<double>& skills) {
  std::vector<TeamId> order(skills.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<TeamId>(i);
  std::stable_sort(order.begin(), order.end(), [&](TeamId a, TeamId b) {
    if (skills[a] != skills[b]) return skills[a] > skills[b];
    return teams.Name(a) < teams.Name(b);
  });
  std::ostringstream csv;
  csv << "team,rating\n" << std::fixed << std::setprecision(6);
  for (TeamId id : order) csv << teams.Name(id) << ',' << skills[id] << '\n';
  return csv.str();
}

void PrintTop(std::ostream& out, const TeamRegistry& teams,
              const std::vector<double>& skills, int count) {
  std::vector<TeamId> order(skills.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<TeamId>(i);
  std::stable_sort(order.begin(), order.end(), [&](TeamId a, TeamId b) {
    if (skills[a] != skills[b]) return skills[a] > skills[b];
    return teams.Name(a) < teams.Name(b);
  });
  out << std::fixed << std::setprecision(1);
  for (int i = 0; i < count && i < static_cast<int>(order.size()); ++i) {
    out << i + 1 << ". " << teams.Name(order[i]) << " (" << skills[order[i]] << ")\n";
  }
  out.unsetf(std::ios::floatfield);
  out << std::setprecision(6);
}

struct LoadedData {
  MatchSet set;
  RatingState initial;
};

LoadedData LoadWithInitial(const std::string& matches_path, const std::string& initial_path,
                           bool seed_newcomers) {
  LoadedData data;
  data.set = ParseMatchesFile(matches_path);
  auto ratings = ParseRatingsFile(initial_path, data.set.teams);
  data.initial = RatingState::FromRatings(data.set.teams, ratings, seed_newcomers);
  return data;
}

// ---- subcommands -----------------------------------------------------------

struct CommonFlags {
  std::string matches;
  std::string initial;
  std::string out;
  std::string model = "fifa";
  std::vector<std::string> params;
  bool no_shootout = false;
  bool no_knockout = false;
  bool seed_newcomers = false;
};

int CmdValidate(const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  std::ifstream in(flags.matches);
  if (!in) throw UsageError("cannot open " + flags.matches);
  MatchSet set;
  std::vector<Diagnostic> diagnostics = ValidateMatches(in, &set);
  for (const Diagnostic& d : diagnostics) {
    err << "row " << d.row << ": " << d.message << "\n";
  }
  out << set.matches.size() << " games, " << set.teams.size() << " teams\n";
  if (!diagnostics.empty()) {
    out << diagnostics.size() << " invalid row(s)\n";
    return 1;
  }
  return 0;
}

int CmdReplay(const CommonFlags& flags, const std::vector<std::string>& snapshot_dates,
              std::ostream& out) {
  ModelKind kind = ParseModelKind(flags.model);
  ParamSet params = ResolveParams(DefaultOnlineParams(kind), ParseParamTokens(flags.params));
  Engine engine = MakeEngine(kind, params);
  RuleToggles rules{!flags.no_shootout, !flags.no_knockout};
  LoadedData data = LoadWithInitial(flags.matches, flags.initial, flags.seed_newcomers);

  json manifest = {{"subcommand", "replay"},
                   {"matches", FileRecord(flags.matches)},
                   {"initial", FileRecord(flags.initial)},
                   {"seed_newcomers", flags.seed_newcomers},
                   {"model", flags.model},
                   {"params", ParamsJson(params)},
                   {"shootout_rule", rules.shootout},
                   {"knockout_rule", rules.knockout},
                   {"snapshot_dates", snapshot_dates}};
  RunOutput run = OpenRun(flags.out, manifest, out);

  ReplayResult replay = Replay(data.set.matches, data.initial, engine, rules);
  const int num_games = static_cast<int>(data.set.matches.size());
  json report = {{"games", num_games},
                 {"teams", data.set.teams.size()},
                 {"initial_total", replay.initial.total_points()},
                 {"final_total", replay.final_state.total_points()},
                 {"inflation", replay.inflation},
                 {"rule_affected_games", replay.rule_affected_games},
                 {"sigma_initial", SkillStdDev(replay.initial)},
                 {"sigma_final", SkillStdDev(replay.final_state)}};
  if (num_games >= 1) {
    EvaluationReport eval = EvaluateReplay(replay, engine, WindowSecondHalf(num_games),
                                           {{"model", flags.model}, {"params", ParamsJson(params)}});
    report["evaluation"] = ToJson(eval);
  }
  run.Write("report.json", report.dump(2) + "\n");
  run.Write("ratings_final.csv", RatingsCsv(data.set.teams, replay.final_state.skills()));

  std::ostringstream trajectory;
  for (const TrajectoryEntry& e : replay.trajectory) {
    trajectory << json{{"match_index", e.match_index},
                       {"team", data.set.teams.Name(e.team)},
                       {"before", e.before},
                       {"after", e.after}}
                      .dump()
               << "\n";
  }
  run.Write("trajectory.jsonl", trajectory.str());

  for (const std::string& text : snapshot_dates) {
    std::chrono::year_month_day date;
    try {
      date = ParseDate(text);
    } catch (const std::invalid_argument&) {
      throw UsageError("bad --snapshot-date '" + text + "'");
    }
    int last = 0;
    for (const MatchRecord& m : data.set.matches) {
      if (m.date <= date) last = m.match_index;
    }
    run.Write("ratings_" + text + ".csv",
              RatingsCsv(data.set.teams, replay.StateAfter(last).skills()));
  }

  out << num_games << " games, " << data.set.teams.size() << " teams, inflation "
      << replay.inflation << " over " << replay.rule_affected_games
      << " rule-affected games\n";
  if (report.contains("evaluation")) {
    const json& e = report["evaluation"];
    out << "second half: mse " << e["mse"].dump() << ", log-score "
        << e["log_score"].dump() << ", accuracy " << e["accuracy"].dump() << "\n";
  }
  PrintTop(out, data.set.teams, replay.final_state.skills(), 5);
  return 0;
}

BatchProblem BatchFromFlags(const CommonFlags& flags, MatchSet* set, ParamSet* resolved) {
  ModelKind kind = ParseModelKind(flags.model);
  *resolved = ResolveParams(DefaultBatchParams(kind), ParseParamTokens(flags.params));
  *set = ParseMatchesFile(flags.matches);
  return MakeBatchProblem(kind, *resolved, set->matches, set->teams.size());
}

int CmdFitBatch(const CommonFlags& flags, const SolveOptions& options,
                const std::string& truth_path, std::ostream& out) {
  MatchSet set;
  ParamSet params;
  BatchProblem problem = BatchFromFlags(flags, &set, &params);
  json manifest = {{"subcommand", "fit-batch"}, {"matches", FileRecord(flags.matches)},
                   {"model", flags.model},      {"params", ParamsJson(params)},
                   {"tol", options.tol},        {"max_iter", options.max_iter}};
  if (!truth_path.empty()) manifest["truth"] = FileRecord(truth_path);
  RunOutput run = OpenRun(flags.out, manifest, out);

  BatchSolution sol = Solve(problem, options);
  std::vector<double> theta(sol.theta.data(), sol.theta.data() + sol.theta.size());
  run.Write("skills.csv", RatingsCsv(set.teams, theta));
  std::ostringstream log;
  for (const SolverLogEntry& e : sol.log) {
    log << json{{"iter", e.iter}, {"objective", e.objective}, {"grad_norm", e.grad_norm},
                {"step", e.step}}
               .dump()
        << "\n";
  }
  run.Write("solver_log.jsonl", log.str());
  json report = {{"objective", sol.objective},
                 {"grad_norm", sol.gradient_norm},
                 {"iterations", sol.iterations}};
  if (!truth_path.empty()) {
    TeamRegistry teams = set.teams;
    std::ifstream in(truth_path);
    if (!in) throw UsageError("cannot open " + truth_path);
    auto truth = ParseRatings(in, teams);
    std::vector<double> fitted, expected;
    for (const auto& [id, rating] : truth) {
      if (id < set.teams.size()) {
        fitted.push_back(theta[id]);
        expected.push_back(rating);
      }
    }
    double rho = SpearmanCorrelation(fitted, expected);
    report["rank_correlation_with_truth"] = rho;
    out << "rank correlation with truth: " << rho << "\n";
  }
  run.Write("report.json", report.dump(2) + "\n");
  out << "converged in " << sol.iterations << " iterations, objective " << sol.objective
      << ", grad_norm " << sol.gradient_norm << "\n";
  PrintTop(out, set.teams, theta, 5);
  return 0;
}

int CmdAlo(const CommonFlags& flags, const SolveOptions& options, const std::string& metric,
           std::ostream& out) {
  AloMetric alo_metric;
  if (metric == "log_score") {
    alo_metric = AloMetric::kLogScore;
  } else if (metric == "accuracy") {
    alo_metric = AloMetric::kAccuracy;
  } else {
    throw UsageError("--metric must be log_score or accuracy");
  }
  MatchSet set;
  ParamSet params;
  BatchProblem problem = BatchFromFlags(flags, &set, &params);
  json manifest = {{"subcommand", "alo"},    {"matches", FileRecord(flags.matches)},
                   {"model", flags.model},   {"params", ParamsJson(params)},
                   {"metric", metric},       {"tol", options.tol},
                   {"max_iter", options.max_iter}};
  RunOutput run = OpenRun(flags.out, manifest, out);

  BatchSolution sol = Solve(problem, options);
  AloEvaluation eval = AloScores(problem, sol);
  eval.report.params_echo = {{"model", flags.model}, {"params", ParamsJson(params)}};
  std::ostringstream csv;
  WriteAloReport(csv, eval, alo_metric);
  run.Write("alo_report.csv", csv.str());
  run.Write("report.json", ToJson(eval.report).dump(2) + "\n");
  if (eval.report.log_score) {
    out << "ALO log-score " << *eval.report.log_score << ", accuracy "
        << *eval.report.accuracy << " over " << eval.report.games_counted << " games\n";
  } else {
    out << "no games\n";
  }
  return 0;
}

int CmdTune(const CommonFlags& flags, const std::string& config_path,
            const std::string& objective_name, const SearchOptions& options,
            std::ostream& out) {
  ModelKind kind = ParseModelKind(flags.model);
  bool alo = objective_name == "alo_log_score";
  if (!alo && objective_name != "online_mse" && objective_name != "online_log_score") {
    throw UsageError("--objective must be online_mse, online_log_score or alo_log_score");
  }
  ParamSet defaults = alo ? DefaultBatchParams(kind) : DefaultOnlineParams(kind);
  std::ifstream config(config_path);
  if (!config) throw UsageError("cannot open " + config_path);
  std::vector<ParamSpec> specs = ParseTuneConfig(config, defaults);
  ParamSet declared;
  for (const ParamSpec& s : specs) declared[s.name] = s.value;
  ResolveParams(defaults, declared);  // rejects unknown names up front

  RuleToggles rules{!flags.no_shootout, !flags.no_knockout};
  json manifest = {{"subcommand", "tune"},
                   {"matches", FileRecord(flags.matches)},
                   {"config", FileRecord(config_path)},
                   {"model", flags.model},
                   {"objective", objective_name},
                   {"tol", options.tol},
                   {"max_sweeps", options.max_sweeps},
                   {"shootout_rule", rules.shootout},
                   {"knockout_rule", rules.knockout},
                   {"seed_newcomers", flags.seed_newcomers}};
  if (!alo) manifest["initial"] = FileRecord(flags.initial);
  RunOutput run = OpenRun(flags.out, manifest, out);

  TuneObjective objective;
  if (alo) {
    MatchSet set = ParseMatchesFile(flags.matches);
    objective = MakeAloObjective(set.matches, set.teams.size(), kind);
  } else {
    if (flags.initial.empty()) throw UsageError("online objectives need --initial");
    LoadedData data = LoadWithInitial(flags.matches, flags.initial, flags.seed_newcomers);
    objective = MakeOnlineObjective(data.set.matches, data.initial, kind,
                                    objective_name == "online_mse" ? OnlineMetric::kMse
                                                                   : OnlineMetric::kLogScore,
                                    rules);
  }
  TuneResult result = CoordinateSearch(objective, specs, options);
  std::ostringstream trace;
  WriteTrace(trace, result);
  run.Write("trace.csv", trace.str());
  json report = {{"best", ParamsJson(result.best)},
                 {"best_objective", result.best_objective},
                 {"initial_objective", result.initial_objective},
                 {"sweeps", result.sweeps},
                 {"evaluations", result.evaluations},
                 {alo ? "fits_executed" : "replays_executed", result.evaluations}};
  run.Write("result.json", report.dump(2) + "\n");
  out << objective_name << ": " << result.initial_objective << " -> "
      << result.best_objective << " after " << result.sweeps << " sweep(s), "
      << result.evaluations << (alo ? " fits" : " replays") << "\n";
  for (const auto& [k, v] : result.best) out << "  " << k << " = " << v << "\n";
  return 0;
}

int CmdFreqEstimate(const CommonFlags& flags, const std::string& venue, std::ostream& out) {
  std::vector<std::pair<std::string, VenueFilter>> splits;
  if (venue == "all" || venue == "split") splits.push_back({"all", VenueFilter::kAll});
  if (venue == "neutral" || venue == "split") {
    splits.push_back({"neutral", VenueFilter::kNeutralOnly});
  }
  if (venue == "home" || venue == "split") {
    splits.push_back({"home", VenueFilter::kHomeVenueOnly});
  }
  if (splits.empty()) throw UsageError("--venue must be all, neutral, home or split");
  MatchSet set = ParseMatchesFile(flags.matches);
  json manifest = {{"subcommand", "freq-estimate"},
                   {"matches", FileRecord(flags.matches)},
                   {"venue", venue}};
  RunOutput run = OpenRun(flags.out, manifest, out);

  json report = json::object();
  for (const auto& [name, filter] : splits) {
    json entry;
    try {
      OutcomeFrequencies f = ComputeOutcomeFrequencies(set.matches, filter);
      entry = {{"games", f.games}, {"f_home", f.home}, {"f_draw", f.draw}, {"f_away", f.away}};
      out << name << ": " << f.games << " games, f = (" << f.home << ", " << f.draw << ", "
          << f.away << ")";
      try {
        EtaKappa ek = EmpiricalEtaKappa(f);
        entry["eta"] = ek.eta;
        entry["kappa"] = ek.kappa;
        out << ", eta = " << ek.eta << ", kappa = " << ek.kappa;
      } catch (const std::invalid_argument& e) {
        entry["eta"] = nullptr;
        entry["kappa"] = nullptr;
        out << ", eta/kappa undefined (" << e.what() << ")";
      }
      out << "\n";
    } catch (const std::invalid_argument& e) {
      entry = {{"games", 0}, {"error", e.what()}};
      out << name << ": " << e.what() << "\n";
    }
    report[name] = entry;
  }
  auto hist = MovHistogram(set.matches);
  report["mov_histogram"] = hist;
  run.Write("report.json", report.dump(2) + "\n");
  return 0;
}

int CmdScaleSelect(const CommonFlags& flags, const std::vector<double>& candidates,
                   std::ostream& out) {
  ModelKind kind = ParseModelKind(flags.model);
  ParamSet params = ResolveParams(DefaultOnlineParams(kind), ParseParamTokens(flags.params));
  Engine engine = MakeEngine(kind, params);
  RuleToggles rules{!flags.no_shootout, !flags.no_knockout};
  LoadedData data = LoadWithInitial(flags.matches, flags.initial, flags.seed_newcomers);
  json manifest = {{"subcommand", "scale-select"},
                   {"matches", FileRecord(flags.matches)},
                   {"initial", FileRecord(flags.initial)},
                   {"seed_newcomers", flags.seed_newcomers},
                   {"model", flags.model},
                   {"params", ParamsJson(params)},
                   {"candidates", candidates},
                   {"shootout_rule", rules.shootout},
                   {"knockout_rule", rules.knockout}};
  RunOutput run = OpenRun(flags.out, manifest, out);

  ScaleSelection sel = SelectScale(data.set.matches, data.initial, engine, candidates, rules);
  std::ostringstream csv;
  csv << "scale,sigma_final\n";
  for (const ScaleCandidate& c : sel.table) {
    csv << c.scale << ',' << std::setprecision(10) << c.final_stddev << '\n';
  }
  run.Write("scale_table.csv", csv.str());
  run.Write("report.json", json{{"chosen_scale", sel.chosen_scale},
                                {"sigma_initial", sel.initial_stddev}}
                                   .dump(2) +
                               "\n");
  out << "sigma_0 = " << sel.initial_stddev << "\n";
  for (const ScaleCandidate& c : sel.table) {
    out << "  s = " << c.scale << ": sigma_T = " << c.final_stddev << "\n";
  }
  out << "chosen scale " << sel.chosen_scale << "\n";
  return 0;
}

int CmdSynth(const CommonFlags& flags, std::uint64_t seed, int teams, int games,
             std::ostream& out) {
  if (flags.out.empty()) throw UsageError("synth needs --out");
  ModelKind kind = ParseModelKind(flags.model);
  if (kind == ModelKind::kFifa) throw UsageError("synth samples from davidson or skellam");
  SynthOptions options;
  options.seed = seed;
  options.num_teams = teams;
  options.num_games = games;
  options.skellam = kind == ModelKind::kSkellam;
  ParamSet defaults = options.skellam
                          ? ParamSet{{"c", 0}, {"eta", 0.2}, {"s", 300}}
                          : ParamSet{{"eta", 0.3}, {"kappa", 0.8}, {"s", 200}};
  defaults["spread"] = options.skill_spread;
  defaults["venue_rate"] = options.home_venue_rate;
  defaults["initial"] = options.initial_rating;
  ParamSet params = ResolveParams(defaults, ParseParamTokens(flags.params));
  if (options.skellam) {
    options.skellam_params = {params["c"], params["eta"], params["s"], 50};
  } else {
    options.davidson = {params["eta"], params["kappa"], params["s"]};
  }
  options.skill_spread = params["spread"];
  options.home_venue_rate = params["venue_rate"];
  options.initial_rating = params["initial"];

  json manifest = {{"subcommand", "synth"}, {"seed", seed},   {"teams", teams},
                   {"games", games},        {"model", flags.model},
                   {"generating_params", ParamsJson(params)}};
  RunOutput run = OpenRun(flags.out, manifest, out);
  SynthData data = GenerateSynthetic(options);
  std::ostringstream matches;
  WriteMatches(matches, data.matches);
  run.Write("matches.csv", matches.str());
  std::vector<double> truth(data.truth.size());
  for (const auto& [id, v] : data.truth) truth[id] = v;
  run.Write("truth.csv", RatingsCsv(data.matches.teams, truth));
  std::ostringstream initial;
  initial << "team,rating\n" << std::fixed << std::setprecision(6);
  for (TeamId id = 0; id < data.matches.teams.size(); ++id) {
    initial << data.matches.teams.Name(id) << ',' << options.initial_rating << '\n';
  }
  run.Write("initial.csv", initial.str());
  out << "wrote " << games << " games between " << teams << " teams\n";
  return 0;
}

}  // namespace

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string RunDirectory(const std::string& base, const nlohmann::json& manifest) {
  std::string name = manifest.value("subcommand", std::string("run")) + "-" +
                     HexDigest(Fnv1a64(manifest.dump()));
  return (fs::path(base) / name).string();
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rating engine for international football results"};
  app.require_subcommand(1);
  app.name("fifarank");

  CommonFlags flags;
  auto add_matches = [&](CLI::App* cmd) {
    cmd->add_option("--matches", flags.matches, "match CSV")->required();
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", flags.out, "base directory for the run directory");
  };
  auto add_model = [&](CLI::App* cmd, const std::string& fallback) {
    flags.model = fallback;
    cmd->add_option("--model", flags.model, "fifa, davidson or skellam");
    cmd->add_option("--params", flags.params, "key=value overrides");
  };
  auto add_initial = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--initial", flags.initial, "initial ratings CSV");
    if (required) opt->required();
    cmd->add_flag("--seed-newcomers", flags.seed_newcomers,
                  "give unrated teams the mean initial rating");
  };
  auto add_rules = [&](CLI::App* cmd) {
    cmd->add_flag("--no-shootout-rule", flags.no_shootout);
    cmd->add_flag("--no-knockout-rule", flags.no_knockout);
  };

  CLI::App* validate = app.add_subcommand("validate", "check a match CSV");
  add_matches(validate);

  std::vector<std::string> snapshot_dates;
  CLI::App* replay = app.add_subcommand("replay", "run an online rating engine");
  add_matches(replay);
  add_initial(replay, true);
  add_model(replay, "fifa");
  add_rules(replay);
  add_out(replay);
  replay->add_option("--snapshot-date", snapshot_dates, "write ratings as of YYYY-MM-DD");

  SolveOptions solve_options;
  std::string truth_path;
  CLI::App* fit = app.add_subcommand("fit-batch", "regularized batch fit");
  add_matches(fit);
  add_out(fit);
  fit->add_option("--model", flags.model, "davidson or skellam");
  fit->add_option("--params", flags.params, "key=value overrides");
  fit->add_option("--tol", solve_options.tol);
  fit->add_option("--max-iter", solve_options.max_iter);
  fit->add_option("--truth", truth_path, "ground-truth ratings for a rank correlation");

  std::string metric = "log_score";
  CLI::App* alo = app.add_subcommand("alo", "approximate leave-one-out evaluation");
  add_matches(alo);
  add_out(alo);
  alo->add_option("--model", flags.model, "davidson or skellam");
  alo->add_option("--params", flags.params, "key=value overrides");
  alo->add_option("--metric", metric, "log_score or accuracy");
  alo->add_option("--tol", solve_options.tol);
  alo->add_option("--max-iter", solve_options.max_iter);

  std::string config_path;
  std::string objective = "online_log_score";
  SearchOptions search_options;
  bool sequential = false;
  CLI::App* tune = app.add_subcommand("tune", "alternating grid search of parameters");
  add_matches(tune);
  add_initial(tune, false);
  add_rules(tune);
  add_out(tune);
  tune->add_option("--model", flags.model, "fifa, davidson or skellam");
  tune->add_option("--config", config_path, "tuning config")->required();
  tune->add_option("--objective", objective, "online_mse, online_log_score or alo_log_score");
  tune->add_option("--tol", search_options.tol);
  tune->add_option("--max-sweeps", search_options.max_sweeps);
  tune->add_flag("--sequential", sequential, "evaluate grid points one at a time");

  std::string venue = "split";
  CLI::App* freq = app.add_subcommand("freq-estimate", "outcome frequencies and eta/kappa");
  add_matches(freq);
  add_out(freq);
  freq->add_option("--venue", venue, "all, neutral, home or split");

  std::vector<double> candidates = {100, 200, 300, 400, 500, 600, 700, 800, 900, 1000};
  CLI::App* scale = app.add_subcommand("scale-select", "moment-matching scale choice");
  add_matches(scale);
  add_initial(scale, true);
  add_model(scale, "davidson");
  add_rules(scale);
  add_out(scale);
  scale->add_option("--candidates", candidates)->delimiter(',');

  std::uint64_t seed = 1;
  int teams = 8;
  int games = 200;
  CLI::App* synth = app.add_subcommand("synth", "generate synthetic match data");
  add_out(synth);
  add_model(synth, "davidson");
  synth->add_option("--seed", seed);
  synth->add_option("--teams", teams);
  synth->add_option("--games", games);

  // add_model() on later subcommands overwrote the fallback; reset per command.
  replay->preparse_callback([&](size_t) { flags.model = "fifa"; });
  fit->preparse_callback([&](size_t) { flags.model = "davidson"; });
  alo->preparse_callback([&](size_t) { flags.model = "davidson"; });
  tune->preparse_callback([&](size_t) { flags.model = "davidson"; });
  scale->preparse_callback([&](size_t) { flags.model = "davidson"; });
  synth->preparse_callback([&](size_t) { flags.model = "davidson"; });

  std::vector<const char*> argv = {"fifarank"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return CmdValidate(flags, out, err);
    if (*replay) return CmdReplay(flags, snapshot_dates, out);
    if (*fit) return CmdFitBatch(flags, solve_options, truth_path, out);
    if (*alo) return CmdAlo(flags, solve_options, metric, out);
    if (*tune) {
      search_options.parallel = !sequential;
      return CmdTune(flags, config_path, objective, search_options, out);
    }
    if (*freq) return CmdFreqEstimate(flags, venue, out);
    if (*scale) return CmdScaleSelect(flags, candidates, out);
    if (*synth) return CmdSynth(flags, seed, teams, games, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return e.row() > 0 ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace fifarank
