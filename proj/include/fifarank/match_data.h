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

// Match records, team registry and the CSV formats they are read from.

#ifndef FIFARANK_MATCH_DATA_H_
#define FIFARANK_MATCH_DATA_H_

#include <array>
#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fifarank {

// Dense team index into a TeamRegistry, 0..M-1.
using TeamId = int;

inline constexpr int kNumCategories = 9;
inline constexpr int kMaxGoals = 99;

enum class Outcome { kHome, kDraw, kAway };
enum class ShootoutWinner { kNone, kHome, kAway };
enum class Side { kHome, kAway };

// Numeric score of an outcome seen from the home team: A -> 0, D -> 0.5, H -> 1.
double NumericScore(Outcome outcome);
char OutcomeLetter(Outcome outcome);

struct MatchRecord {
  int match_index = 0;  // 1..T after canonicalization
  std::chrono::year_month_day date{};
  TeamId home = 0;
  TeamId away = 0;
  int home_goals = 0;
  int away_goals = 0;
  int category = 0;
  bool home_venue = false;  // b = 1 when played in the home team's country
  ShootoutWinner shootout_winner = ShootoutWinner::kNone;
  bool knockout = false;
  bool two_legged = false;

  int GoalDiff() const { return home_goals - away_goals; }
  int Venue() const { return home_venue ? 1 : 0; }
};

// Raised for any schema or invariant violation in input data. `row()` is the
// 1-based line number in the source (the header is line 1), or 0 when the
// error is not tied to a line.
class DataError : public std::runtime_error {
 public:
  DataError(int row, const std::string& message);
  int row() const { return row_; }
  const std::string& detail() const { return detail_; }

 private:
  int row_;
  std::string detail_;
};

class TeamRegistry {
 public:
  // Returns the id of `name`, registering it if new. Throws DataError when
  // `name` collides with a registered name that differs only by whitespace.
  TeamId Intern(std::string_view name, int row = 0);
  // Returns -1 when unknown.
  TeamId Find(std::string_view name) const;
  const std::string& Name(TeamId id) const { return names_.at(id); }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, TeamId> by_name_;
  std::unordered_map<std::string, TeamId> by_squashed_name_;
};

struct MatchSet {
  TeamRegistry teams;
  std::vector<MatchRecord> matches;  // sorted by date, then file order
};

inline constexpr std::string_view kMatchCsvHeader =
    "date,home,away,home_goals,away_goals,category,home_venue,"
    "shootout_winner,knockout,two_legged";

// Parses the match CSV. Records are stably sorted by date and numbered 1..T.
// Throws DataError on the first violation.
MatchSet ParseMatches(std::istream& in);
MatchSet ParseMatchesFile(const std::string& path);

struct Diagnostic {
  int row = 0;
  std::string message;
};

// Same checks as ParseMatches, but collects every row-level problem instead
// of stopping at the first one. `parsed` receives the valid rows.
std::vector<Diagnostic> ValidateMatches(std::istream& in, MatchSet* parsed);

// Writes records in canonical form (header included).
void WriteMatches(std::ostream& out, const MatchSet& set);

// `team,rating` file. Teams not yet registered are added to `teams`, so
// teams that never play still count towards M.
std::map<TeamId, double> ParseRatings(std::istream& in, TeamRegistry& teams);
std::map<TeamId, double> ParseRatingsFile(const std::string& path,
                                          TeamRegistry& teams);

std::string FormatDate(const std::chrono::year_month_day& date);
// Strict YYYY-MM-DD. Throws std::invalid_argument.
std::chrono::year_month_day ParseDate(std::string_view text);

Outcome OutcomeOf(const MatchRecord& match);

// Per-team score. With the shootout rule active (and the tie not two-legged)
// the shootout winner gets 0.75 and the loser 0.5.
double SubjectiveScore(const MatchRecord& match, Side side,
                       bool shootout_rule = true);

// v = |d| when |d| < cap, otherwise cap.
int MovCategory(int goal_diff, int cap);

enum class VenueFilter { kAll, kNeutralOnly, kHomeVenueOnly };

struct OutcomeFrequencies {
  double home = 0;
  double draw = 0;
  double away = 0;
  int games = 0;
};

// Throws std::invalid_argument when the filtered set is empty.
OutcomeFrequencies ComputeOutcomeFrequencies(
    std::span<const MatchRecord> matches, VenueFilter filter);

// Counts of |d| = 0,1,2,3,4,5 and >= 6.
std::array<int, 7> MovHistogram(std::span<const MatchRecord> matches);

}  // namespace fifarank

#endif  // FIFARANK_MATCH_DATA_H_
