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

#include "fifarank/match_data.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace fifarank {
namespace {

std::string_view StripCr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

bool IsBlank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::string SquashWhitespace(std::string_view name) {
  std::string out;
  for (unsigned char c : name) {
    if (!std::isspace(c)) out.push_back(static_cast<char>(c));
  }
  return out;
}

bool ParseInt(std::string_view text, int* value) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool ParseFlag(std::string_view text, bool* value) {
  if (text == "0") {
    *value = false;
    return true;
  }
  if (text == "1") {
    *value = true;
    return true;
  }
  return false;
}

bool ParseDouble(std::string_view text, double* value) {
  if (text.empty()) return false;
  // from_chars for double is available in libstdc++ >= 11.
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *value);
  return ec == std::errc() && ptr == text.data() + text.size() &&
         std::isfinite(*value);
}

void ReadHeader(std::istream& in, std::string_view expected,
                std::string* line) {
  if (!std::getline(in, *line)) {
    throw DataError(1, "missing header");
  }
  std::string_view header = StripCr(*line);
  // UTF-8 byte order mark.
  if (header.size() >= 3 && header.substr(0, 3) == "\xEF\xBB\xBF") {
    header.remove_prefix(3);
  }
  if (header != expected) {
    throw DataError(1, "unexpected header, want '" + std::string(expected) + "'");
  }
}

// Parses one data row. `row` is the file line number.
MatchRecord ParseRow(std::string_view line, int row, TeamRegistry& teams) {
  auto fields = SplitCommas(line);
  if (fields.size() != 10) {
    throw DataError(row, "malformed row: expected 10 fields, got " +
                             std::to_string(fields.size()));
  }
  MatchRecord m;
  try {
    m.date = ParseDate(fields[0]);
  } catch (const std::invalid_argument&) {
    throw DataError(row, "malformed row: bad date '" + std::string(fields[0]) + "'");
  }
  if (fields[1].empty() || fields[2].empty()) {
    throw DataError(row, "malformed row: empty team name");
  }
  if (!ParseInt(fields[3], &m.home_goals) || !ParseInt(fields[4], &m.away_goals)) {
    throw DataError(row, "malformed row: goals must be integers");
  }
  if (m.home_goals < 0 || m.away_goals < 0) {
    throw DataError(row, "negative goals");
  }
  if (m.home_goals > kMaxGoals || m.away_goals > kMaxGoals) {
    throw DataError(row, "goals exceed " + std::to_string(kMaxGoals));
  }
  if (!ParseInt(fields[5], &m.category)) {
    throw DataError(row, "malformed row: category must be an integer");
  }
  if (m.category < 0 || m.category >= kNumCategories) {
    throw DataError(row, "category out of range");
  }
  if (!ParseFlag(fields[6], &m.home_venue)) {
    throw DataError(row, "malformed row: home_venue must be 0 or 1");
  }
  if (fields[7] == "none") {
    m.shootout_winner = ShootoutWinner::kNone;
  } else if (fields[7] == "home") {
    m.shootout_winner = ShootoutWinner::kHome;
  } else if (fields[7] == "away") {
    m.shootout_winner = ShootoutWinner::kAway;
  } else {
    throw DataError(row, "malformed row: shootout_winner must be none, home or away");
  }
  if (!ParseFlag(fields[8], &m.knockout) || !ParseFlag(fields[9], &m.two_legged)) {
    throw DataError(row, "malformed row: knockout and two_legged must be 0 or 1");
  }
  if (m.shootout_winner != ShootoutWinner::kNone && m.home_goals != m.away_goals) {
    throw DataError(row, "shootout on a non-drawn game");
  }
  m.home = teams.Intern(fields[1], row);
  m.away = teams.Intern(fields[2], row);
  if (m.home == m.away) {
    throw DataError(row, "home and away team are the same");
  }
  return m;
}

void Canonicalize(std::vector<MatchRecord>& matches) {
  std::stable_sort(matches.begin(), matches.end(),
                   [](const MatchRecord& a, const MatchRecord& b) {
                     return a.date < b.date;
                   });
  for (size_t i = 0; i < matches.size(); ++i) {
    matches[i].match_index = static_cast<int>(i) + 1;
  }
}

}  // namespace

DataError::DataError(int row, const std::string& message)
    : std::runtime_error(row > 0 ? "row " + std::to_string(row) + ": " + message
                                 : message),
      row_(row),
      detail_(message) {}

double NumericScore(Outcome outcome) {
  switch (outcome) {
    case Outcome::kHome:
      return 1.0;
    case Outcome::kDraw:
      return 0.5;
    case Outcome::kAway:
      return 0.0;
  }
  return 0.0;
}

char OutcomeLetter(Outcome outcome) {
  switch (outcome) {
    case Outcome::kHome:
      return 'H';
    case Outcome::kDraw:
      return 'D';
    case Outcome::kAway:
      return 'A';
  }
  return '?';
}

TeamId TeamRegistry::Intern(std::string_view name, int row) {
  std::string key(name);
  if (auto it = by_name_.find(key); it != by_name_.end()) return it->second;
  std::string squashed = SquashWhitespace(name);
  if (squashed.empty()) throw DataError(row, "empty team name");
  if (auto it = by_squashed_name_.find(squashed); it != by_squashed_name_.end()) {
    throw DataError(row, "team name '" + key + "' differs from '" +
                             names_[it->second] + "' only by whitespace");
  }
  TeamId id = static_cast<TeamId>(names_.size());
  names_.push_back(key);
  by_name_.emplace(key, id);
  by_squashed_name_.emplace(squashed, id);
  return id;
}

TeamId TeamRegistry::Find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  return it == by_name_.end() ? -1 : it->second;
}

std::chrono::year_month_day ParseDate(std::string_view text) {
  int y = 0, m = 0, d = 0;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
      !ParseInt(text.substr(0, 4), &y) || !ParseInt(text.substr(5, 2), &m) ||
      !ParseInt(text.substr(8, 2), &d)) {
    throw std::invalid_argument("bad date");
  }
  std::chrono::year_month_day date{std::chrono::year(y),
                                   std::chrono::month(static_cast<unsigned>(m)),
                                   std::chrono::day(static_cast<unsigned>(d))};
  if (!date.ok()) throw std::invalid_argument("bad date");
  return date;
}

std::string FormatDate(const std::chrono::year_month_day& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()));
  return buf;
}

MatchSet ParseMatches(std::istream& in) {
  MatchSet set;
  std::string line;
  ReadHeader(in, kMatchCsvHeader, &line);
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    std::string_view view = StripCr(line);
    if (IsBlank(view)) continue;
    set.matches.push_back(ParseRow(view, row, set.teams));
  }
  Canonicalize(set.matches);
  return set;
}

MatchSet ParseMatchesFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(0, "cannot open " + path);
  return ParseMatches(in);
}

std::vector<Diagnostic> ValidateMatches(std::istream& in, MatchSet* parsed) {
  std::vector<Diagnostic> diagnostics;
  MatchSet set;
  std::string line;
  try {
    ReadHeader(in, kMatchCsvHeader, &line);
  } catch (const DataError& e) {
    diagnostics.push_back({e.row(), e.detail()});
    return diagnostics;
  }
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    std::string_view view = StripCr(line);
    if (IsBlank(view)) continue;
    try {
      set.matches.push_back(ParseRow(view, row, set.teams));
    } catch (const DataError& e) {
      diagnostics.push_back({e.row(), e.detail()});
    }
  }
  Canonicalize(set.matches);
  if (parsed != nullptr) *parsed = std::move(set);
  return diagnostics;
}

void WriteMatches(std::ostream& out, const MatchSet& set) {
  out << kMatchCsvHeader << '\n';
  for (const MatchRecord& m : set.matches) {
    const char* shootout = m.shootout_winner == ShootoutWinner::kHome   ? "home"
                           : m.shootout_winner == ShootoutWinner::kAway ? "away"
                                                                        : "none";
    out << FormatDate(m.date) << ',' << set.teams.Name(m.home) << ','
        << set.teams.Name(m.away) << ',' << m.home_goals << ',' << m.away_goals
        << ',' << m.category << ',' << m.Venue() << ',' << shootout << ','
        << (m.knockout ? 1 : 0) << ',' << (m.two_legged ? 1 : 0) << '\n';
  }
}

std::map<TeamId, double> ParseRatings(std::istream& in, TeamRegistry& teams) {
  std::map<TeamId, double> ratings;
  std::string line;
  ReadHeader(in, "team,rating", &line);
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    std::string_view view = StripCr(line);
    if (IsBlank(view)) continue;
    auto fields = SplitCommas(view);
    if (fields.size() != 2) throw DataError(row, "malformed row: expected team,rating");
    double rating = 0;
    if (!ParseDouble(fields[1], &rating)) {
      throw DataError(row, "malformed row: bad rating '" + std::string(fields[1]) + "'");
    }
    TeamId id = teams.Intern(fields[0], row);
    if (!ratings.emplace(id, rating).second) {
      throw DataError(row, "duplicate rating for team '" + std::string(fields[0]) + "'");
    }
  }
  return ratings;
}

std::map<TeamId, double> ParseRatingsFile(const std::string& path,
                                          TeamRegistry& teams) {
  std::ifstream in(path);
  if (!in) throw DataError(0, "cannot open " + path);
  return ParseRatings(in, teams);
}

Outcome OutcomeOf(const MatchRecord& match) {
  if (match.home_goals > match.away_goals) return Outcome::kHome;
  if (match.home_goals == match.away_goals) return Outcome::kDraw;
  return Outcome::kAway;
}

double SubjectiveScore(const MatchRecord& match, Side side, bool shootout_rule) {
  if (shootout_rule && match.shootout_winner != ShootoutWinner::kNone &&
      !match.two_legged) {
    bool home_won = match.shootout_winner == ShootoutWinner::kHome;
    bool side_won = (side == Side::kHome) == home_won;
    return side_won ? 0.75 : 0.5;
  }
  double home = NumericScore(OutcomeOf(match));
  return side == Side::kHome ? home : 1.0 - home;
}

int MovCategory(int goal_diff, int cap) {
  int magnitude = goal_diff < 0 ? -goal_diff : goal_diff;
  return magnitude < cap ? magnitude : cap;
}

OutcomeFrequencies ComputeOutcomeFrequencies(
    std::span<const MatchRecord> matches, VenueFilter filter) {
  int counts[3] = {0, 0, 0};
  int total = 0;
  for (const MatchRecord& m : matches) {
    if (filter == VenueFilter::kNeutralOnly && m.home_venue) continue;
    if (filter == VenueFilter::kHomeVenueOnly && !m.home_venue) continue;
    ++counts[static_cast<int>(OutcomeOf(m))];
    ++total;
  }
  if (total == 0) throw std::invalid_argument("no games in the filtered set");
  OutcomeFrequencies f;
  f.games = total;
  f.home = static_cast<double>(counts[0]) / total;
  f.draw = static_cast<double>(counts[1]) / total;
  f.away = static_cast<double>(counts[2]) / total;
  return f;
}

std::array<int, 7> MovHistogram(std::span<const MatchRecord> matches) {
  std::array<int, 7> counts{};
  for (const MatchRecord& m : matches) ++counts[MovCategory(m.GoalDiff(), 6)];
  return counts;
}

}  // namespace fifarank
