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

#include <gtest/gtest.h>

#include <sstream>

#include "test_util.h"

namespace fifarank {
namespace {

using testing::Game;

MatchSet ParseText(const std::string& body) {
  std::istringstream in(std::string(kMatchCsvHeader) + "\n" + body);
  return ParseMatches(in);
}

int ErrorRow(const std::string& body, std::string* message) {
  try {
    ParseText(body);
  } catch (const DataError& e) {
    *message = e.detail();
    return e.row();
  }
  return -1;
}

TEST(ParseMatches, SingleRow) {
  MatchSet set = ParseText("2018-06-04,BEL,FRA,1,0,4,1,none,0,0\n");
  ASSERT_EQ(set.matches.size(), 1u);
  const MatchRecord& m = set.matches[0];
  EXPECT_EQ(m.match_index, 1);
  EXPECT_EQ(set.teams.Name(m.home), "BEL");
  EXPECT_EQ(set.teams.Name(m.away), "FRA");
  EXPECT_EQ(m.category, 4);
  EXPECT_TRUE(m.home_venue);
  EXPECT_EQ(OutcomeOf(m), Outcome::kHome);
  EXPECT_EQ(FormatDate(m.date), "2018-06-04");
}

TEST(ParseMatches, RejectsBadRows) {
  std::string msg;
  EXPECT_EQ(ErrorRow("2018-06-04,BEL,FRA,1,0,9,1,none,0,0\n", &msg), 2);
  EXPECT_EQ(msg, "category out of range");
  EXPECT_EQ(ErrorRow("2018-06-04,BEL,FRA,1,0,0,1,none,0,0\n"
                     "2018-06-05,BEL,FRA,-1,0,0,1,none,0,0\n",
                     &msg),
            3);
  EXPECT_EQ(msg, "negative goals");
  EXPECT_EQ(ErrorRow("2018-06-04,BEL,FRA,2,1,0,1,home,0,0\n", &msg), 2);
  EXPECT_EQ(msg, "shootout on a non-drawn game");
  EXPECT_EQ(ErrorRow("2018-06-04,BEL,FRA,2,1,0\n", &msg), 2);
  EXPECT_EQ(ErrorRow("2018-06-04,BEL,BEL,2,1,0,1,none,0,0\n", &msg), 2);
  EXPECT_EQ(ErrorRow("2018-06-04,BEL,FRA,100,1,0,1,none,0,0\n", &msg), 2);
  EXPECT_EQ(ErrorRow("2018-13-04,BEL,FRA,1,1,0,1,none,0,0\n", &msg), 2);
  EXPECT_EQ(ErrorRow("2018-06-04,BEL,FRA,1,1,0,2,none,0,0\n", &msg), 2);
}

TEST(ParseMatches, RejectsWhitespaceTwins) {
  std::string msg;
  EXPECT_EQ(ErrorRow("2018-06-04,South Korea,FRA,1,0,0,1,none,0,0\n"
                     "2018-06-05,South  Korea,FRA,1,0,0,1,none,0,0\n",
                     &msg),
            3);
}

TEST(ParseMatches, ShootoutOnDrawIsValid) {
  MatchSet set = ParseText("2018-06-04,BEL,FRA,2,2,4,0,home,1,0\n");
  EXPECT_EQ(OutcomeOf(set.matches[0]), Outcome::kDraw);
  EXPECT_EQ(set.matches[0].shootout_winner, ShootoutWinner::kHome);
}

TEST(ParseMatches, SortsByDateThenFileOrder) {
  MatchSet set = ParseText(
      "2018-06-05,A,B,1,0,0,0,none,0,0\n"
      "2018-06-04,C,D,1,0,0,0,none,0,0\n"
      "2018-06-05,E,F,1,0,0,0,none,0,0\n"
      "2018-06-04,G,H,1,0,0,0,none,0,0\n");
  std::vector<std::string> order;
  for (const auto& m : set.matches) order.push_back(set.teams.Name(m.home));
  EXPECT_EQ(order, (std::vector<std::string>{"C", "G", "A", "E"}));
  for (size_t i = 0; i < set.matches.size(); ++i) {
    EXPECT_EQ(set.matches[i].match_index, static_cast<int>(i) + 1);
  }
}

TEST(ParseMatches, RoundTrip) {
  MatchSet set = ParseText(
      "2018-06-04,BEL,FRA,1,0,4,1,none,0,0\n"
      "2018-06-05,ENG,CRO,1,1,8,0,away,1,0\n"
      "2018-06-06,BRA,ARG,3,3,6,1,home,1,1\n");
  std::ostringstream out;
  WriteMatches(out, set);
  std::istringstream in(out.str());
  MatchSet again = ParseMatches(in);
  std::ostringstream out2;
  WriteMatches(out2, again);
  EXPECT_EQ(out.str(), out2.str());
  ASSERT_EQ(again.matches.size(), 3u);
  EXPECT_EQ(again.matches[1].shootout_winner, ShootoutWinner::kAway);
  EXPECT_TRUE(again.matches[2].two_legged);
}

TEST(ValidateMatches, CollectsAllDiagnostics) {
  std::istringstream in(std::string(kMatchCsvHeader) +
                        "\n2018-06-04,BEL,FRA,1,0,9,1,none,0,0\n"
                        "2018-06-04,BEL,FRA,1,0,1,1,none,0,0\n"
                        "2018-06-04,BEL,FRA,1,-2,1,1,none,0,0\n");
  MatchSet set;
  auto diagnostics = ValidateMatches(in, &set);
  ASSERT_EQ(diagnostics.size(), 2u);
  EXPECT_EQ(diagnostics[0].row, 2);
  EXPECT_EQ(diagnostics[1].row, 4);
  EXPECT_EQ(set.matches.size(), 1u);
}

TEST(Outcome, Scores) {
  EXPECT_EQ(OutcomeOf(Game(1, 0, 1, 3, 1)), Outcome::kHome);
  EXPECT_EQ(OutcomeOf(Game(1, 0, 1, 2, 2)), Outcome::kDraw);
  EXPECT_EQ(OutcomeOf(Game(1, 0, 1, 0, 4)), Outcome::kAway);
  EXPECT_EQ(NumericScore(Outcome::kHome), 1.0);
  EXPECT_EQ(NumericScore(Outcome::kDraw), 0.5);
  EXPECT_EQ(NumericScore(Outcome::kAway), 0.0);
}

TEST(Outcome, MirrorSumsToOne) {
  for (int hg = 0; hg < 5; ++hg) {
    for (int ag = 0; ag < 5; ++ag) {
      double s = NumericScore(OutcomeOf(Game(1, 0, 1, hg, ag))) +
                 NumericScore(OutcomeOf(Game(1, 1, 0, ag, hg)));
      EXPECT_EQ(s, 1.0);
    }
  }
}

TEST(SubjectiveScore, ShootoutRule) {
  MatchRecord m = Game(1, 0, 1, 1, 1);
  m.shootout_winner = ShootoutWinner::kHome;
  EXPECT_EQ(SubjectiveScore(m, Side::kHome), 0.75);
  EXPECT_EQ(SubjectiveScore(m, Side::kAway), 0.5);
  EXPECT_EQ(SubjectiveScore(m, Side::kHome, false), 0.5);
  m.shootout_winner = ShootoutWinner::kAway;
  EXPECT_EQ(SubjectiveScore(m, Side::kHome), 0.5);
  EXPECT_EQ(SubjectiveScore(m, Side::kAway), 0.75);
  m.two_legged = true;
  EXPECT_EQ(SubjectiveScore(m, Side::kHome), 0.5);
  EXPECT_EQ(SubjectiveScore(m, Side::kAway), 0.5);

  MatchRecord win = Game(1, 0, 1, 2, 0);
  EXPECT_EQ(SubjectiveScore(win, Side::kHome), 1.0);
  EXPECT_EQ(SubjectiveScore(win, Side::kAway), 0.0);
}

TEST(MovCategory, Examples) {
  EXPECT_EQ(MovCategory(0, 2), 0);
  EXPECT_EQ(MovCategory(-1, 2), 1);
  EXPECT_EQ(MovCategory(5, 2), 2);
  for (int v = 1; v <= 6; ++v) {
    for (int d = -10; d <= 10; ++d) {
      EXPECT_EQ(MovCategory(d, v), MovCategory(-d, v));
      EXPECT_LE(MovCategory(d, v), v);
    }
  }
}

TEST(OutcomeFrequencies, Counting) {
  std::vector<MatchRecord> games = {Game(1, 0, 1, 1, 0), Game(2, 0, 1, 2, 0),
                                    Game(3, 0, 1, 1, 1), Game(4, 0, 1, 0, 1)};
  OutcomeFrequencies f = ComputeOutcomeFrequencies(games, VenueFilter::kAll);
  EXPECT_DOUBLE_EQ(f.home, 0.5);
  EXPECT_DOUBLE_EQ(f.draw, 0.25);
  EXPECT_DOUBLE_EQ(f.away, 0.25);
  EXPECT_NEAR(f.home + f.draw + f.away, 1.0, 1e-12);
  EXPECT_THROW(ComputeOutcomeFrequencies(games, VenueFilter::kHomeVenueOnly),
               std::invalid_argument);
  games[0].home_venue = true;
  f = ComputeOutcomeFrequencies(games, VenueFilter::kNeutralOnly);
  EXPECT_EQ(f.games, 3);
}

TEST(MovHistogram, Buckets) {
  auto empty = MovHistogram({});
  for (int c : empty) EXPECT_EQ(c, 0);
  std::vector<MatchRecord> games = {Game(1, 0, 1, 8, 0)};
  EXPECT_EQ(MovHistogram(games)[6], 1);
  games.push_back(Game(2, 0, 1, 0, 2));
  games.push_back(Game(3, 0, 1, 3, 3));
  auto h = MovHistogram(games);
  EXPECT_EQ(h[0], 1);
  EXPECT_EQ(h[2], 1);
  int total = 0;
  for (int c : h) total += c;
  EXPECT_EQ(total, 3);
}

TEST(ParseRatings, InternsNewTeams) {
  TeamRegistry teams;
  teams.Intern("BEL");
  std::istringstream in("team,rating\nBEL,1700.5\nTGA,900\n");
  auto ratings = ParseRatings(in, teams);
  EXPECT_EQ(teams.size(), 2);
  EXPECT_DOUBLE_EQ(ratings.at(0), 1700.5);
  EXPECT_DOUBLE_EQ(ratings.at(1), 900.0);
}

}  // namespace
}  // namespace fifarank
