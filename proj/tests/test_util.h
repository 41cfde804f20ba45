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

// Fixture builders shared by the test binaries.

#ifndef FIFARANK_TESTS_TEST_UTIL_H_
#define FIFARANK_TESTS_TEST_UTIL_H_

#include <chrono>
#include <cmath>
#include <functional>
#include <vector>

#include "fifarank/match_data.h"

namespace fifarank::testing {

inline MatchRecord Game(int index, TeamId home, TeamId away, int home_goals,
                        int away_goals, int category = 0, bool home_venue = false) {
  MatchRecord m;
  m.match_index = index;
  m.date = std::chrono::year_month_day{std::chrono::sys_days{
      std::chrono::year_month_day{std::chrono::year(2020), std::chrono::January,
                                  std::chrono::day(1)}} +
                                       std::chrono::days(index)};
  m.home = home;
  m.away = away;
  m.home_goals = home_goals;
  m.away_goals = away_goals;
  m.category = category;
  m.home_venue = home_venue;
  return m;
}

// Central difference with step h.
inline double CentralDiff(const std::function<double(double)>& f, double x,
                          double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

// |a - b| relative to max(1, |b|).
inline double RelErr(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace fifarank::testing

#endif  // FIFARANK_TESTS_TEST_UTIL_H_
