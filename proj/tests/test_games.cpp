// Copyright 2026 The mddw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "mddw/games.hpp"

namespace mddw {
namespace {

TEST(Games, AllSuitesPassAtSmallScale) {
  struct Row {
    Suite suite;
    size_t trials;
  };
  for (Row row : {Row{Suite::completeness, 10}, Row{Suite::consistency, 12},
                  Row{Suite::soundness, 20}, Row{Suite::robustness, 10}, Row{Suite::otr, 10},
                  Row{Suite::distortion, 20}, Row{Suite::claim, 5}, Row{Suite::attempts, 500}}) {
    GameReport rep = run_suite(row.suite, row.trials, 20260811);
    EXPECT_EQ(rep.failures, 0u) << rep.suite;
    EXPECT_TRUE(rep.passed());
  }
}

TEST(Games, ReproducibleUnderFixedSeed) {
  GameReport a = run_suite(Suite::attempts, 400, 5);
  GameReport b = run_suite(Suite::attempts, 400, 5);
  EXPECT_EQ(a.failures, b.failures);
  EXPECT_EQ(a.stats.at("mean_attempts"), b.stats.at("mean_attempts"));
  EXPECT_EQ(a.trials, b.trials);

  GameReport c = run_suite(Suite::otr, 6, 9);
  GameReport d = run_suite(Suite::otr, 6, 9);
  EXPECT_EQ(c.stats.at("marginals_min_p"), d.stats.at("marginals_min_p"));
  EXPECT_EQ(c.stats.at("token_stats_p"), d.stats.at("token_stats_p"));
}

TEST(Games, AttemptsMeanIsRecorded) {
  GameReport rep = run_suite(Suite::attempts, 600, 7);
  ASSERT_TRUE(rep.stats.contains("mean_attempts"));
  EXPECT_GT(rep.stats["mean_attempts"], 1.8);
  EXPECT_LT(rep.stats["mean_attempts"], 2.2);
  EXPECT_GE(rep.trials, 600u);
}

TEST(Games, SuiteNamesRoundTrip) {
  for (Suite s : {Suite::completeness, Suite::consistency, Suite::soundness, Suite::robustness,
                  Suite::otr, Suite::distortion, Suite::claim, Suite::attempts})
    EXPECT_EQ(suite_from_string(to_string(s)), s);
  EXPECT_THROW(suite_from_string("nonsense"), DecodeError);
}

}  // namespace
}  // namespace mddw
