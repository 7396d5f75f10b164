/*
 * Copyright 2026 The Fairtrade Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fairtrade/bench.h"

#include <gtest/gtest.h>

namespace fairtrade::bench {
namespace {

TEST(BenchTest, SmallRunReportsReferenceCounts) {
  BenchOptions options;
  options.lq = {64, 128};
  options.runs = 3;
  BenchReport report = RunBench(options);
  ASSERT_EQ(report.rows.size(), 2u);
  EXPECT_EQ(report.runs, 3u);
  EXPECT_TRUE(report.ExpCountsMatchReference());
  for (const SizeRow& row : report.rows) {
    for (double ms : row.mean_ms) EXPECT_GT(ms, 0.0);
  }
  // |p| = lq + 1 bits, scalars lq bits, F = lq bits (l0 = l1 = lq / 2).
  EXPECT_EQ(report.rows[0].original_ct_bytes, 3u * 9 + 8 + 8);
  EXPECT_EQ(report.rows[0].transformed_ct_bytes, 9u + 8 + 9 + 9);
  EXPECT_EQ(report.rows[1].original_ct_bytes, 3u * 17 + 16 + 16);
  EXPECT_EQ(report.rows[1].transformed_ct_bytes, 17u + 16 + 17 + 17);
  EXPECT_EQ(report.rows[0].lq, 64u);
  std::string kv = report.ToKeyValue();
  EXPECT_NE(kv.find("lq=64"), std::string::npos);
  EXPECT_NE(report.ToTable().find("ReEncrypt"), std::string::npos);
}

TEST(BenchTest, MonotonicityCheck) {
  BenchReport report;
  report.rows.resize(2);
  report.rows[0].mean_ms.fill(1.0);
  report.rows[1].mean_ms.fill(2.0);
  EXPECT_TRUE(report.AllTimingsIncreasing());
  report.rows[1].mean_ms[3] = 1.0;
  EXPECT_FALSE(report.TimingStrictlyIncreasing(Algorithm::kVerifyReKey));
  EXPECT_TRUE(report.TimingStrictlyIncreasing(Algorithm::kEncrypt));
  EXPECT_FALSE(report.AllTimingsIncreasing());
}

}  // namespace
}  // namespace fairtrade::bench
