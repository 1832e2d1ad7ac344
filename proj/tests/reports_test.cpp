/* Copyright 2026 The Runlog Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>

#include <random>

#include "runlog/reports/reports.hpp"
#include "support/fixtures.hpp"

namespace runlog::reports {
namespace {

using namespace std::chrono_literals;
using testing::ts;

const Timestamp kT0 = testing::ts("2024-03-01T00:00:00Z");

Run run_at(std::int64_t n, Timestamp start, std::optional<Millis> duration, std::optional<std::int64_t> fill) {
  Run r;
  r.run_number = n;
  r.start_time = start;
  r.fill_number = fill;
  if (duration) {
    r.state = RunState::kEnded;
    r.end_time = start + *duration;
  }
  return r;
}

TEST(Reports, BucketEdges) {
  EXPECT_EQ(bucket_for(0ms), 0u);
  EXPECT_EQ(bucket_for(10min - 1ms), 0u);
  EXPECT_EQ(bucket_for(10min), 1u);
  EXPECT_EQ(bucket_for(1h), 2u);
  EXPECT_EQ(bucket_for(6h), 3u);
  EXPECT_EQ(bucket_for(24h), 4u);
  EXPECT_EQ(bucket_for(24h * 30), 4u);
}

TEST(Reports, OneFillTwoRuns) {
  store::Snapshot snap;
  snap.fills.push_back({1, {}, {}, "", kT0});
  snap.runs.push_back(run_at(1, kT0 + 1h, 5min, 1));
  snap.runs.push_back(run_at(2, kT0 + 2h, 2h, 1));
  const auto r = overview(snap, kT0, kT0 + 24h);
  EXPECT_EQ(r.fill_count, 1);
  EXPECT_EQ(r.run_count, 2);
  EXPECT_DOUBLE_EQ(r.mean_runs_per_fill(), 2.0);
  const std::array<std::int64_t, kBucketCount> expected{1, 0, 1, 0, 0};
  EXPECT_EQ(r.duration_histogram, expected);
  const auto j = to_json(r);
  EXPECT_EQ(j.at("duration_histogram").at(0).at("bucket"), "<10min");
  EXPECT_EQ(j.at("duration_histogram").at(2).at("bucket"), "1-6h");
  EXPECT_EQ(j.at("mean_runs_per_fill"), 2.0);
}

TEST(Reports, RunsPerFillOrdersByCountThenFill) {
  store::Snapshot snap;
  int n = 0;
  for (int i = 0; i < 3; ++i) snap.runs.push_back(run_at(++n, kT0, std::nullopt, 7));
  snap.runs.push_back(run_at(++n, kT0, std::nullopt, 8));
  snap.runs.push_back(run_at(++n, kT0, std::nullopt, 9));
  snap.runs.push_back(run_at(++n, kT0, std::nullopt, std::nullopt));
  const auto rows = runs_per_fill(snap, kT0, kT0 + 1h);
  const std::vector<FillRunCount> expected{{7, 3}, {8, 1}, {9, 1}};
  EXPECT_EQ(rows, expected);
  EXPECT_EQ(to_csv(rows), "fill_number,run_count\n7,3\n8,1\n9,1\n");
}

TEST(Reports, RangeIsHalfOpen) {
  store::Snapshot snap;
  snap.runs.push_back(run_at(1, kT0, std::nullopt, std::nullopt));
  snap.runs.push_back(run_at(2, kT0 + 1h, std::nullopt, std::nullopt));
  snap.log_times = {kT0, kT0 + 1h};
  const auto r = overview(snap, kT0, kT0 + 1h);
  EXPECT_EQ(r.run_count, 1);
  EXPECT_EQ(r.log_count, 1);
  EXPECT_EQ(r.runs_without_fill, 1);
  EXPECT_DOUBLE_EQ(r.mean_runs_per_fill(), 0.0);
}

TEST(Reports, ReversedRangeIsInvalidQuery) {
  store::Snapshot snap;
  try {
    overview(snap, kT0 + 1h, kT0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidQuery);
  }
  EXPECT_THROW(runs_per_fill(snap, kT0 + 1h, kT0), Error);
}

TEST(Reports, CsvListsMetricsAndTags) {
  store::Snapshot snap;
  auto r = run_at(1, kT0, 30min, std::nullopt);
  r.tags = {Tag::make("tpc")};
  snap.runs.push_back(r);
  const auto csv = to_csv(overview(snap, kT0, kT0 + 1h));
  EXPECT_EQ(csv.rfind("metric,value\n", 0), 0u);
  EXPECT_NE(csv.find("run_count,1\n"), std::string::npos);
  EXPECT_NE(csv.find("duration:10-60min,1\n"), std::string::npos);
  EXPECT_NE(csv.find("tag:tpc,1\n"), std::string::npos);
}

store::Snapshot random_snapshot(std::mt19937_64& rng) {
  store::Snapshot snap;
  const auto fills = testing::pick(rng, 0, 8);
  for (int f = 1; f <= fills; ++f) snap.fills.push_back({f, {}, {}, "", kT0 + std::chrono::hours(f)});
  const auto runs = testing::pick(rng, 0, 60);
  for (int i = 1; i <= runs; ++i) {
    std::optional<std::int64_t> fill;
    if (fills > 0 && testing::coin(rng, 0.8)) fill = testing::pick(rng, 1, fills);
    std::optional<Millis> d;
    if (testing::coin(rng, 0.7)) d = Millis(testing::pick(rng, 0, 48LL * 3600 * 1000));
    auto r = run_at(i, kT0 + std::chrono::minutes(testing::pick(rng, 0, 14 * 24 * 60)), d, fill);
    for (const auto& t : testing::kTagPool)
      if (testing::coin(rng, 0.2)) r.tags.insert(Tag::make(t));
    snap.runs.push_back(r);
  }
  return snap;
}

TEST(ReportsProperty, CountsAreConservedAndMonotonic) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const auto snap = random_snapshot(rng);
    const auto a = kT0 + std::chrono::minutes(testing::pick(rng, 0, 7 * 24 * 60));
    const auto b = a + std::chrono::minutes(testing::pick(rng, 0, 7 * 24 * 60));
    const auto c = b + std::chrono::minutes(testing::pick(rng, 0, 7 * 24 * 60));
    const auto inner = overview(snap, a, b);
    const auto outer = overview(snap, a, c);
    const auto rest = overview(snap, b, c);

    // Independent count of runs starting in [a, b).
    std::int64_t expected = 0, with_fill = 0, ended = 0;
    std::set<std::int64_t> fills;
    for (const auto& r : snap.runs) {
      if (r.start_time < a || r.start_time >= b) continue;
      ++expected;
      if (r.end_time) ++ended;
      if (r.fill_number) {
        ++with_fill;
        fills.insert(*r.fill_number);
      }
    }
    ASSERT_EQ(inner.run_count, expected);
    ASSERT_EQ(inner.runs_with_fill + inner.runs_without_fill, inner.run_count);
    ASSERT_EQ(inner.fills_with_runs, static_cast<std::int64_t>(fills.size()));
    if (!fills.empty()) {
      ASSERT_DOUBLE_EQ(inner.mean_runs_per_fill(), static_cast<double>(with_fill) / fills.size());
    }
    std::int64_t histogram_total = 0;
    for (const auto n : inner.duration_histogram) histogram_total += n;
    ASSERT_EQ(histogram_total, ended);

    ASSERT_EQ(inner.run_count + rest.run_count, outer.run_count);
    ASSERT_LE(inner.fill_count, outer.fill_count);
    for (std::size_t i = 0; i < kBucketCount; ++i)
      ASSERT_EQ(inner.duration_histogram[i] + rest.duration_histogram[i], outer.duration_histogram[i]);
    for (const auto& [tag, n] : inner.tag_frequency) ASSERT_LE(n, outer.tag_frequency.at(tag));

    const auto rows = runs_per_fill(snap, a, b);
    std::int64_t row_total = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      row_total += rows[i].run_count;
      if (i > 0) {
        ASSERT_TRUE(rows[i - 1].run_count > rows[i].run_count ||
                    (rows[i - 1].run_count == rows[i].run_count && rows[i - 1].fill_number < rows[i].fill_number));
      }
    }
    ASSERT_EQ(row_total, inner.runs_with_fill);
    ASSERT_EQ(static_cast<std::int64_t>(rows.size()), inner.fills_with_runs);
  }
}

}  // namespace
}  // namespace runlog::reports
