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

#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "runlog/store/store.hpp"

namespace runlog::reports {

inline constexpr std::size_t kBucketCount = 5;

// Run-duration buckets: [0,10m) [10m,1h) [1h,6h) [6h,24h) [24h,inf).
const std::array<std::string_view, kBucketCount>& bucket_labels();
std::size_t bucket_for(Millis duration);

struct OverviewReport {
  Timestamp from;
  Timestamp to;
  std::int64_t fill_count = 0;
  std::int64_t run_count = 0;
  std::int64_t log_count = 0;
  std::int64_t pass_count = 0;
  // mean_runs_per_fill = runs_with_fill / fills_with_runs; 0 when no fill has runs.
  std::int64_t runs_with_fill = 0;
  std::int64_t fills_with_runs = 0;
  std::int64_t runs_without_fill = 0;
  std::array<std::int64_t, kBucketCount> duration_histogram{};
  std::map<std::string, std::int64_t> tag_frequency;

  double mean_runs_per_fill() const;
  bool operator==(const OverviewReport&) const = default;
};

struct FillRunCount {
  std::int64_t fill_number = 0;
  std::int64_t run_count = 0;

  bool operator==(const FillRunCount&) const = default;
};

// Entities count when their start_time (runs) or created_at (everything else)
// lies in [from, to). from > to is Error(kInvalidQuery).
OverviewReport overview(const store::Snapshot& snap, Timestamp from, Timestamp to);

// One row per fill with at least one run in range, run_count descending,
// then fill_number ascending.
std::vector<FillRunCount> runs_per_fill(const store::Snapshot& snap, Timestamp from, Timestamp to);

nlohmann::json to_json(const OverviewReport& report);
nlohmann::json to_json(const std::vector<FillRunCount>& rows);
std::string to_csv(const OverviewReport& report);
std::string to_csv(const std::vector<FillRunCount>& rows);

}  // namespace runlog::reports
