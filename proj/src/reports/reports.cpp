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

#include "runlog/reports/reports.hpp"

#include <algorithm>
#include <sstream>

#include "runlog/domain/errors.hpp"

namespace runlog::reports {

namespace {

using namespace std::chrono_literals;

constexpr std::array<Millis, kBucketCount - 1> kUpperEdges{10min, 60min, 6h, 24h};

void check_range(Timestamp from, Timestamp to) {
  if (to < from)
    fail(ErrorCode::kInvalidQuery, "report range is reversed: from is after to", {{"field", "from"}});
}

bool in_range(Timestamp t, Timestamp from, Timestamp to) { return from <= t && t < to; }

}  // namespace

const std::array<std::string_view, kBucketCount>& bucket_labels() {
  static constexpr std::array<std::string_view, kBucketCount> kLabels{"<10min", "10-60min", "1-6h",
                                                                      "6-24h", ">=24h"};
  return kLabels;
}

std::size_t bucket_for(Millis duration) {
  std::size_t i = 0;
  while (i < kUpperEdges.size() && duration >= kUpperEdges[i]) ++i;
  return i;
}

double OverviewReport::mean_runs_per_fill() const {
  if (fills_with_runs == 0) return 0.0;
  return static_cast<double>(runs_with_fill) / static_cast<double>(fills_with_runs);
}

OverviewReport overview(const store::Snapshot& snap, Timestamp from, Timestamp to) {
  check_range(from, to);
  OverviewReport r;
  r.from = from;
  r.to = to;
  r.fill_count = std::count_if(snap.fills.begin(), snap.fills.end(),
                               [&](const LhcFill& f) { return in_range(f.created_at, from, to); });
  r.pass_count = std::count_if(snap.pass_times.begin(), snap.pass_times.end(),
                               [&](Timestamp t) { return in_range(t, from, to); });
  r.log_count = std::count_if(snap.log_times.begin(), snap.log_times.end(),
                              [&](Timestamp t) { return in_range(t, from, to); });

  std::set<std::int64_t> fills_seen;
  for (const auto& run : snap.runs) {
    if (!in_range(run.start_time, from, to)) continue;
    ++r.run_count;
    if (run.fill_number) {
      ++r.runs_with_fill;
      fills_seen.insert(*run.fill_number);
    } else {
      ++r.runs_without_fill;
    }
    if (const auto d = run_duration(run)) ++r.duration_histogram[bucket_for(*d)];
    for (const auto& tag : run.tags) ++r.tag_frequency[tag.value()];
  }
  r.fills_with_runs = static_cast<std::int64_t>(fills_seen.size());
  return r;
}

std::vector<FillRunCount> runs_per_fill(const store::Snapshot& snap, Timestamp from, Timestamp to) {
  check_range(from, to);
  std::map<std::int64_t, std::int64_t> counts;
  for (const auto& run : snap.runs) {
    if (run.fill_number && in_range(run.start_time, from, to)) ++counts[*run.fill_number];
  }
  std::vector<FillRunCount> rows;
  rows.reserve(counts.size());
  for (const auto& [fill, n] : counts) rows.push_back({fill, n});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const FillRunCount& a, const FillRunCount& b) { return a.run_count > b.run_count; });
  return rows;
}

nlohmann::json to_json(const OverviewReport& r) {
  nlohmann::json histogram = nlohmann::json::array();
  for (std::size_t i = 0; i < kBucketCount; ++i)
    histogram.push_back({{"bucket", bucket_labels()[i]}, {"count", r.duration_histogram[i]}});
  return {{"time_range", {{"from", format_timestamp(r.from)}, {"to", format_timestamp(r.to)}}},
          {"fill_count", r.fill_count},
          {"run_count", r.run_count},
          {"log_count", r.log_count},
          {"pass_count", r.pass_count},
          {"mean_runs_per_fill", r.mean_runs_per_fill()},
          {"runs_with_fill", r.runs_with_fill},
          {"fills_with_runs", r.fills_with_runs},
          {"runs_without_fill", r.runs_without_fill},
          {"duration_histogram", histogram},
          {"tag_frequency", r.tag_frequency}};
}

nlohmann::json to_json(const std::vector<FillRunCount>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) out.push_back({{"fill_number", row.fill_number}, {"run_count", row.run_count}});
  return out;
}

std::string to_csv(const OverviewReport& r) {
  std::ostringstream out;
  out << "metric,value\n"
      << "from," << format_timestamp(r.from) << '\n'
      << "to," << format_timestamp(r.to) << '\n'
      << "fill_count," << r.fill_count << '\n'
      << "run_count," << r.run_count << '\n'
      << "log_count," << r.log_count << '\n'
      << "pass_count," << r.pass_count << '\n'
      << "mean_runs_per_fill," << r.mean_runs_per_fill() << '\n'
      << "runs_without_fill," << r.runs_without_fill << '\n';
  for (std::size_t i = 0; i < kBucketCount; ++i)
    out << "duration:" << bucket_labels()[i] << ',' << r.duration_histogram[i] << '\n';
  for (const auto& [tag, n] : r.tag_frequency) out << "tag:" << tag << ',' << n << '\n';
  return out.str();
}

std::string to_csv(const std::vector<FillRunCount>& rows) {
  std::ostringstream out;
  out << "fill_number,run_count\n";
  for (const auto& row : rows) out << row.fill_number << ',' << row.run_count << '\n';
  return out.str();
}

}  // namespace runlog::reports
