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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "runlog/domain/types.hpp"

namespace runlog {

// Closed interval [min, max].
template <typename T>
struct Range {
  T min;
  T max;

  bool contains(const T& v) const { return !(v < min) && !(max < v); }
  bool operator==(const Range&) const = default;
};

// Each absent filter matches everything; present filters are ANDed.
struct RunQuery {
  std::optional<Range<std::int64_t>> run_number_range;
  std::optional<Range<Timestamp>> time_range;  // on start_time
  std::optional<std::set<RunType>> run_types;
  std::optional<std::set<Quality>> qualities;
  std::optional<std::int64_t> fill_number;
  std::optional<TagSet> tags_all;
  std::optional<std::set<RunState>> states;

  bool operator==(const RunQuery&) const = default;
};

struct LogQuery {
  // Every token must occur, case-insensitively, in title + " " + body.
  std::optional<std::vector<std::string>> text;
  std::optional<TagSet> tags_all;
  std::optional<std::string> author;  // actor_id
  std::optional<EntityRef> association;
  std::optional<Range<Timestamp>> time_range;  // on created_at

  bool operator==(const LogQuery&) const = default;
};

// Reversed ranges are Error(kInvalidQuery).
void validate(const RunQuery& q);
void validate(const LogQuery& q);

bool match_run(const Run& run, const RunQuery& q);
bool match_log(const LogEntry& log, const LogQuery& q);

// Splits on ASCII whitespace, dropping empty tokens.
std::vector<std::string> split_tokens(std::string_view text);

}  // namespace runlog
