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

#include <chrono>
#include <string>
#include <string_view>

namespace runlog {

// All timestamps are UTC with millisecond precision.
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;
using Millis = std::chrono::milliseconds;

// Renders `YYYY-MM-DDTHH:MM:SS.mmmZ`.
std::string format_timestamp(Timestamp ts);

// Accepts RFC 3339 date-times: `2021-01-01T00:00:00Z`,
// `2021-01-01T00:00:00.5+02:00`, lowercase `t`/`z`. Sub-millisecond digits
// are truncated. Throws Error(kInvalid) on anything else.
Timestamp parse_timestamp(std::string_view text);

Timestamp from_unix_millis(std::int64_t ms);
std::int64_t to_unix_millis(Timestamp ts);

Timestamp now_utc();

// Bounds used when a time range is left open.
Timestamp min_timestamp();
Timestamp max_timestamp();

}  // namespace runlog
