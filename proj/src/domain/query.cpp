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

#include "runlog/domain/query.hpp"

#include <algorithm>
#include <cctype>

#include "runlog/domain/errors.hpp"

namespace runlog {

namespace {

template <typename T>
void check_range(const std::optional<Range<T>>& r, const char* name) {
  if (r && r->max < r->min)
    fail(ErrorCode::kInvalidQuery, std::string(name) + ": min is greater than max", {{"field", name}});
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

template <typename T>
bool in_set(const std::optional<std::set<T>>& allowed, const T& v) {
  return !allowed || allowed->contains(v);
}

bool has_all(const TagSet& have, const std::optional<TagSet>& want) {
  return !want || std::includes(have.begin(), have.end(), want->begin(), want->end());
}

}  // namespace

void validate(const RunQuery& q) {
  check_range(q.run_number_range, "run_number_range");
  check_range(q.time_range, "time_range");
}

void validate(const LogQuery& q) { check_range(q.time_range, "time_range"); }

bool match_run(const Run& run, const RunQuery& q) {
  validate(q);
  if (q.run_number_range && !q.run_number_range->contains(run.run_number)) return false;
  if (q.time_range && !q.time_range->contains(run.start_time)) return false;
  if (!in_set(q.run_types, run.run_type)) return false;
  if (!in_set(q.qualities, run.quality)) return false;
  if (!in_set(q.states, run.state)) return false;
  if (q.fill_number && run.fill_number != q.fill_number) return false;
  return has_all(run.tags, q.tags_all);
}

bool match_log(const LogEntry& log, const LogQuery& q) {
  validate(q);
  if (q.time_range && !q.time_range->contains(log.created_at)) return false;
  if (q.author && log.author.actor_id != *q.author) return false;
  if (q.association &&
      std::find(log.associations.begin(), log.associations.end(), *q.association) ==
          log.associations.end())
    return false;
  if (!has_all(log.tags, q.tags_all)) return false;
  if (q.text) {
    const auto haystack = lower(log.title + " " + log.body);
    for (const auto& token : *q.text) {
      if (haystack.find(lower(token)) == std::string::npos) return false;
    }
  }
  return true;
}

std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const auto start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

}  // namespace runlog
