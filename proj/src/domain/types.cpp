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

#include "runlog/domain/types.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <utility>

#include "runlog/domain/errors.hpp"

namespace runlog {

namespace {

template <typename E, std::size_t N>
using NameTable = std::array<std::pair<E, std::string_view>, N>;

constexpr NameTable<RunType, 4> kRunTypeNames{{
    {RunType::kGlobal, "GLOBAL"},
    {RunType::kDetectorCalibration, "DETECTOR_CALIBRATION"},
    {RunType::kCosmics, "COSMICS"},
    {RunType::kTechnical, "TECHNICAL"},
}};
constexpr NameTable<RunState, 2> kRunStateNames{{
    {RunState::kOngoing, "ONGOING"},
    {RunState::kEnded, "ENDED"},
}};
constexpr NameTable<Quality, 3> kQualityNames{{
    {Quality::kUnknown, "UNKNOWN"},
    {Quality::kGood, "GOOD"},
    {Quality::kBad, "BAD"},
}};
constexpr NameTable<PassStatus, 4> kPassStatusNames{{
    {PassStatus::kPending, "PENDING"},
    {PassStatus::kRunning, "RUNNING"},
    {PassStatus::kDone, "DONE"},
    {PassStatus::kFailed, "FAILED"},
}};
constexpr NameTable<Origin, 2> kOriginNames{{
    {Origin::kHuman, "HUMAN"},
    {Origin::kProcess, "PROCESS"},
}};
constexpr NameTable<Role, 5> kRoleNames{{
    {Role::kShifter, "SHIFTER"},
    {Role::kRunCoordinator, "RUN_COORDINATOR"},
    {Role::kManager, "MANAGER"},
    {Role::kPhysicist, "PHYSICIST"},
    {Role::kMachine, "MACHINE"},
}};
constexpr NameTable<EntityKind, 5> kEntityKindNames{{
    {EntityKind::kRun, "RUN"},
    {EntityKind::kFill, "FILL"},
    {EntityKind::kPass, "PASS"},
    {EntityKind::kLog, "LOG"},
    {EntityKind::kTemplate, "TEMPLATE"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const NameTable<E, N>& table, E value) {
  for (const auto& [v, name] : table)
    if (v == value) return name;
  return "?";
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) ==
                  std::toupper(static_cast<unsigned char>(y));
         });
}

template <typename E, std::size_t N>
E value_of(const NameTable<E, N>& table, std::string_view text, std::string_view what) {
  for (const auto& [v, name] : table)
    if (iequals(name, text)) return v;
  fail(ErrorCode::kInvalid, "unknown " + std::string(what) + " '" + std::string(text) + "'",
       {{"field", std::string(what)}, {"value", std::string(text)}});
}

template <typename E, std::size_t N>
std::vector<E> values_of(const NameTable<E, N>& table) {
  std::vector<E> out;
  for (const auto& [v, name] : table) out.push_back(v);
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(RunType v) { return name_of(kRunTypeNames, v); }
std::string_view to_string(RunState v) { return name_of(kRunStateNames, v); }
std::string_view to_string(Quality v) { return name_of(kQualityNames, v); }
std::string_view to_string(PassStatus v) { return name_of(kPassStatusNames, v); }
std::string_view to_string(Origin v) { return name_of(kOriginNames, v); }
std::string_view to_string(Role v) { return name_of(kRoleNames, v); }
std::string_view to_string(EntityKind v) { return name_of(kEntityKindNames, v); }

template <> RunType parse_enum<RunType>(std::string_view t) { return value_of(kRunTypeNames, t, "run_type"); }
template <> RunState parse_enum<RunState>(std::string_view t) { return value_of(kRunStateNames, t, "state"); }
template <> Quality parse_enum<Quality>(std::string_view t) { return value_of(kQualityNames, t, "quality"); }
template <> PassStatus parse_enum<PassStatus>(std::string_view t) { return value_of(kPassStatusNames, t, "status"); }
template <> Origin parse_enum<Origin>(std::string_view t) { return value_of(kOriginNames, t, "origin"); }
template <> Role parse_enum<Role>(std::string_view t) { return value_of(kRoleNames, t, "role"); }
template <> EntityKind parse_enum<EntityKind>(std::string_view t) { return value_of(kEntityKindNames, t, "kind"); }

template <> const std::vector<RunType>& all_values<RunType>() { static const auto v = values_of(kRunTypeNames); return v; }
template <> const std::vector<RunState>& all_values<RunState>() { static const auto v = values_of(kRunStateNames); return v; }
template <> const std::vector<Quality>& all_values<Quality>() { static const auto v = values_of(kQualityNames); return v; }
template <> const std::vector<PassStatus>& all_values<PassStatus>() { static const auto v = values_of(kPassStatusNames); return v; }
template <> const std::vector<Origin>& all_values<Origin>() { static const auto v = values_of(kOriginNames); return v; }
template <> const std::vector<Role>& all_values<Role>() { static const auto v = values_of(kRoleNames); return v; }
template <> const std::vector<EntityKind>& all_values<EntityKind>() { static const auto v = values_of(kEntityKindNames); return v; }

Tag Tag::make(std::string_view raw) {
  std::string value(trim(raw));
  std::transform(value.begin(), value.end(), value.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

  const auto head_ok = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
  };
  const auto tail_ok = [&](char c) { return head_ok(c) || c == '.' || c == '_' || c == '-'; };

  if (value.empty() || value.size() > 64 || !head_ok(value.front()) ||
      !std::all_of(value.begin() + 1, value.end(), tail_ok)) {
    fail(ErrorCode::kInvalid, "invalid tag '" + std::string(raw) + "'",
         {{"field", "tag"}, {"value", std::string(raw)}});
  }
  return Tag(std::move(value));
}

std::string to_string(const EntityRef& ref) {
  return std::string(to_string(ref.kind)) + ":" + std::to_string(ref.id);
}

EntityRef parse_entity_ref(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    fail(ErrorCode::kInvalid, "entity reference must look like KIND:ID",
         {{"value", std::string(text)}});
  EntityRef ref;
  ref.kind = parse_enum<EntityKind>(text.substr(0, colon));
  const auto digits = text.substr(colon + 1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), ref.id);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || ref.id <= 0)
    fail(ErrorCode::kInvalid, "entity reference id must be a positive integer",
         {{"value", std::string(text)}});
  return ref;
}

void validate(const ActorRef& actor) {
  if (actor.actor_id.empty()) fail(ErrorCode::kInvalid, "actor_id must not be empty", {{"field", "actor_id"}});
}

void validate(const LhcFill& fill) {
  if (fill.fill_number <= 0)
    fail(ErrorCode::kInvalid, "fill_number must be positive", {{"field", "fill_number"}});
  if (fill.stable_beams_start && fill.stable_beams_end &&
      *fill.stable_beams_start > *fill.stable_beams_end)
    fail(ErrorCode::kInvalidTimestamps, "stable beams start is after stable beams end",
         {{"field", "stable_beams_end"}});
}

void validate(const Run& run) {
  if (run.run_number <= 0)
    fail(ErrorCode::kInvalid, "run_number must be positive", {{"field", "run_number"}});
  if (run.state == RunState::kEnded) {
    if (!run.end_time)
      fail(ErrorCode::kInvalid, "an ended run needs an end_time", {{"field", "end_time"}});
    if (*run.end_time < run.start_time)
      fail(ErrorCode::kInvalidTimestamps, "end_time precedes start_time", {{"field", "end_time"}});
  } else if (run.end_time) {
    fail(ErrorCode::kInvalid, "an ongoing run has no end_time", {{"field", "end_time"}});
  }
  if (run.fill_number && *run.fill_number <= 0)
    fail(ErrorCode::kInvalid, "fill_number must be positive", {{"field", "fill_number"}});
}

void validate(const ReconstructionPass& pass) {
  if (pass.pass_id <= 0)
    fail(ErrorCode::kInvalid, "pass_id must be positive", {{"field", "pass_id"}});
  if (pass.input.kind != EntityKind::kRun && pass.input.kind != EntityKind::kPass)
    fail(ErrorCode::kInvalid, "pass input must reference a RUN or a PASS", {{"field", "input"}});
  if (pass.input.id <= 0)
    fail(ErrorCode::kInvalid, "pass input id must be positive", {{"field", "input"}});
  if (pass.input.kind == EntityKind::kPass && pass.input.id >= pass.pass_id)
    fail(ErrorCode::kInvalid, "pass input must be an earlier pass", {{"field", "input"}});
}

void validate(const LogEntry& log) {
  if (log.log_id <= 0) fail(ErrorCode::kInvalid, "log_id must be positive", {{"field", "log_id"}});
  validate(log.author);
  for (const auto& ref : log.associations) {
    if (ref.kind != EntityKind::kRun && ref.kind != EntityKind::kFill && ref.kind != EntityKind::kPass)
      fail(ErrorCode::kInvalid, "log associations must reference a RUN, FILL or PASS",
           {{"field", "associations"}});
  }
  if (log.revisions.empty())
    fail(ErrorCode::kInvalid, "a log entry carries at least its creation revision", {{"field", "revisions"}});
  for (std::size_t i = 0; i < log.revisions.size(); ++i) {
    if (log.revisions[i].revision_index != static_cast<std::int64_t>(i))
      fail(ErrorCode::kInvalid, "revision indices must be contiguous from 0", {{"field", "revisions"}});
  }
  if (log.revisions.back().title != log.title || log.revisions.back().body != log.body)
    fail(ErrorCode::kInvalid, "current content must equal the last revision", {{"field", "revisions"}});
}

bool is_hex_digest(std::string_view text) {
  return text.size() == 64 && std::all_of(text.begin(), text.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

}  // namespace runlog
