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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "runlog/domain/time.hpp"

namespace runlog {

enum class RunType { kGlobal, kDetectorCalibration, kCosmics, kTechnical };
enum class RunState { kOngoing, kEnded };
enum class Quality { kUnknown, kGood, kBad };
enum class PassStatus { kPending, kRunning, kDone, kFailed };
enum class Origin { kHuman, kProcess };
enum class Role { kShifter, kRunCoordinator, kManager, kPhysicist, kMachine };

// TEMPLATE only appears as an audit target; associations never use it.
enum class EntityKind { kRun, kFill, kPass, kLog, kTemplate };

// Wire names are the upper-case enumerator spellings, e.g. "DETECTOR_CALIBRATION".
std::string_view to_string(RunType v);
std::string_view to_string(RunState v);
std::string_view to_string(Quality v);
std::string_view to_string(PassStatus v);
std::string_view to_string(Origin v);
std::string_view to_string(Role v);
std::string_view to_string(EntityKind v);

// Parsers accept the wire name case-insensitively; throw Error(kInvalid).
template <typename E>
E parse_enum(std::string_view text);

template <typename E>
const std::vector<E>& all_values();

#define RUNLOG_DECLARE_ENUM(E)                    \
  template <> E parse_enum<E>(std::string_view); \
  template <> const std::vector<E>& all_values<E>();
RUNLOG_DECLARE_ENUM(RunType)
RUNLOG_DECLARE_ENUM(RunState)
RUNLOG_DECLARE_ENUM(Quality)
RUNLOG_DECLARE_ENUM(PassStatus)
RUNLOG_DECLARE_ENUM(Origin)
RUNLOG_DECLARE_ENUM(Role)
RUNLOG_DECLARE_ENUM(EntityKind)
#undef RUNLOG_DECLARE_ENUM

// A normalized label: trimmed, lowercased, `[a-z0-9][a-z0-9._-]{0,63}`.
class Tag {
 public:
  // Normalizes then validates; throws Error(kInvalid) on an illegal value.
  static Tag make(std::string_view raw);

  const std::string& value() const noexcept { return value_; }

  auto operator<=>(const Tag&) const = default;

 private:
  explicit Tag(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

using TagSet = std::set<Tag>;
using Configuration = std::map<std::string, std::string>;

struct EntityRef {
  EntityKind kind = EntityKind::kRun;
  std::int64_t id = 0;

  auto operator<=>(const EntityRef&) const = default;
};

// "RUN:5"
std::string to_string(const EntityRef& ref);
EntityRef parse_entity_ref(std::string_view text);

struct ActorRef {
  std::string actor_id;
  Role role = Role::kShifter;

  bool operator==(const ActorRef&) const = default;
};

struct LhcFill {
  std::int64_t fill_number = 0;
  std::optional<Timestamp> stable_beams_start;
  std::optional<Timestamp> stable_beams_end;
  std::string beam_type;
  Timestamp created_at;

  bool operator==(const LhcFill&) const = default;
};

struct Run {
  std::int64_t run_number = 0;
  RunType run_type = RunType::kGlobal;
  RunState state = RunState::kOngoing;
  Timestamp start_time;
  std::optional<Timestamp> end_time;
  std::optional<std::int64_t> fill_number;
  Configuration configuration;
  Quality quality = Quality::kUnknown;
  TagSet tags;

  std::string data_set_id() const { return "run-" + std::to_string(run_number); }

  bool operator==(const Run&) const = default;
};

struct ReconstructionPass {
  std::int64_t pass_id = 0;
  std::string name;
  EntityRef input;
  Configuration configuration;
  PassStatus status = PassStatus::kPending;
  Timestamp created_at;

  bool operator==(const ReconstructionPass&) const = default;
};

struct Attachment {
  std::string digest;  // 64 lowercase hex chars
  std::string filename;
  std::string media_type;
  std::uint64_t size_bytes = 0;

  bool operator==(const Attachment&) const = default;
};

struct Revision {
  std::int64_t revision_index = 0;
  std::string title;
  std::string body;
  ActorRef edited_by;
  Timestamp edited_at;

  bool operator==(const Revision&) const = default;
};

struct LogEntry {
  std::int64_t log_id = 0;
  std::string title;
  std::string body;
  ActorRef author;
  Origin origin = Origin::kHuman;
  Timestamp created_at;
  std::vector<EntityRef> associations;
  TagSet tags;
  std::vector<Attachment> attachments;
  std::vector<Revision> revisions;  // earliest first; back() is the current content

  bool operator==(const LogEntry&) const = default;
};

struct Template {
  std::int64_t template_id = 0;
  std::string name;
  std::string title_pattern;
  std::string body_pattern;
  std::set<std::string> required_fields;
  TagSet default_tags;

  bool operator==(const Template&) const = default;
};

using Entity = std::variant<LhcFill, Run, ReconstructionPass, LogEntry>;

// Invariant checks. Each throws Error(kInvalid) or Error(kInvalidTimestamps).
void validate(const LhcFill& fill);
void validate(const Run& run);
void validate(const ReconstructionPass& pass);
void validate(const LogEntry& log);
void validate(const ActorRef& actor);

bool is_hex_digest(std::string_view text);

}  // namespace runlog
