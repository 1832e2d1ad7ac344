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
#include <variant>

#include "runlog/domain/types.hpp"

namespace runlog {

struct EndRun {
  Timestamp end_time;
};
struct SetQuality {
  Quality quality = Quality::kUnknown;
};
struct AddTag {
  Tag tag;
};
struct RemoveTag {
  Tag tag;
};

using RunEvent = std::variant<EndRun, SetQuality, AddTag, RemoveTag>;

// Returns the run after `event`. END is accepted once; the other events apply
// in either state.
//   END on an ended run        -> Error(kInvalidTransition)
//   END before start_time      -> Error(kInvalidTimestamps)
//   REMOVE_TAG of an absent tag -> Error(kNotFound)
Run apply_run_event(const Run& run, const RunEvent& event);

// end_time - start_time for ended runs.
std::optional<Millis> run_duration(const Run& run);

// PENDING -> RUNNING | FAILED, RUNNING -> DONE | FAILED. DONE and FAILED are
// terminal; anything else is Error(kInvalidTransition).
ReconstructionPass apply_pass_status(const ReconstructionPass& pass, PassStatus next);
bool is_pass_transition_allowed(PassStatus from, PassStatus to);

}  // namespace runlog
