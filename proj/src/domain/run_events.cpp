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

#include "runlog/domain/run_events.hpp"

#include "runlog/domain/errors.hpp"

namespace runlog {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Run apply_run_event(const Run& run, const RunEvent& event) {
  Run next = run;
  std::visit(
      Overloaded{
          [&](const EndRun& e) {
            if (run.state == RunState::kEnded)
              fail(ErrorCode::kInvalidTransition,
                   "run " + std::to_string(run.run_number) + " has already ended",
                   {{"run_number", run.run_number}, {"state", to_string(run.state)}});
            if (e.end_time < run.start_time)
              fail(ErrorCode::kInvalidTimestamps, "end_time precedes start_time",
                   {{"field", "end_time"}});
            next.state = RunState::kEnded;
            next.end_time = e.end_time;
          },
          [&](const SetQuality& e) { next.quality = e.quality; },
          [&](const AddTag& e) { next.tags.insert(e.tag); },
          [&](const RemoveTag& e) {
            if (next.tags.erase(e.tag) == 0)
              fail(ErrorCode::kNotFound,
                   "run " + std::to_string(run.run_number) + " has no tag '" + e.tag.value() + "'",
                   {{"tag", e.tag.value()}});
          },
      },
      event);
  return next;
}

std::optional<Millis> run_duration(const Run& run) {
  if (run.state != RunState::kEnded || !run.end_time) return std::nullopt;
  return *run.end_time - run.start_time;
}

bool is_pass_transition_allowed(PassStatus from, PassStatus to) {
  switch (from) {
    case PassStatus::kPending:
      return to == PassStatus::kRunning || to == PassStatus::kFailed;
    case PassStatus::kRunning:
      return to == PassStatus::kDone || to == PassStatus::kFailed;
    case PassStatus::kDone:
    case PassStatus::kFailed:
      return false;
  }
  return false;
}

ReconstructionPass apply_pass_status(const ReconstructionPass& pass, PassStatus next_status) {
  if (!is_pass_transition_allowed(pass.status, next_status))
    fail(ErrorCode::kInvalidTransition,
         std::string("pass cannot move from ") + std::string(to_string(pass.status)) + " to " +
             std::string(to_string(next_status)),
         {{"from", to_string(pass.status)}, {"to", to_string(next_status)}});
  ReconstructionPass next = pass;
  next.status = next_status;
  return next;
}

}  // namespace runlog
