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

#include "runlog/domain/lineage.hpp"

#include <set>

#include "runlog/domain/errors.hpp"

namespace runlog {

std::vector<EntityRef> resolve_lineage(std::int64_t pass_id, const EntityResolver& lookup) {
  std::vector<EntityRef> chain;
  std::set<EntityRef> visited;
  EntityRef cursor{EntityKind::kPass, pass_id};

  while (true) {
    if (!visited.insert(cursor).second)
      fail(ErrorCode::kCorruptLineage, "lineage cycle through " + to_string(cursor),
           {{"ref", to_string(cursor)}});
    chain.push_back(cursor);

    const auto entity = lookup(cursor);
    if (!entity)
      fail(ErrorCode::kBrokenLineage, "lineage references missing " + to_string(cursor),
           {{"ref", to_string(cursor)}});

    if (cursor.kind == EntityKind::kRun) {
      if (!std::holds_alternative<Run>(*entity))
        fail(ErrorCode::kCorruptLineage, "resolver returned a non-run for " + to_string(cursor));
      return chain;
    }
    const auto* pass = std::get_if<ReconstructionPass>(&*entity);
    if (pass == nullptr)
      fail(ErrorCode::kCorruptLineage, "resolver returned a non-pass for " + to_string(cursor));
    if (pass->input.kind != EntityKind::kRun && pass->input.kind != EntityKind::kPass)
      fail(ErrorCode::kCorruptLineage,
           "pass " + std::to_string(pass->pass_id) + " has input " + to_string(pass->input),
           {{"ref", to_string(pass->input)}});
    cursor = pass->input;
  }
}

}  // namespace runlog
