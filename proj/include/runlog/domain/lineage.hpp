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

#include <functional>
#include <optional>
#include <vector>

#include "runlog/domain/types.hpp"

namespace runlog {

using EntityResolver = std::function<std::optional<Entity>(const EntityRef&)>;

// Walks a pass's input chain back to its root run. The result starts with
// {PASS, pass_id} and ends with a RUN ref.
//   dangling reference                      -> Error(kBrokenLineage)
//   revisited node or non-RUN/PASS input    -> Error(kCorruptLineage)
std::vector<EntityRef> resolve_lineage(std::int64_t pass_id, const EntityResolver& lookup);

}  // namespace runlog
