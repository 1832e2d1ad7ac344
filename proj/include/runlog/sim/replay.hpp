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
#include <vector>

#include "runlog/client/api_client.hpp"
#include "runlog/sim/generator.hpp"
#include "runlog/store/store.hpp"

namespace runlog::sim {

struct ReplayFailure {
  std::int64_t request = 0;  // 1-based position in the request sequence
  std::string operation;
  std::string message;
};

struct ReplayReport {
  std::int64_t requests = 0;
  std::vector<ReplayFailure> failures;
  std::chrono::milliseconds elapsed{0};
};

nlohmann::json to_json(const ReplayReport& report);

// Creates templates, fills, runs, passes and logs in that order. A failed
// request is recorded and its dependants are skipped. Error(kConnectionFailed)
// aborts the replay.
ReplayReport replay(const SimDataset& dataset, client::ApiClient& api);
ReplayReport replay(const SimDataset& dataset, store::Store& store, const ActorRef& actor);

}  // namespace runlog::sim
