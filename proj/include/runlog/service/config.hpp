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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "runlog/domain/types.hpp"

namespace runlog::service {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string store_path = "runlog.db";
  std::uint64_t max_upload_bytes = 64ull * 1024 * 1024;
  bool durable_commits = true;
  std::map<std::string, ActorRef> tokens;  // bearer token -> actor
};

// Parses "host:port"; throws Error(kInvalid).
std::pair<std::string, int> parse_listen(const std::string& listen);

// JSON config file:
//   {"listen": "127.0.0.1:8080", "store": "runlog.db", "max_upload_bytes": 67108864,
//    "durable_commits": true,
//    "tokens": [{"token": "...", "actor_id": "shifter-a", "role": "SHIFTER"}]}
ServiceConfig load_config(const std::filesystem::path& path);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
std::optional<std::string> process_env(const std::string& name);

// RUNLOG_LISTEN and RUNLOG_STORE override the file.
void apply_env_overrides(ServiceConfig& config, const EnvLookup& env = process_env);

// Loads `path`, or the file named by RUNLOG_CONFIG when `path` is empty, then
// applies env overrides. With neither, starts from defaults.
ServiceConfig resolve_config(const std::optional<std::filesystem::path>& path,
                             const EnvLookup& env = process_env);

}  // namespace runlog::service
