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

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "runlog/client/transport.hpp"
#include "runlog/service/config.hpp"

namespace runlog::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

struct CliConfig {
  std::string endpoint = "http://127.0.0.1:8080";
  std::optional<std::string> token;
  std::string output = "table";  // table | raw
};

// ~/.config/runlog/config, resolved through HOME.
std::optional<std::filesystem::path> default_config_path(const service::EnvLookup& env);

// Reads `key = value` lines (endpoint, token, output; '#' starts a comment)
// when the file exists, then applies RUNLOG_ENDPOINT and RUNLOG_TOKEN.
// Throws Error(kInvalid) for unknown keys or malformed values.
CliConfig load_cli_config(const std::optional<std::filesystem::path>& file, const service::EnvLookup& env);

using TransportFactory = std::function<std::unique_ptr<client::Transport>(const std::string& endpoint)>;

struct CliEnv {
  std::ostream& out;
  std::ostream& err;
  service::EnvLookup env = service::process_env;
  // Defaults to HttpTransport.
  TransportFactory transport;
};

// Exit codes: 0 success, 1 domain error, 2 usage error.
int run(int argc, const char* const* argv, CliEnv& env);

}  // namespace runlog::cli
