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

#include <atomic>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "runlog/client/api_client.hpp"
#include "runlog/service/service.hpp"
#include "runlog/store/store.hpp"

namespace runlog::testing {

inline const ActorRef kShifter{"alice", Role::kShifter};
inline const ActorRef kPhysicist{"bob", Role::kPhysicist};
inline const ActorRef kMachine{"detector", Role::kMachine};
inline constexpr const char* kShifterToken = "shifter-token";
inline constexpr const char* kPhysicistToken = "physicist-token";
inline constexpr const char* kMachineToken = "machine-token";

Timestamp ts(std::string_view text);

// Returns start, start + step, start + 2 * step, ... Thread-safe.
store::Clock stepping_clock(Timestamp start, Millis step = std::chrono::seconds(1));

store::StoreOptions memory_options();

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

service::ServiceConfig test_service_config();

// Store + service + in-process recording client. Every exchange made through
// `api` or `send` is kept for schema checks.
class Harness {
 public:
  explicit Harness(store::StoreOptions options = memory_options());

  store::Store& store() { return *store_; }
  service::Service& service() { return *service_; }
  client::ApiClient& api() { return *api_; }
  client::ApiClient client_for(const char* token) { return client::ApiClient(recorder_, std::string(token)); }
  client::RecordingTransport& recorder() { return recorder_; }
  const client::RecordingTransport& recorder() const { return recorder_; }

  api::Response send(const std::string& method, const std::string& path, const nlohmann::json& body = nullptr,
                     const std::optional<std::string>& token = std::string(kMachineToken), api::Params query = {});

  // Problems found by validating every recorded exchange against the served
  // OpenAPI document.
  std::vector<std::string> schema_errors() const;

 private:
  std::unique_ptr<store::Store> store_;
  std::unique_ptr<service::Service> service_;
  std::unique_ptr<client::InProcessTransport> inproc_;
  client::RecordingTransport recorder_;
  std::unique_ptr<client::ApiClient> api_;
};

// Brute-force reference filters, written independently of domain/query.
bool oracle_run_matches(const Run& run, const RunQuery& q);
bool oracle_log_matches(const LogEntry& log, const LogQuery& q);

// Filter, sort newest first (id descending) and slice.
store::Page<Run> oracle_list_runs(const std::vector<Run>& all, const RunQuery& q, const store::PageRequest& page);
store::Page<LogEntry> oracle_list_logs(const std::vector<LogEntry>& all, const LogQuery& q,
                                       const store::PageRequest& page);

// A corpus created through the API.
struct Corpus {
  std::vector<LhcFill> fills;
  std::vector<Run> runs;
  std::vector<ReconstructionPass> passes;
  std::vector<LogEntry> logs;
  Timestamp earliest;
  Timestamp latest;
};

inline const std::vector<std::string> kTagPool{"cosmics", "physics", "calib", "tpc", "its", "lowmu"};
inline const std::vector<std::string> kWordPool{"EOS", "tpc", "Trigger", "rate", "busy", "beam", "dump",
                                                "HV",  "trip", "noise",   "ok",   "sector", "its"};

Corpus build_random_corpus(Harness& h, std::mt19937_64& rng, int runs, int logs);

RunQuery random_run_query(std::mt19937_64& rng, const Corpus& corpus);
LogQuery random_log_query(std::mt19937_64& rng, const Corpus& corpus);
store::PageRequest random_page(std::mt19937_64& rng, std::int64_t total);

// Uniform integer in [lo, hi].
std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);
bool coin(std::mt19937_64& rng, double p = 0.5);

std::string test_data_dir();

}  // namespace runlog::testing
