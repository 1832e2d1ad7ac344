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
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "runlog/domain/query.hpp"
#include "runlog/domain/run_events.hpp"
#include "runlog/domain/template.hpp"
#include "runlog/domain/types.hpp"

namespace runlog::store {

namespace sql {
class Database;
}

enum class AuditAction {
  kCreateFill,
  kCreateRun,
  kEndRun,
  kSetQuality,
  kTagRun,
  kUntagRun,
  kCreatePass,
  kSetPassStatus,
  kCreateLog,
  kEditLog,
  kAttach,
  kCreateTemplate,
};

std::string_view to_string(AuditAction action);
AuditAction parse_audit_action(std::string_view text);

struct AuditRecord {
  std::int64_t seq = 0;
  Timestamp timestamp;
  ActorRef actor;
  AuditAction action = AuditAction::kCreateFill;
  EntityRef target;
  std::string payload_digest;

  bool operator==(const AuditRecord&) const = default;
};

void to_json(nlohmann::json& j, const AuditRecord& v);
void from_json(const nlohmann::json& j, AuditRecord& v);

inline constexpr std::int64_t kDefaultPageLimit = 100;
inline constexpr std::int64_t kMaxPageLimit = 1000;

struct PageRequest {
  std::int64_t offset = 0;
  std::int64_t limit = kDefaultPageLimit;
};

template <typename T>
struct Page {
  std::vector<T> items;
  std::int64_t total = 0;
  std::int64_t offset = 0;
  std::int64_t limit = kDefaultPageLimit;
};

template <typename T>
void to_json(nlohmann::json& j, const Page<T>& page) {
  j = nlohmann::json{{"items", page.items},
                     {"total", page.total},
                     {"offset", page.offset},
                     {"limit", page.limit}};
}

// offset >= 0 and 1 <= limit <= kMaxPageLimit, else Error(kInvalidQuery).
void validate(const PageRequest& page);

// Creation payloads. Timestamps left empty are taken from the store clock;
// machine clients (the detector, the simulator) supply their own.
struct NewFill {
  std::int64_t fill_number = 0;
  std::optional<Timestamp> stable_beams_start;
  std::optional<Timestamp> stable_beams_end;
  std::string beam_type;
  std::optional<Timestamp> created_at;
};

struct NewRun {
  RunType run_type = RunType::kGlobal;
  std::optional<Timestamp> start_time;
  std::optional<std::int64_t> fill_number;
  Configuration configuration;
  TagSet tags;
};

struct NewPass {
  std::string name;
  EntityRef input;
  Configuration configuration;
  std::optional<Timestamp> created_at;
};

struct NewLog {
  std::string title;
  std::string body;
  Origin origin = Origin::kHuman;
  std::vector<EntityRef> associations;
  TagSet tags;
  std::optional<Timestamp> created_at;
};

struct NewTemplate {
  std::string name;
  std::string title_pattern;
  std::string body_pattern;
  std::set<std::string> required_fields;
  TagSet default_tags;
};

struct PassQuery {
  std::optional<std::set<PassStatus>> statuses;
  std::optional<EntityRef> input;
};

struct StoredBlob {
  std::string bytes;
  Attachment meta;
};

struct AuditReport {
  bool contiguous = true;
  std::int64_t count = 0;
  std::optional<std::int64_t> first_gap;
  std::vector<std::int64_t> digest_mismatches;

  bool ok() const { return contiguous && digest_mismatches.empty(); }
};

struct IntegrityReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

struct Counts {
  std::int64_t fills = 0;
  std::int64_t runs = 0;
  std::int64_t passes = 0;
  std::int64_t logs = 0;
  std::int64_t templates = 0;
  std::int64_t attachments = 0;
  std::int64_t blobs = 0;
  std::int64_t audit_records = 0;

  bool operator==(const Counts&) const = default;
};

void to_json(nlohmann::json& j, const Counts& v);

// Everything a report needs, read under one lock.
struct Snapshot {
  std::vector<LhcFill> fills;
  std::vector<Run> runs;
  std::vector<Timestamp> pass_times;
  std::vector<Timestamp> log_times;
};

// Named points inside a mutation's transaction, in execution order.
enum class CommitPoint {
  kBeforeEntityWrite,
  kAfterEntityWrite,
  kAfterAuditWrite,
  kBeforeCommit,
  kAfterCommit,
};

std::string_view to_string(CommitPoint point);

// Invoked at every CommitPoint. Throwing aborts the mutation (the transaction
// rolls back); tests also use it to kill the process mid-commit.
using FaultHook = std::function<void(CommitPoint)>;
using Clock = std::function<Timestamp()>;

struct StoreOptions {
  // SQLite database file, or ":memory:".
  std::string path = ":memory:";
  std::uint64_t max_attachment_bytes = 64ull * 1024 * 1024;
  // synchronous=FULL when true, NORMAL otherwise. Both survive process
  // crashes; only FULL survives power loss.
  bool durable_commits = true;
  Clock clock;
};

struct ExportSummary {
  std::filesystem::path file;
  Counts counts;
};

using ImportSummary = ExportSummary;

// Name of the record file inside an export directory.
inline constexpr const char* kExportFileName = "runlog.export";
inline constexpr const char* kExportHeader = "runlogexport v1";

// Durable repository. Every successful mutation appends exactly one
// AuditRecord in the same SQLite transaction; failed mutations leave no
// trace. Safe to share between threads: all operations serialize on one
// mutex, so identifier allocation and per-entity updates are linearizable.
class Store {
 public:
  explicit Store(StoreOptions options = {});
  ~Store();

  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  const StoreOptions& options() const { return options_; }
  void set_fault_hook(FaultHook hook);

  LhcFill create_fill(const NewFill& payload, const ActorRef& actor);
  Run create_run(const NewRun& payload, const ActorRef& actor);
  ReconstructionPass create_pass(const NewPass& payload, const ActorRef& actor);
  LogEntry create_log(const NewLog& payload, const ActorRef& actor);
  Template create_template(const NewTemplate& payload, const ActorRef& actor);

  Run mutate_run(std::int64_t run_number, const RunEvent& event, const ActorRef& actor);
  LogEntry edit_log(std::int64_t log_id, const std::string& title, const std::string& body,
                    const ActorRef& actor);
  ReconstructionPass set_pass_status(std::int64_t pass_id, PassStatus status, const ActorRef& actor);

  // Stores the blob (deduplicated by digest) and appends it to the log's
  // attachment list. Audited as ATTACH on the log.
  Attachment put_attachment(std::int64_t log_id, std::string_view bytes, const std::string& filename,
                            const std::string& media_type, const ActorRef& actor);
  StoredBlob get_attachment(const std::string& digest) const;

  LhcFill get_fill(std::int64_t fill_number) const;
  Run get_run(std::int64_t run_number) const;
  ReconstructionPass get_pass(std::int64_t pass_id) const;
  LogEntry get_log(std::int64_t log_id) const;
  Template get_template(const std::string& name) const;
  std::optional<Entity> resolve(const EntityRef& ref) const;
  std::vector<EntityRef> lineage(std::int64_t pass_id) const;

  // Newest first (identifier descending), sliced to the page.
  Page<Run> list_runs(const RunQuery& q, PageRequest page = {}) const;
  Page<LogEntry> list_logs(const LogQuery& q, PageRequest page = {}) const;
  Page<LhcFill> list_fills(PageRequest page = {}) const;
  Page<ReconstructionPass> list_passes(const PassQuery& q, PageRequest page = {}) const;
  Page<Template> list_templates(PageRequest page = {}) const;

  // Records with seq > since_seq, ascending.
  Page<AuditRecord> read_audit(std::int64_t since_seq, std::int64_t limit = kDefaultPageLimit) const;
  AuditReport verify_audit() const;
  IntegrityReport check_integrity() const;

  Counts counts() const;
  Snapshot snapshot() const;
  bool reachable() const;

  ExportSummary export_to(const std::filesystem::path& dir) const;
  ImportSummary import_from(const std::filesystem::path& dir);

 private:
  struct AuditDraft;

  template <typename Result, typename Write>
  Result commit_mutation(const ActorRef& actor, Write&& write);

  void fault(CommitPoint point) const;
  Timestamp now() const;
  std::int64_t allocate(const char* counter);
  void append_audit(const ActorRef& actor, const AuditDraft& draft);
  bool exists_locked(const EntityRef& ref) const;
  std::optional<Entity> resolve_locked(const EntityRef& ref) const;
  std::optional<Run> find_run_locked(std::int64_t run_number) const;
  std::optional<LhcFill> find_fill_locked(std::int64_t fill_number) const;
  std::optional<ReconstructionPass> find_pass_locked(std::int64_t pass_id) const;
  std::optional<LogEntry> find_log_locked(std::int64_t log_id) const;
  void put_run_locked(const Run& run, bool insert);
  void put_pass_locked(const ReconstructionPass& pass, bool insert);
  void put_log_doc_locked(const LogEntry& log, bool insert);
  void put_revision_locked(std::int64_t log_id, const Revision& rev);
  void load_log_details_locked(LogEntry& log) const;
  Counts counts_locked() const;
  void init_schema();

  StoreOptions options_;
  std::unique_ptr<sql::Database> db_;
  mutable std::mutex mutex_;
  FaultHook fault_hook_;
};

}  // namespace runlog::store
