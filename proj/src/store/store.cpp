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

#include "runlog/store/store.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "runlog/domain/codec.hpp"
#include "runlog/domain/errors.hpp"
#include "runlog/domain/lineage.hpp"
#include "runlog/store/sha256.hpp"
#include "runlog/store/sqlite.hpp"

namespace runlog::store {

namespace {

using Json = nlohmann::json;

constexpr std::array<std::pair<AuditAction, std::string_view>, 12> kActionNames{{
    {AuditAction::kCreateFill, "CREATE_FILL"},
    {AuditAction::kCreateRun, "CREATE_RUN"},
    {AuditAction::kEndRun, "END_RUN"},
    {AuditAction::kSetQuality, "SET_QUALITY"},
    {AuditAction::kTagRun, "TAG_RUN"},
    {AuditAction::kUntagRun, "UNTAG_RUN"},
    {AuditAction::kCreatePass, "CREATE_PASS"},
    {AuditAction::kSetPassStatus, "SET_PASS_STATUS"},
    {AuditAction::kCreateLog, "CREATE_LOG"},
    {AuditAction::kEditLog, "EDIT_LOG"},
    {AuditAction::kAttach, "ATTACH"},
    {AuditAction::kCreateTemplate, "CREATE_TEMPLATE"},
}};

const char* const kSchema = R"sql(
CREATE TABLE IF NOT EXISTS counters(name TEXT PRIMARY KEY, value INTEGER NOT NULL);
INSERT OR IGNORE INTO counters(name, value) VALUES ('run', 0), ('pass', 0), ('log', 0), ('template', 0);
CREATE TABLE IF NOT EXISTS fills(fill_number INTEGER PRIMARY KEY, created_at INTEGER NOT NULL, doc TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS runs(run_number INTEGER PRIMARY KEY, start_time INTEGER NOT NULL,
                                fill_number INTEGER, doc TEXT NOT NULL);
CREATE INDEX IF NOT EXISTS runs_by_fill ON runs(fill_number);
CREATE INDEX IF NOT EXISTS runs_by_start ON runs(start_time);
CREATE TABLE IF NOT EXISTS passes(pass_id INTEGER PRIMARY KEY, created_at INTEGER NOT NULL, doc TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS logs(log_id INTEGER PRIMARY KEY, created_at INTEGER NOT NULL, doc TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS log_revisions(log_id INTEGER NOT NULL, revision_index INTEGER NOT NULL,
                                         doc TEXT NOT NULL, PRIMARY KEY(log_id, revision_index));
CREATE TABLE IF NOT EXISTS attachments(log_id INTEGER NOT NULL, position INTEGER NOT NULL,
                                       digest TEXT NOT NULL, doc TEXT NOT NULL, PRIMARY KEY(log_id, position));
CREATE INDEX IF NOT EXISTS attachments_by_digest ON attachments(digest);
CREATE TABLE IF NOT EXISTS blobs(digest TEXT PRIMARY KEY, data BLOB NOT NULL);
CREATE TABLE IF NOT EXISTS templates(template_id INTEGER PRIMARY KEY, name TEXT NOT NULL UNIQUE, doc TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS audit(seq INTEGER PRIMARY KEY, doc TEXT NOT NULL, payload TEXT NOT NULL);
)sql";

// Nothing is ever deleted; history tables are never rewritten either.
constexpr std::array<const char*, 9> kNoDelete{"fills", "runs", "passes", "logs", "log_revisions",
                                                "attachments", "blobs", "templates", "audit"};
constexpr std::array<const char*, 6> kNoUpdate{"fills", "log_revisions", "attachments",
                                                "blobs", "templates", "audit"};

template <typename T>
T decode(const std::string& doc) {
  return Json::parse(doc).get<T>();
}

template <typename T>
Page<T> slice(std::vector<T> matched, const PageRequest& page) {
  Page<T> out;
  out.total = static_cast<std::int64_t>(matched.size());
  out.offset = page.offset;
  out.limit = page.limit;
  if (page.offset < out.total) {
    const auto first = matched.begin() + page.offset;
    const auto last = matched.begin() + std::min(out.total, page.offset + page.limit);
    out.items.assign(std::make_move_iterator(first), std::make_move_iterator(last));
  }
  return out;
}

[[noreturn]] void not_found(const std::string& what, std::int64_t id) {
  fail(ErrorCode::kNotFound, what + " " + std::to_string(id) + " does not exist", {{"id", id}});
}

Json event_json(const RunEvent& event) {
  if (const auto* e = std::get_if<EndRun>(&event)) return {{"end_time", format_timestamp(e->end_time)}};
  if (const auto* e = std::get_if<SetQuality>(&event)) return {{"quality", to_string(e->quality)}};
  if (const auto* e = std::get_if<AddTag>(&event)) return {{"add_tag", e->tag.value()}};
  return {{"remove_tag", std::get<RemoveTag>(event).tag.value()}};
}

AuditAction action_for(const RunEvent& event) {
  switch (event.index()) {
    case 0: return AuditAction::kEndRun;
    case 1: return AuditAction::kSetQuality;
    case 2: return AuditAction::kTagRun;
    default: return AuditAction::kUntagRun;
  }
}

}  // namespace

std::string_view to_string(AuditAction action) {
  for (const auto& [a, name] : kActionNames)
    if (a == action) return name;
  return "?";
}

AuditAction parse_audit_action(std::string_view text) {
  for (const auto& [a, name] : kActionNames)
    if (name == text) return a;
  fail(ErrorCode::kInvalid, "unknown audit action '" + std::string(text) + "'", {{"field", "action"}});
}

std::string_view to_string(CommitPoint point) {
  switch (point) {
    case CommitPoint::kBeforeEntityWrite: return "before_entity_write";
    case CommitPoint::kAfterEntityWrite: return "after_entity_write";
    case CommitPoint::kAfterAuditWrite: return "after_audit_write";
    case CommitPoint::kBeforeCommit: return "before_commit";
    case CommitPoint::kAfterCommit: return "after_commit";
  }
  return "?";
}

void to_json(Json& j, const AuditRecord& v) {
  j = Json{{"seq", v.seq},
           {"timestamp", format_timestamp(v.timestamp)},
           {"actor", v.actor},
           {"action", to_string(v.action)},
           {"target", v.target},
           {"payload_digest", v.payload_digest}};
}

void from_json(const Json& j, AuditRecord& v) {
  v.seq = codec::get_int(j, "seq");
  v.timestamp = codec::get_timestamp(j, "timestamp");
  v.actor = codec::required(j, "actor").get<ActorRef>();
  v.action = parse_audit_action(codec::get_string(j, "action"));
  v.target = codec::required(j, "target").get<EntityRef>();
  v.payload_digest = codec::get_string(j, "payload_digest");
}

void to_json(Json& j, const Counts& v) {
  j = Json{{"fills", v.fills},         {"runs", v.runs},
           {"passes", v.passes},       {"logs", v.logs},
           {"templates", v.templates}, {"attachments", v.attachments},
           {"blobs", v.blobs},         {"audit_records", v.audit_records}};
}

void validate(const PageRequest& page) {
  if (page.offset < 0)
    fail(ErrorCode::kInvalidQuery, "offset must be non-negative", {{"field", "offset"}});
  if (page.limit < 1 || page.limit > kMaxPageLimit)
    fail(ErrorCode::kInvalidQuery, "limit must be between 1 and " + std::to_string(kMaxPageLimit),
         {{"field", "limit"}});
}

struct Store::AuditDraft {
  AuditAction action = AuditAction::kCreateFill;
  EntityRef target;
  Json payload;
};

Store::Store(StoreOptions options) : options_(std::move(options)) {
  if (!options_.clock) options_.clock = now_utc;
  db_ = std::make_unique<sql::Database>(options_.path);
  if (options_.path != ":memory:") db_->exec("PRAGMA journal_mode=WAL");
  db_->exec(options_.durable_commits ? "PRAGMA synchronous=FULL" : "PRAGMA synchronous=NORMAL");
  init_schema();
}

Store::~Store() = default;

void Store::init_schema() {
  db_->exec(kSchema);
  for (const char* table : kNoDelete) {
    db_->exec(std::string("CREATE TRIGGER IF NOT EXISTS ") + table + "_no_delete BEFORE DELETE ON " +
              table + " BEGIN SELECT RAISE(ABORT, '" + table + " rows are never deleted'); END;");
  }
  for (const char* table : kNoUpdate) {
    db_->exec(std::string("CREATE TRIGGER IF NOT EXISTS ") + table + "_no_update BEFORE UPDATE ON " +
              table + " BEGIN SELECT RAISE(ABORT, '" + table + " rows are immutable'); END;");
  }
}

void Store::set_fault_hook(FaultHook hook) {
  std::lock_guard lock(mutex_);
  fault_hook_ = std::move(hook);
}

void Store::fault(CommitPoint point) const {
  if (fault_hook_) fault_hook_(point);
}

Timestamp Store::now() const { return options_.clock(); }

std::int64_t Store::allocate(const char* counter) {
  sql::Statement(*db_, "UPDATE counters SET value = value + 1 WHERE name = ?1").bind(1, counter).run();
  sql::Statement select(*db_, "SELECT value FROM counters WHERE name = ?1");
  select.bind(1, counter);
  if (!select.step()) fail(ErrorCode::kInternal, std::string("missing counter ") + counter);
  return select.column_int(0);
}

void Store::append_audit(const ActorRef& actor, const AuditDraft& draft) {
  sql::Statement next(*db_, "SELECT COALESCE(MAX(seq), 0) + 1 FROM audit");
  next.step();
  AuditRecord record;
  record.seq = next.column_int(0);
  record.timestamp = now();
  record.actor = actor;
  record.action = draft.action;
  record.target = draft.target;
  const auto payload = canonical(draft.payload);
  record.payload_digest = sha256_hex(payload);
  sql::Statement(*db_, "INSERT INTO audit(seq, doc, payload) VALUES (?1, ?2, ?3)")
      .bind(1, record.seq)
      .bind(2, canonical(Json(record)))
      .bind(3, payload)
      .run();
}

template <typename Result, typename Write>
Result Store::commit_mutation(const ActorRef& actor, Write&& write) {
  validate(actor);
  std::lock_guard lock(mutex_);
  sql::Transaction tx(*db_);
  fault(CommitPoint::kBeforeEntityWrite);
  AuditDraft draft;
  Result result = write(draft);
  fault(CommitPoint::kAfterEntityWrite);
  append_audit(actor, draft);
  fault(CommitPoint::kAfterAuditWrite);
  fault(CommitPoint::kBeforeCommit);
  tx.commit();
  fault(CommitPoint::kAfterCommit);
  return result;
}

// --- lookups (caller holds mutex_) -------------------------------------------

std::optional<LhcFill> Store::find_fill_locked(std::int64_t fill_number) const {
  sql::Statement s(*db_, "SELECT doc FROM fills WHERE fill_number = ?1");
  s.bind(1, fill_number);
  if (!s.step()) return std::nullopt;
  return decode<LhcFill>(s.column_text(0));
}

std::optional<Run> Store::find_run_locked(std::int64_t run_number) const {
  sql::Statement s(*db_, "SELECT doc FROM runs WHERE run_number = ?1");
  s.bind(1, run_number);
  if (!s.step()) return std::nullopt;
  return decode<Run>(s.column_text(0));
}

std::optional<ReconstructionPass> Store::find_pass_locked(std::int64_t pass_id) const {
  sql::Statement s(*db_, "SELECT doc FROM passes WHERE pass_id = ?1");
  s.bind(1, pass_id);
  if (!s.step()) return std::nullopt;
  return decode<ReconstructionPass>(s.column_text(0));
}

std::optional<LogEntry> Store::find_log_locked(std::int64_t log_id) const {
  sql::Statement s(*db_, "SELECT doc FROM logs WHERE log_id = ?1");
  s.bind(1, log_id);
  if (!s.step()) return std::nullopt;
  auto log = decode<LogEntry>(s.column_text(0));
  load_log_details_locked(log);
  return log;
}

void Store::load_log_details_locked(LogEntry& log) const {
  log.revisions.clear();
  sql::Statement revs(*db_,
                      "SELECT doc FROM log_revisions WHERE log_id = ?1 ORDER BY revision_index");
  revs.bind(1, log.log_id);
  while (revs.step()) log.revisions.push_back(decode<Revision>(revs.column_text(0)));

  log.attachments.clear();
  sql::Statement atts(*db_, "SELECT doc FROM attachments WHERE log_id = ?1 ORDER BY position");
  atts.bind(1, log.log_id);
  while (atts.step()) log.attachments.push_back(decode<Attachment>(atts.column_text(0)));
}

std::optional<Entity> Store::resolve_locked(const EntityRef& ref) const {
  switch (ref.kind) {
    case EntityKind::kRun:
      if (auto r = find_run_locked(ref.id)) return Entity{*r};
      return std::nullopt;
    case EntityKind::kFill:
      if (auto f = find_fill_locked(ref.id)) return Entity{*f};
      return std::nullopt;
    case EntityKind::kPass:
      if (auto p = find_pass_locked(ref.id)) return Entity{*p};
      return std::nullopt;
    case EntityKind::kLog:
      if (auto l = find_log_locked(ref.id)) return Entity{*l};
      return std::nullopt;
    case EntityKind::kTemplate:
      return std::nullopt;
  }
  return std::nullopt;
}

bool Store::exists_locked(const EntityRef& ref) const {
  const char* sql = nullptr;
  switch (ref.kind) {
    case EntityKind::kRun: sql = "SELECT 1 FROM runs WHERE run_number = ?1"; break;
    case EntityKind::kFill: sql = "SELECT 1 FROM fills WHERE fill_number = ?1"; break;
    case EntityKind::kPass: sql = "SELECT 1 FROM passes WHERE pass_id = ?1"; break;
    case EntityKind::kLog: sql = "SELECT 1 FROM logs WHERE log_id = ?1"; break;
    case EntityKind::kTemplate: sql = "SELECT 1 FROM templates WHERE template_id = ?1"; break;
  }
  sql::Statement s(*db_, sql);
  s.bind(1, ref.id);
  return s.step();
}

// --- writes (caller holds mutex_ inside a transaction) -----------------------

void Store::put_run_locked(const Run& run, bool insert) {
  sql::Statement s(*db_, insert ? "INSERT INTO runs(run_number, start_time, fill_number, doc) "
                                  "VALUES (?1, ?2, ?3, ?4)"
                                : "UPDATE runs SET start_time = ?2, fill_number = ?3, doc = ?4 "
                                  "WHERE run_number = ?1");
  s.bind(1, run.run_number).bind(2, to_unix_millis(run.start_time));
  if (run.fill_number) {
    s.bind(3, *run.fill_number);
  } else {
    s.bind_null(3);
  }
  s.bind(4, canonical(Json(run))).run();
}

void Store::put_pass_locked(const ReconstructionPass& pass, bool insert) {
  sql::Statement s(*db_, insert ? "INSERT INTO passes(pass_id, created_at, doc) VALUES (?1, ?2, ?3)"
                                : "UPDATE passes SET created_at = ?2, doc = ?3 WHERE pass_id = ?1");
  s.bind(1, pass.pass_id).bind(2, to_unix_millis(pass.created_at)).bind(3, canonical(Json(pass))).run();
}

void Store::put_log_doc_locked(const LogEntry& log, bool insert) {
  LogEntry doc = log;
  doc.revisions.clear();
  doc.attachments.clear();
  sql::Statement s(*db_, insert ? "INSERT INTO logs(log_id, created_at, doc) VALUES (?1, ?2, ?3)"
                                : "UPDATE logs SET created_at = ?2, doc = ?3 WHERE log_id = ?1");
  s.bind(1, log.log_id).bind(2, to_unix_millis(log.created_at)).bind(3, canonical(Json(doc))).run();
}

void Store::put_revision_locked(std::int64_t log_id, const Revision& rev) {
  sql::Statement(*db_, "INSERT INTO log_revisions(log_id, revision_index, doc) VALUES (?1, ?2, ?3)")
      .bind(1, log_id)
      .bind(2, rev.revision_index)
      .bind(3, canonical(Json(rev)))
      .run();
}

// --- mutations ---------------------------------------------------------------

LhcFill Store::create_fill(const NewFill& payload, const ActorRef& actor) {
  return commit_mutation<LhcFill>(actor, [&](AuditDraft& draft) {
    LhcFill fill;
    fill.fill_number = payload.fill_number;
    fill.stable_beams_start = payload.stable_beams_start;
    fill.stable_beams_end = payload.stable_beams_end;
    fill.beam_type = payload.beam_type;
    fill.created_at = payload.created_at.value_or(now());
    validate(fill);
    if (find_fill_locked(fill.fill_number))
      fail(ErrorCode::kConflict, "fill " + std::to_string(fill.fill_number) + " already exists",
           {{"fill_number", fill.fill_number}});
    sql::Statement(*db_, "INSERT INTO fills(fill_number, created_at, doc) VALUES (?1, ?2, ?3)")
        .bind(1, fill.fill_number)
        .bind(2, to_unix_millis(fill.created_at))
        .bind(3, canonical(Json(fill)))
        .run();
    draft = {AuditAction::kCreateFill, {EntityKind::kFill, fill.fill_number}, Json(fill)};
    return fill;
  });
}

Run Store::create_run(const NewRun& payload, const ActorRef& actor) {
  return commit_mutation<Run>(actor, [&](AuditDraft& draft) {
    if (payload.fill_number && !exists_locked({EntityKind::kFill, *payload.fill_number}))
      fail(ErrorCode::kUnknownReference,
           "fill " + std::to_string(*payload.fill_number) + " does not exist",
           {{"field", "fill_number"}, {"ref", "FILL:" + std::to_string(*payload.fill_number)}});
    Run run;
    run.run_type = payload.run_type;
    run.start_time = payload.start_time.value_or(now());
    run.fill_number = payload.fill_number;
    run.configuration = payload.configuration;
    run.tags = payload.tags;
    run.run_number = allocate("run");
    validate(run);
    put_run_locked(run, true);
    draft = {AuditAction::kCreateRun, {EntityKind::kRun, run.run_number}, Json(run)};
    return run;
  });
}

ReconstructionPass Store::create_pass(const NewPass& payload, const ActorRef& actor) {
  return commit_mutation<ReconstructionPass>(actor, [&](AuditDraft& draft) {
    if (payload.name.empty())
      fail(ErrorCode::kInvalid, "pass name must not be empty", {{"field", "name"}});
    if (payload.input.kind != EntityKind::kRun && payload.input.kind != EntityKind::kPass)
      fail(ErrorCode::kInvalid, "pass input must reference a RUN or a PASS",
           {{"field", "input"}, {"kind", to_string(payload.input.kind)}});
    if (!exists_locked(payload.input))
      fail(ErrorCode::kUnknownReference, to_string(payload.input) + " does not exist",
           {{"field", "input"}, {"ref", to_string(payload.input)}});
    ReconstructionPass pass;
    pass.name = payload.name;
    pass.input = payload.input;
    pass.configuration = payload.configuration;
    pass.status = PassStatus::kPending;
    pass.created_at = payload.created_at.value_or(now());
    pass.pass_id = allocate("pass");
    validate(pass);
    put_pass_locked(pass, true);
    draft = {AuditAction::kCreatePass, {EntityKind::kPass, pass.pass_id}, Json(pass)};
    return pass;
  });
}

LogEntry Store::create_log(const NewLog& payload, const ActorRef& actor) {
  return commit_mutation<LogEntry>(actor, [&](AuditDraft& draft) {
    if (payload.title.empty())
      fail(ErrorCode::kInvalid, "log title must not be empty", {{"field", "title"}});
    LogEntry log;
    for (const auto& ref : payload.associations) {
      if (ref.kind != EntityKind::kRun && ref.kind != EntityKind::kFill && ref.kind != EntityKind::kPass)
        fail(ErrorCode::kInvalid, "log associations must reference a RUN, FILL or PASS",
             {{"field", "associations"}, {"ref", to_string(ref)}});
      if (!exists_locked(ref))
        fail(ErrorCode::kUnknownReference, to_string(ref) + " does not exist",
             {{"field", "associations"}, {"ref", to_string(ref)}});
      if (std::find(log.associations.begin(), log.associations.end(), ref) == log.associations.end())
        log.associations.push_back(ref);
    }
    log.title = payload.title;
    log.body = payload.body;
    log.author = actor;
    log.origin = payload.origin;
    log.created_at = payload.created_at.value_or(now());
    log.tags = payload.tags;
    log.log_id = allocate("log");
    log.revisions.push_back(Revision{0, log.title, log.body, actor, log.created_at});
    validate(log);
    put_log_doc_locked(log, true);
    put_revision_locked(log.log_id, log.revisions.front());
    draft = {AuditAction::kCreateLog, {EntityKind::kLog, log.log_id}, Json(log)};
    return log;
  });
}

Template Store::create_template(const NewTemplate& payload, const ActorRef& actor) {
  return commit_mutation<Template>(actor, [&](AuditDraft& draft) {
    Template tpl;
    tpl.name = payload.name;
    tpl.title_pattern = payload.title_pattern;
    tpl.body_pattern = payload.body_pattern;
    tpl.required_fields = payload.required_fields;
    tpl.default_tags = payload.default_tags;
    validate(tpl);
    sql::Statement dup(*db_, "SELECT 1 FROM templates WHERE name = ?1");
    dup.bind(1, tpl.name);
    if (dup.step())
      fail(ErrorCode::kConflict, "template '" + tpl.name + "' already exists",
           {{"template_name", tpl.name}});
    tpl.template_id = allocate("template");
    sql::Statement(*db_, "INSERT INTO templates(template_id, name, doc) VALUES (?1, ?2, ?3)")
        .bind(1, tpl.template_id)
        .bind(2, tpl.name)
        .bind(3, canonical(Json(tpl)))
        .run();
    draft = {AuditAction::kCreateTemplate, {EntityKind::kTemplate, tpl.template_id}, Json(tpl)};
    return tpl;
  });
}

Run Store::mutate_run(std::int64_t run_number, const RunEvent& event, const ActorRef& actor) {
  return commit_mutation<Run>(actor, [&](AuditDraft& draft) {
    const auto current = find_run_locked(run_number);
    if (!current) not_found("run", run_number);
    Run next = apply_run_event(*current, event);
    validate(next);
    put_run_locked(next, false);
    draft = {action_for(event),
             {EntityKind::kRun, run_number},
             {{"run_number", run_number}, {"event", event_json(event)}}};
    return next;
  });
}

LogEntry Store::edit_log(std::int64_t log_id, const std::string& title, const std::string& body,
                         const ActorRef& actor) {
  return commit_mutation<LogEntry>(actor, [&](AuditDraft& draft) {
    if (title.empty()) fail(ErrorCode::kInvalid, "log title must not be empty", {{"field", "title"}});
    auto log = find_log_locked(log_id);
    if (!log) not_found("log", log_id);
    Revision rev{static_cast<std::int64_t>(log->revisions.size()), title, body, actor, now()};
    log->title = title;
    log->body = body;
    log->revisions.push_back(rev);
    validate(*log);
    put_log_doc_locked(*log, false);
    put_revision_locked(log_id, rev);
    draft = {AuditAction::kEditLog, {EntityKind::kLog, log_id}, {{"log_id", log_id}, {"revision", rev}}};
    return *log;
  });
}

ReconstructionPass Store::set_pass_status(std::int64_t pass_id, PassStatus status, const ActorRef& actor) {
  return commit_mutation<ReconstructionPass>(actor, [&](AuditDraft& draft) {
    const auto current = find_pass_locked(pass_id);
    if (!current) not_found("pass", pass_id);
    auto next = apply_pass_status(*current, status);
    put_pass_locked(next, false);
    draft = {AuditAction::kSetPassStatus,
             {EntityKind::kPass, pass_id},
             {{"pass_id", pass_id}, {"status", to_string(status)}}};
    return next;
  });
}

Attachment Store::put_attachment(std::int64_t log_id, std::string_view bytes, const std::string& filename,
                                 const std::string& media_type, const ActorRef& actor) {
  if (bytes.size() > options_.max_attachment_bytes)
    fail(ErrorCode::kTooLarge,
         "attachment of " + std::to_string(bytes.size()) + " bytes exceeds the limit of " +
             std::to_string(options_.max_attachment_bytes),
         {{"size_bytes", bytes.size()}, {"max_bytes", options_.max_attachment_bytes}});
  const auto digest = sha256_hex(bytes);
  return commit_mutation<Attachment>(actor, [&](AuditDraft& draft) {
    if (!exists_locked({EntityKind::kLog, log_id})) not_found("log", log_id);
    Attachment meta{digest, filename.empty() ? "attachment" : filename,
                    media_type.empty() ? "application/octet-stream" : media_type, bytes.size()};
    sql::Statement(*db_, "INSERT OR IGNORE INTO blobs(digest, data) VALUES (?1, ?2)")
        .bind(1, digest)
        .bind_blob(2, bytes)
        .run();
    sql::Statement pos(*db_, "SELECT COUNT(*) FROM attachments WHERE log_id = ?1");
    pos.bind(1, log_id).step();
    sql::Statement(*db_, "INSERT INTO attachments(log_id, position, digest, doc) VALUES (?1, ?2, ?3, ?4)")
        .bind(1, log_id)
        .bind(2, pos.column_int(0))
        .bind(3, digest)
        .bind(4, canonical(Json(meta)))
        .run();
    draft = {AuditAction::kAttach, {EntityKind::kLog, log_id}, {{"log_id", log_id}, {"attachment", meta}}};
    return meta;
  });
}

StoredBlob Store::get_attachment(const std::string& digest) const {
  std::lock_guard lock(mutex_);
  sql::Statement meta(*db_,
                      "SELECT doc FROM attachments WHERE digest = ?1 ORDER BY log_id, position LIMIT 1");
  meta.bind(1, digest);
  sql::Statement blob(*db_, "SELECT data FROM blobs WHERE digest = ?1");
  blob.bind(1, digest);
  if (!meta.step() || !blob.step())
    fail(ErrorCode::kUnknownDigest, "no attachment with digest " + digest, {{"digest", digest}});
  return StoredBlob{blob.column_blob(0), decode<Attachment>(meta.column_text(0))};
}

// --- reads -------------------------------------------------------------------

LhcFill Store::get_fill(std::int64_t fill_number) const {
  std::lock_guard lock(mutex_);
  auto fill = find_fill_locked(fill_number);
  if (!fill) not_found("fill", fill_number);
  return *fill;
}

Run Store::get_run(std::int64_t run_number) const {
  std::lock_guard lock(mutex_);
  auto run = find_run_locked(run_number);
  if (!run) not_found("run", run_number);
  return *run;
}

ReconstructionPass Store::get_pass(std::int64_t pass_id) const {
  std::lock_guard lock(mutex_);
  auto pass = find_pass_locked(pass_id);
  if (!pass) not_found("pass", pass_id);
  return *pass;
}

LogEntry Store::get_log(std::int64_t log_id) const {
  std::lock_guard lock(mutex_);
  auto log = find_log_locked(log_id);
  if (!log) not_found("log", log_id);
  return *log;
}

Template Store::get_template(const std::string& name) const {
  std::lock_guard lock(mutex_);
  sql::Statement s(*db_, "SELECT doc FROM templates WHERE name = ?1");
  s.bind(1, name);
  if (!s.step())
    fail(ErrorCode::kNotFound, "template '" + name + "' does not exist", {{"template_name", name}});
  return decode<Template>(s.column_text(0));
}

std::optional<Entity> Store::resolve(const EntityRef& ref) const {
  std::lock_guard lock(mutex_);
  return resolve_locked(ref);
}

std::vector<EntityRef> Store::lineage(std::int64_t pass_id) const {
  std::lock_guard lock(mutex_);
  if (!find_pass_locked(pass_id)) not_found("pass", pass_id);
  return resolve_lineage(pass_id, [this](const EntityRef& ref) { return resolve_locked(ref); });
}

Page<Run> Store::list_runs(const RunQuery& q, PageRequest page) const {
  validate(q);
  validate(page);
  std::string sql = "SELECT doc FROM runs WHERE 1 = 1";
  int next = 1;
  if (q.run_number_range) {
    sql += " AND run_number BETWEEN ?" + std::to_string(next) + " AND ?" + std::to_string(next + 1);
    next += 2;
  }
  if (q.time_range) {
    sql += " AND start_time BETWEEN ?" + std::to_string(next) + " AND ?" + std::to_string(next + 1);
    next += 2;
  }
  if (q.fill_number) sql += " AND fill_number = ?" + std::to_string(next);
  sql += " ORDER BY run_number DESC";

  std::lock_guard lock(mutex_);
  sql::Statement s(*db_, sql);
  int index = 1;
  if (q.run_number_range) {
    s.bind(index++, q.run_number_range->min);
    s.bind(index++, q.run_number_range->max);
  }
  if (q.time_range) {
    s.bind(index++, to_unix_millis(q.time_range->min));
    s.bind(index++, to_unix_millis(q.time_range->max));
  }
  if (q.fill_number) s.bind(index++, *q.fill_number);

  std::vector<Run> matched;
  while (s.step()) {
    auto run = decode<Run>(s.column_text(0));
    if (match_run(run, q)) matched.push_back(std::move(run));
  }
  return slice(std::move(matched), page);
}

Page<LogEntry> Store::list_logs(const LogQuery& q, PageRequest page) const {
  validate(q);
  validate(page);
  std::lock_guard lock(mutex_);
  sql::Statement s(*db_, "SELECT doc FROM logs ORDER BY log_id DESC");
  std::vector<LogEntry> matched;
  while (s.step()) {
    auto log = decode<LogEntry>(s.column_text(0));
    if (match_log(log, q)) matched.push_back(std::move(log));
  }
  auto out = slice(std::move(matched), page);
  for (auto& log : out.items) load_log_details_locked(log);
  return out;
}

Page<LhcFill> Store::list_fills(PageRequest page) const {
  validate(page);
  std::lock_guard lock(mutex_);
  sql::Statement s(*db_, "SELECT doc FROM fills ORDER BY fill_number DESC");
  std::vector<LhcFill> all;
  while (s.step()) all.push_back(decode<LhcFill>(s.column_text(0)));
  return slice(std::move(all), page);
}

Page<ReconstructionPass> Store::list_passes(const PassQuery& q, PageRequest page) const {
  validate(page);
  std::lock_guard lock(mutex_);
  sql::Statement s(*db_, "SELECT doc FROM passes ORDER BY pass_id DESC");
  std::vector<ReconstructionPass> matched;
  while (s.step()) {
    auto pass = decode<ReconstructionPass>(s.column_text(0));
    if (q.statuses && !q.statuses->contains(pass.status)) continue;
    if (q.input && pass.input != *q.input) continue;
    matched.push_back(std::move(pass));
  }
  return slice(std::move(matched), page);
}

Page<Template> Store::list_templates(PageRequest page) const {
  validate(page);
  std::lock_guard lock(mutex_);
  sql::Statement s(*db_, "SELECT doc FROM templates ORDER BY template_id DESC");
  std::vector<Template> all;
  while (s.step()) all.push_back(decode<Template>(s.column_text(0)));
  return slice(std::move(all), page);
}

Page<AuditRecord> Store::read_audit(std::int64_t since_seq, std::int64_t limit) const {
  validate(PageRequest{0, limit});
  std::lock_guard lock(mutex_);
  Page<AuditRecord> out;
  out.limit = limit;
  sql::Statement count(*db_, "SELECT COUNT(*) FROM audit WHERE seq > ?1");
  count.bind(1, since_seq).step();
  out.total = count.column_int(0);
  sql::Statement s(*db_, "SELECT doc FROM audit WHERE seq > ?1 ORDER BY seq LIMIT ?2");
  s.bind(1, since_seq).bind(2, limit);
  while (s.step()) out.items.push_back(decode<AuditRecord>(s.column_text(0)));
  return out;
}

AuditReport Store::verify_audit() const {
  std::lock_guard lock(mutex_);
  AuditReport report;
  sql::Statement s(*db_, "SELECT seq, doc, payload FROM audit ORDER BY seq");
  std::int64_t expected = 1;
  while (s.step()) {
    const auto seq = s.column_int(0);
    ++report.count;
    if (seq != expected && report.contiguous) {
      report.contiguous = false;
      report.first_gap = expected;
    }
    expected = seq + 1;
    const auto record = decode<AuditRecord>(s.column_text(1));
    if (record.seq != seq || record.payload_digest != sha256_hex(s.column_text(2)))
      report.digest_mismatches.push_back(seq);
  }
  return report;
}

IntegrityReport Store::check_integrity() const {
  std::lock_guard lock(mutex_);
  IntegrityReport report;
  auto problem = [&](std::string text) { report.problems.push_back(std::move(text)); };

  {
    sql::Statement s(*db_, "SELECT run_number, doc FROM runs");
    while (s.step()) {
      const auto run = decode<Run>(s.column_text(1));
      if (run.run_number != s.column_int(0)) problem("run row/doc mismatch at " + std::to_string(run.run_number));
      try {
        validate(run);
      } catch (const Error& e) {
        problem("run " + std::to_string(run.run_number) + ": " + e.what());
      }
      if (run.fill_number && !exists_locked({EntityKind::kFill, *run.fill_number}))
        problem("run " + std::to_string(run.run_number) + " references missing fill " +
                std::to_string(*run.fill_number));
    }
  }
  {
    sql::Statement s(*db_, "SELECT pass_id FROM passes");
    std::vector<std::int64_t> ids;
    while (s.step()) ids.push_back(s.column_int(0));
    for (const auto id : ids) {
      try {
        resolve_lineage(id, [this](const EntityRef& ref) { return resolve_locked(ref); });
      } catch (const Error& e) {
        problem("pass " + std::to_string(id) + ": " + e.what());
      }
    }
  }
  {
    sql::Statement s(*db_, "SELECT doc FROM logs");
    std::vector<LogEntry> logs;
    while (s.step()) logs.push_back(decode<LogEntry>(s.column_text(0)));
    for (auto& log : logs) {
      load_log_details_locked(log);
      const auto name = "log " + std::to_string(log.log_id);
      try {
        validate(log);
      } catch (const Error& e) {
        problem(name + ": " + e.what());
      }
      for (const auto& ref : log.associations)
        if (!exists_locked(ref)) problem(name + " references missing " + to_string(ref));
      for (const auto& att : log.attachments) {
        sql::Statement blob(*db_, "SELECT length(data) FROM blobs WHERE digest = ?1");
        blob.bind(1, att.digest);
        if (!blob.step()) {
          problem(name + " references missing blob " + att.digest);
        } else if (static_cast<std::uint64_t>(blob.column_int(0)) != att.size_bytes) {
          problem(name + " attachment size differs from blob " + att.digest);
        }
      }
    }
  }
  {
    sql::Statement s(*db_, "SELECT digest, data FROM blobs");
    while (s.step()) {
      const auto digest = s.column_text(0);
      if (sha256_hex(s.column_blob(1)) != digest) problem("blob content does not hash to " + digest);
    }
  }
  {
    sql::Statement s(*db_, "SELECT doc FROM audit ORDER BY seq");
    std::vector<AuditRecord> records;
    while (s.step()) records.push_back(decode<AuditRecord>(s.column_text(0)));
    for (const auto& r : records)
      if (!exists_locked(r.target))
        problem("audit record " + std::to_string(r.seq) + " targets missing " + to_string(r.target));
  }
  return report;
}

Counts Store::counts_locked() const {
  auto count = [&](const char* sql) {
    sql::Statement s(*db_, sql);
    s.step();
    return s.column_int(0);
  };
  Counts c;
  c.fills = count("SELECT COUNT(*) FROM fills");
  c.runs = count("SELECT COUNT(*) FROM runs");
  c.passes = count("SELECT COUNT(*) FROM passes");
  c.logs = count("SELECT COUNT(*) FROM logs");
  c.templates = count("SELECT COUNT(*) FROM templates");
  c.attachments = count("SELECT COUNT(*) FROM attachments");
  c.blobs = count("SELECT COUNT(*) FROM blobs");
  c.audit_records = count("SELECT COUNT(*) FROM audit");
  return c;
}

Counts Store::counts() const {
  std::lock_guard lock(mutex_);
  return counts_locked();
}

Snapshot Store::snapshot() const {
  std::lock_guard lock(mutex_);
  Snapshot snap;
  {
    sql::Statement s(*db_, "SELECT doc FROM fills ORDER BY fill_number");
    while (s.step()) snap.fills.push_back(decode<LhcFill>(s.column_text(0)));
  }
  {
    sql::Statement s(*db_, "SELECT doc FROM runs ORDER BY run_number");
    while (s.step()) snap.runs.push_back(decode<Run>(s.column_text(0)));
  }
  {
    sql::Statement s(*db_, "SELECT created_at FROM passes ORDER BY pass_id");
    while (s.step()) snap.pass_times.push_back(from_unix_millis(s.column_int(0)));
  }
  {
    sql::Statement s(*db_, "SELECT created_at FROM logs ORDER BY log_id");
    while (s.step()) snap.log_times.push_back(from_unix_millis(s.column_int(0)));
  }
  return snap;
}

bool Store::reachable() const {
  try {
    std::lock_guard lock(mutex_);
    sql::Statement s(*db_, "SELECT 1");
    return s.step();
  } catch (const Error&) {
    return false;
  }
}

}  // namespace runlog::store
