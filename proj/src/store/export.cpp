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

// Backup and restore in the line-oriented export format:
//
//   runlogexport v1
//   FILL\t{...}
//   RUN\t{...}
//   PASS\t{...}
//   LOG\t{...}
//   TEMPLATE\t{...}
//   ATTACHMENT_META\t{"digest":...,"size_bytes":...}
//   AUDIT\t{...,"payload":"..."}
//
// Sections appear in that order, each record is one canonical JSON document,
// and every blob is written next to the record file under its digest.

#include <array>
#include <fstream>
#include <map>
#include <sstream>

#include "runlog/domain/codec.hpp"
#include "runlog/domain/errors.hpp"
#include "runlog/store/sha256.hpp"
#include "runlog/store/sqlite.hpp"
#include "runlog/store/store.hpp"

namespace runlog::store {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

constexpr std::array<std::string_view, 7> kSections{"FILL",     "RUN",
                                                    "PASS",     "LOG",
                                                    "TEMPLATE", "ATTACHMENT_META",
                                                    "AUDIT"};

int section_index(std::string_view kind) {
  for (std::size_t i = 0; i < kSections.size(); ++i)
    if (kSections[i] == kind) return static_cast<int>(i);
  return -1;
}

void write_atomically(const fs::path& target, std::string_view contents) {
  const auto tmp = fs::path(target.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) fail(ErrorCode::kInternal, "cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kNotFound, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

[[noreturn]] void parse_error(std::size_t line, const std::string& why) {
  fail(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + why, {{"line", line}});
}

}  // namespace

ExportSummary Store::export_to(const fs::path& dir) const {
  fs::create_directories(dir);
  std::lock_guard lock(mutex_);

  std::string out;
  out.append(kExportHeader).push_back('\n');
  auto emit = [&](std::string_view kind, const Json& doc) {
    out.append(kind).push_back('\t');
    out.append(canonical(doc)).push_back('\n');
  };
  auto emit_docs = [&](std::string_view kind, const char* sql) {
    sql::Statement s(*db_, sql);
    while (s.step()) emit(kind, Json::parse(s.column_text(0)));
  };

  emit_docs("FILL", "SELECT doc FROM fills ORDER BY fill_number");
  emit_docs("RUN", "SELECT doc FROM runs ORDER BY run_number");
  emit_docs("PASS", "SELECT doc FROM passes ORDER BY pass_id");
  {
    sql::Statement s(*db_, "SELECT doc FROM logs ORDER BY log_id");
    std::vector<LogEntry> logs;
    while (s.step()) logs.push_back(Json::parse(s.column_text(0)).get<LogEntry>());
    for (auto& log : logs) {
      load_log_details_locked(log);
      emit("LOG", Json(log));
    }
  }
  emit_docs("TEMPLATE", "SELECT doc FROM templates ORDER BY template_id");
  {
    sql::Statement s(*db_, "SELECT digest, data FROM blobs ORDER BY digest");
    while (s.step()) {
      const auto digest = s.column_text(0);
      const auto data = s.column_blob(1);
      write_atomically(dir / digest, data);
      emit("ATTACHMENT_META", Json{{"digest", digest}, {"size_bytes", data.size()}});
    }
  }
  {
    sql::Statement s(*db_, "SELECT doc, payload FROM audit ORDER BY seq");
    while (s.step()) {
      auto doc = Json::parse(s.column_text(0));
      doc["payload"] = s.column_text(1);
      emit("AUDIT", doc);
    }
  }

  const auto file = dir / kExportFileName;
  write_atomically(file, out);
  return ExportSummary{file, counts_locked()};
}

ImportSummary Store::import_from(const fs::path& dir) {
  const auto file = dir / kExportFileName;
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(ErrorCode::kNotFound, "no export found at " + file.string(), {{"path", file.string()}});

  std::lock_guard lock(mutex_);
  const auto before = counts_locked();
  if (before.fills || before.runs || before.passes || before.logs || before.templates ||
      before.blobs || before.audit_records)
    fail(ErrorCode::kConflict, "import requires an empty store");

  sql::Transaction tx(*db_);
  std::string line;
  std::size_t line_no = 0;
  int section = -1;
  std::int64_t next_seq = 1;
  std::map<std::string, std::size_t> pending_digests;  // digest -> first LOG line using it
  std::int64_t max_run = 0, max_pass = 0, max_log = 0, max_template = 0;

  if (!std::getline(in, line) || line != kExportHeader)
    parse_error(1, std::string("expected header '") + kExportHeader + "'");
  line_no = 1;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) parse_error(line_no, "missing record kind separator");
    const auto kind = std::string_view(line).substr(0, tab);
    const int index = section_index(kind);
    if (index < 0) parse_error(line_no, "unknown record kind '" + std::string(kind) + "'");
    if (index < section) parse_error(line_no, "record kind '" + std::string(kind) + "' out of section order");
    section = index;

    try {
      const auto doc = Json::parse(line.substr(tab + 1));
      if (kind == "FILL") {
        const auto fill = doc.get<LhcFill>();
        validate(fill);
        if (exists_locked({EntityKind::kFill, fill.fill_number})) parse_error(line_no, "duplicate fill");
        sql::Statement(*db_, "INSERT INTO fills(fill_number, created_at, doc) VALUES (?1, ?2, ?3)")
            .bind(1, fill.fill_number)
            .bind(2, to_unix_millis(fill.created_at))
            .bind(3, canonical(Json(fill)))
            .run();
      } else if (kind == "RUN") {
        const auto run = doc.get<Run>();
        validate(run);
        if (exists_locked({EntityKind::kRun, run.run_number})) parse_error(line_no, "duplicate run");
        if (run.fill_number && !exists_locked({EntityKind::kFill, *run.fill_number}))
          parse_error(line_no, "run references missing fill " + std::to_string(*run.fill_number));
        put_run_locked(run, true);
        max_run = std::max(max_run, run.run_number);
      } else if (kind == "PASS") {
        const auto pass = doc.get<ReconstructionPass>();
        validate(pass);
        if (exists_locked({EntityKind::kPass, pass.pass_id})) parse_error(line_no, "duplicate pass");
        if (!exists_locked(pass.input))
          parse_error(line_no, "dangling pass input " + to_string(pass.input));
        put_pass_locked(pass, true);
        max_pass = std::max(max_pass, pass.pass_id);
      } else if (kind == "LOG") {
        const auto log = doc.get<LogEntry>();
        validate(log);
        if (exists_locked({EntityKind::kLog, log.log_id})) parse_error(line_no, "duplicate log");
        for (const auto& ref : log.associations)
          if (!exists_locked(ref)) parse_error(line_no, "log references missing " + to_string(ref));
        put_log_doc_locked(log, true);
        for (const auto& rev : log.revisions) put_revision_locked(log.log_id, rev);
        for (std::size_t i = 0; i < log.attachments.size(); ++i) {
          const auto& att = log.attachments[i];
          sql::Statement(*db_,
                         "INSERT INTO attachments(log_id, position, digest, doc) VALUES (?1, ?2, ?3, ?4)")
              .bind(1, log.log_id)
              .bind(2, static_cast<std::int64_t>(i))
              .bind(3, att.digest)
              .bind(4, canonical(Json(att)))
              .run();
          pending_digests.emplace(att.digest, line_no);
        }
        max_log = std::max(max_log, log.log_id);
      } else if (kind == "TEMPLATE") {
        const auto tpl = doc.get<Template>();
        validate(tpl);
        if (tpl.template_id <= 0) parse_error(line_no, "template_id must be positive");
        sql::Statement dup(*db_, "SELECT 1 FROM templates WHERE name = ?1 OR template_id = ?2");
        dup.bind(1, tpl.name).bind(2, tpl.template_id);
        if (dup.step()) parse_error(line_no, "duplicate template");
        sql::Statement(*db_, "INSERT INTO templates(template_id, name, doc) VALUES (?1, ?2, ?3)")
            .bind(1, tpl.template_id)
            .bind(2, tpl.name)
            .bind(3, canonical(Json(tpl)))
            .run();
        max_template = std::max(max_template, tpl.template_id);
      } else if (kind == "ATTACHMENT_META") {
        const auto digest = codec::get_string(doc, "digest");
        const auto size = codec::get_int(doc, "size_bytes");
        if (!is_hex_digest(digest)) parse_error(line_no, "malformed digest");
        const auto path = dir / digest;
        if (!fs::exists(path)) parse_error(line_no, "blob file " + digest + " is missing");
        const auto data = read_file(path);
        if (static_cast<std::int64_t>(data.size()) != size || sha256_hex(data) != digest)
          parse_error(line_no, "blob file " + digest + " does not match its digest");
        sql::Statement(*db_, "INSERT INTO blobs(digest, data) VALUES (?1, ?2)")
            .bind(1, digest)
            .bind_blob(2, data)
            .run();
      } else {  // AUDIT
        const auto record = doc.get<AuditRecord>();
        const auto payload = codec::get_string(doc, "payload");
        if (record.seq != next_seq)
          parse_error(line_no, "audit seq " + std::to_string(record.seq) + " where " +
                                   std::to_string(next_seq) + " was expected");
        if (sha256_hex(payload) != record.payload_digest)
          parse_error(line_no, "audit payload does not match its digest");
        if (!exists_locked(record.target))
          parse_error(line_no, "audit record targets missing " + to_string(record.target));
        sql::Statement(*db_, "INSERT INTO audit(seq, doc, payload) VALUES (?1, ?2, ?3)")
            .bind(1, record.seq)
            .bind(2, canonical(Json(record)))
            .bind(3, payload)
            .run();
        ++next_seq;
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParseError) throw;
      parse_error(line_no, e.what());
    } catch (const nlohmann::json::exception& e) {
      parse_error(line_no, e.what());
    }
  }

  for (const auto& [digest, at_line] : pending_digests) {
    sql::Statement s(*db_, "SELECT 1 FROM blobs WHERE digest = ?1");
    s.bind(1, digest);
    if (!s.step()) parse_error(at_line, "attachment blob " + digest + " is not in the export");
  }

  const std::array<std::pair<const char*, std::int64_t>, 4> counters{
      {{"run", max_run}, {"pass", max_pass}, {"log", max_log}, {"template", max_template}}};
  for (const auto& [name, value] : counters)
    sql::Statement(*db_, "UPDATE counters SET value = ?2 WHERE name = ?1").bind(1, name).bind(2, value).run();

  tx.commit();
  return ImportSummary{file, counts_locked()};
}

}  // namespace runlog::store
