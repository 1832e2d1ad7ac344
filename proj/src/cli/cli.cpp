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

#include "runlog/cli/cli.hpp"

#include <atomic>
#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "runlog/client/api_client.hpp"
#include "runlog/service/http_server.hpp"
#include "runlog/service/params.hpp"
#include "runlog/sim/replay.hpp"

namespace runlog::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop = true; }

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kNotFound, "cannot read " + path.string(), {{"path", path.string()}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string media_type_for(const std::filesystem::path& path) {
  static const std::map<std::string, std::string> types{
      {".txt", "text/plain"}, {".log", "text/plain"},       {".csv", "text/csv"},
      {".json", "application/json"}, {".png", "image/png"}, {".jpg", "image/jpeg"},
      {".jpeg", "image/jpeg"}, {".pdf", "application/pdf"}, {".md", "text/markdown"}};
  auto ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto it = types.find(ext);
  return it == types.end() ? "application/octet-stream" : it->second;
}

std::string join_tags(const TagSet& tags) {
  std::string out;
  for (const auto& t : tags) out += (out.empty() ? "" : ",") + t.value();
  return out;
}

void print_runs(std::ostream& out, const store::Page<Run>& page) {
  out << std::left << std::setw(8) << "RUN" << std::setw(22) << "TYPE" << std::setw(9) << "STATE" << std::setw(26)
      << "START" << std::setw(26) << "END" << std::setw(7) << "FILL" << std::setw(9) << "QUALITY"
      << "TAGS" << '\n';
  for (const auto& r : page.items) {
    out << std::setw(8) << r.run_number << std::setw(22) << to_string(r.run_type) << std::setw(9)
        << to_string(r.state) << std::setw(26) << format_timestamp(r.start_time) << std::setw(26)
        << (r.end_time ? format_timestamp(*r.end_time) : "-") << std::setw(7)
        << (r.fill_number ? std::to_string(*r.fill_number) : "-") << std::setw(9) << to_string(r.quality)
        << join_tags(r.tags) << '\n';
  }
  out << "total: " << page.total << " (offset " << page.offset << ", limit " << page.limit << ")\n";
}

void print_counts(std::ostream& out, const store::Counts& c) {
  out << "fills " << c.fills << ", runs " << c.runs << ", passes " << c.passes << ", logs " << c.logs
      << ", templates " << c.templates << ", attachments " << c.attachments << ", audit records "
      << c.audit_records << '\n';
}

std::string describe(const Error& e) {
  std::string msg = "error: " + std::string(e.what());
  if (e.detail().contains("field") && e.detail().at("field").is_string())
    msg += " (field: " + e.detail().at("field").get<std::string>() + ")";
  return msg;
}

class Commands {
 public:
  explicit Commands(CliEnv& env) : env_(env) {}

  int run(int argc, const char* const* argv) {
    CLI::App app{"runlog: run catalogue and logbook client", "runlog"};
    app.require_subcommand(1);
    app.add_option("--endpoint", endpoint_, "Service URL (overrides RUNLOG_ENDPOINT and the config file)");
    app.add_option("--token", token_, "Bearer token (overrides RUNLOG_TOKEN and the config file)");
    app.add_option("--output", output_, "Output mode")->check(CLI::IsMember({"table", "raw"}));

    std::function<int()> action;

    auto* serve = app.add_subcommand("serve", "Start the HTTP service");
    serve->add_option("--config", serve_config_, "Service config file (JSON); defaults to RUNLOG_CONFIG");
    serve->add_option("--listen", serve_listen_, "host:port override");
    serve->callback([&] { action = [this] { return do_serve(); }; });

    auto* seed = app.add_subcommand("seed", "Generate a simulated dataset and replay it");
    seed->add_option("--seed", sim_.seed, "Generator seed")->capture_default_str();
    seed->add_option("--fills", sim_.n_fills, "Number of LHC fills")->required()->check(CLI::NonNegativeNumber);
    seed->add_option("--mean-runs-per-fill", sim_.mean_runs_per_fill)->capture_default_str();
    auto* target = seed->add_option("--target", seed_target_, "Service URL to replay against");
    seed->add_option("--store", store_path_, "Write straight into this store file")->excludes(target);
    seed->callback([&] { action = [this] { return do_seed(); }; });

    auto* runs = app.add_subcommand("runs", "Run catalogue");
    runs->require_subcommand(1);
    auto* runs_list = runs->add_subcommand("list", "Query runs, newest first");
    runs_list->add_option("--tag", list_tags_, "Required tag (repeatable)");
    runs_list->add_option("--type", list_types_, "Run type (repeatable)");
    runs_list->add_option("--quality", list_quality_, "Run quality (repeatable)");
    runs_list->add_option("--state", list_state_, "Run state (repeatable)");
    runs_list->add_option("--fill", list_fill_, "Fill number");
    runs_list->add_option("--from", list_from_, "Earliest start time (RFC 3339)");
    runs_list->add_option("--to", list_to_, "Latest start time (RFC 3339)");
    runs_list->add_option("--limit", page_.limit, "Page size")->capture_default_str();
    runs_list->add_option("--offset", page_.offset, "Items to skip")->capture_default_str();
    runs_list->callback([&] { action = [this] { return do_runs_list(); }; });

    auto* log = app.add_subcommand("log", "Logbook");
    log->require_subcommand(1);
    auto* log_new = log->add_subcommand("new", "Create a log entry");
    log_new->add_option("--template", log_template_, "Template name");
    log_new->add_option("--set", log_sets_, "Template value as key=value (repeatable)");
    log_new->add_option("--title", log_title_, "Title");
    log_new->add_option("--body-file", log_body_file_, "File holding the body");
    log_new->add_option("--attach", log_attach_, "File to attach (repeatable)");
    log_new->add_option("--run", log_runs_, "Associate a run (repeatable)");
    log_new->add_option("--fill", log_fills_, "Associate a fill (repeatable)");
    log_new->add_option("--pass", log_passes_, "Associate a pass (repeatable)");
    log_new->add_option("--tag", log_tags_, "Tag (repeatable)");
    log_new->callback([&] { action = [this] { return do_log_new(); }; });

    auto* exp = app.add_subcommand("export", "Write a store backup");
    exp->add_option("dir", dir_, "Output directory")->required();
    exp->add_option("--store", store_path_, "Store file; defaults to RUNLOG_STORE");
    exp->callback([&] { action = [this] { return do_export(); }; });

    auto* imp = app.add_subcommand("import", "Restore a backup into an empty store");
    imp->add_option("dir", dir_, "Backup directory")->required()->check(CLI::ExistingDirectory);
    imp->add_option("--store", store_path_, "Store file; defaults to RUNLOG_STORE");
    imp->callback([&] { action = [this] { return do_import(); }; });

    auto* audit = app.add_subcommand("audit", "Audit log");
    audit->require_subcommand(1);
    auto* verify = audit->add_subcommand("verify", "Check audit contiguity and payload digests");
    verify->add_option("--store", store_path_, "Store file; defaults to RUNLOG_STORE");
    verify->callback([&] { action = [this] { return do_audit_verify(); }; });

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, env_.out, env_.err);
      return code == 0 ? kExitOk : kExitUsage;
    }

    try {
      load_config();
      return action();
    } catch (const UsageError& e) {
      env_.err << "usage error: " << e.what() << "\nRun with --help for more information.\n";
      return kExitUsage;
    } catch (const Error& e) {
      env_.err << describe(e) << '\n';
      return kExitDomainError;
    } catch (const std::exception& e) {
      env_.err << "error: " << e.what() << '\n';
      return kExitDomainError;
    }
  }

 private:
  void load_config() {
    try {
      config_ = load_cli_config(default_config_path(env_.env), env_.env);
      if (endpoint_) config_.endpoint = *endpoint_;
      if (token_) config_.token = *token_;
      if (output_) config_.output = *output_;
      client::validate_endpoint(config_.endpoint);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }

  bool raw() const { return config_.output == "raw"; }

  std::unique_ptr<client::Transport> transport(const std::string& endpoint) {
    if (env_.transport) return env_.transport(endpoint);
    return std::make_unique<client::HttpTransport>(endpoint);
  }

  std::filesystem::path store_path() {
    if (store_path_) return *store_path_;
    if (const auto env = env_.env("RUNLOG_STORE")) return *env;
    throw UsageError("no store given; pass --store or set RUNLOG_STORE");
  }

  template <typename F>
  auto local(F&& f) {
    try {
      return f();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }

  int do_serve() {
    auto cfg = service::resolve_config(serve_config_ ? std::optional<std::filesystem::path>(*serve_config_)
                                                     : std::nullopt,
                                       env_.env);
    if (serve_listen_) std::tie(cfg.host, cfg.port) = local([&] { return service::parse_listen(*serve_listen_); });
    store::StoreOptions opts;
    opts.path = cfg.store_path;
    opts.max_attachment_bytes = cfg.max_upload_bytes;
    opts.durable_commits = cfg.durable_commits;
    store::Store st(opts);
    service::Service svc(st, cfg);
    service::HttpServer server(svc);
    server.bind(cfg.host, cfg.port);
    g_stop = false;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server.start();
    env_.out << "listening on " << server.endpoint() << '\n' << std::flush;
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
    return kExitOk;
  }

  int do_seed() {
    const auto dataset = sim::generate(sim_);
    sim::ReplayReport report;
    if (store_path_) {
      store::StoreOptions opts;
      opts.path = *store_path_;
      store::Store st(opts);
      report = sim::replay(dataset, st, ActorRef{"simulator", Role::kMachine});
    } else {
      const auto endpoint = seed_target_.value_or(config_.endpoint);
      local([&] { client::validate_endpoint(endpoint); return 0; });
      auto t = transport(endpoint);
      client::ApiClient api(*t, config_.token);
      report = sim::replay(dataset, api);
    }
    if (raw()) {
      env_.out << sim::to_json(report).dump() << '\n';
    } else {
      env_.out << "generated fills " << dataset.fills.size() << ", runs " << dataset.runs.size() << ", passes "
               << dataset.passes.size() << ", logs " << dataset.logs.size() << '\n'
               << "requests " << report.requests << ", failures " << report.failures.size() << ", elapsed "
               << report.elapsed.count() << " ms\n";
      for (const auto& f : report.failures)
        env_.out << "  #" << f.request << ' ' << f.operation << ": " << f.message << '\n';
    }
    return report.failures.empty() ? kExitOk : kExitDomainError;
  }

  int do_runs_list() {
    api::Params params;
    for (const auto& t : list_tags_) params.emplace("tags", t);
    for (const auto& t : list_types_) params.emplace("type", t);
    for (const auto& q : list_quality_) params.emplace("quality", q);
    for (const auto& s : list_state_) params.emplace("state", s);
    if (list_fill_) params.emplace("fill", std::to_string(*list_fill_));
    if (list_from_) params.emplace("from", *list_from_);
    if (list_to_) params.emplace("to", *list_to_);
    const auto query = local([&] { return service::run_query_from_params(params); });
    local([&] { store::validate(page_); return 0; });

    auto t = transport(config_.endpoint);
    client::ApiClient api(*t, config_.token);
    const auto page = api.list_runs(query, page_);
    if (raw()) env_.out << api.last_body() << '\n';
    else print_runs(env_.out, page);
    return kExitOk;
  }

  int do_log_new() {
    if (!log_template_ && !log_title_) throw UsageError("log new needs --title or --template");
    if (log_template_ && (log_title_ || log_body_file_))
      throw UsageError("--template cannot be combined with --title or --body-file");
    TemplateValues values;
    for (const auto& kv : log_sets_) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + kv + "'");
      values[trim(kv.substr(0, eq))] = kv.substr(eq + 1);
    }
    if (!log_template_ && !values.empty()) throw UsageError("--set only applies with --template");

    store::NewLog payload;
    for (const auto id : log_runs_) payload.associations.push_back({EntityKind::kRun, id});
    for (const auto id : log_fills_) payload.associations.push_back({EntityKind::kFill, id});
    for (const auto id : log_passes_) payload.associations.push_back({EntityKind::kPass, id});
    for (const auto& t : log_tags_) payload.tags.insert(local([&] { return Tag::make(t); }));

    std::vector<std::pair<std::filesystem::path, std::string>> files;
    for (const auto& path : log_attach_) files.emplace_back(path, read_file(path));
    if (log_body_file_) payload.body = read_file(*log_body_file_);

    auto t = transport(config_.endpoint);
    client::ApiClient api(*t, config_.token);
    LogEntry created;
    if (log_template_) {
      created = api.create_log_from_template(*log_template_, values, payload);
    } else {
      payload.title = *log_title_;
      created = api.create_log(payload);
    }
    if (raw()) env_.out << api.last_body() << '\n';
    else env_.out << "log " << created.log_id << " created: " << created.title << '\n';

    for (const auto& [path, bytes] : files) {
      const auto att = api.attach(created.log_id, path.filename().string(), media_type_for(path), bytes);
      if (raw()) env_.out << api.last_body() << '\n';
      else env_.out << "attached " << att.filename << " (" << att.size_bytes << " bytes, " << att.digest << ")\n";
    }
    return kExitOk;
  }

  int do_export() {
    store::StoreOptions opts;
    opts.path = store_path().string();
    store::Store st(opts);
    const auto summary = st.export_to(dir_);
    env_.out << "exported to " << summary.file.string() << ": ";
    print_counts(env_.out, summary.counts);
    return kExitOk;
  }

  int do_import() {
    store::StoreOptions opts;
    opts.path = store_path().string();
    store::Store st(opts);
    const auto summary = st.import_from(dir_);
    env_.out << "imported " << summary.file.string() << ": ";
    print_counts(env_.out, summary.counts);
    return kExitOk;
  }

  int do_audit_verify() {
    const auto path = store_path();
    if (!std::filesystem::exists(path)) fail(ErrorCode::kNotFound, "no store at " + path.string());
    store::StoreOptions opts;
    opts.path = path.string();
    store::Store st(opts);
    const auto report = st.verify_audit();
    const auto integrity = st.check_integrity();
    if (raw()) {
      nlohmann::json j{{"contiguous", report.contiguous},
                       {"count", report.count},
                       {"digest_mismatches", report.digest_mismatches},
                       {"integrity_problems", integrity.problems}};
      if (report.first_gap) j["first_gap"] = *report.first_gap;
      env_.out << j.dump() << '\n';
    } else {
      env_.out << "audit records: " << report.count << '\n'
               << "contiguous: " << (report.contiguous ? "yes" : "no") << '\n';
      if (report.first_gap) env_.out << "first gap at seq " << *report.first_gap << '\n';
      for (const auto seq : report.digest_mismatches) env_.out << "payload digest mismatch at seq " << seq << '\n';
      for (const auto& p : integrity.problems) env_.out << "integrity: " << p << '\n';
      env_.out << (report.ok() && integrity.ok() ? "OK" : "FAILED") << '\n';
    }
    return report.ok() && integrity.ok() ? kExitOk : kExitDomainError;
  }

  CliEnv& env_;
  CliConfig config_;
  std::optional<std::string> endpoint_, token_, output_;

  std::optional<std::string> serve_config_, serve_listen_;

  sim::SimConfig sim_;
  std::optional<std::string> seed_target_;
  std::optional<std::string> store_path_;

  std::vector<std::string> list_tags_, list_types_, list_quality_, list_state_;
  std::optional<std::int64_t> list_fill_;
  std::optional<std::string> list_from_, list_to_;
  store::PageRequest page_;

  std::optional<std::string> log_template_, log_title_, log_body_file_;
  std::vector<std::string> log_sets_, log_attach_, log_tags_;
  std::vector<std::int64_t> log_runs_, log_fills_, log_passes_;

  std::string dir_;
};

}  // namespace

std::optional<std::filesystem::path> default_config_path(const service::EnvLookup& env) {
  const auto home = env("HOME");
  if (!home) return std::nullopt;
  return std::filesystem::path(*home) / ".config" / "runlog" / "config";
}

CliConfig load_cli_config(const std::optional<std::filesystem::path>& file, const service::EnvLookup& env) {
  CliConfig cfg;
  if (file && std::filesystem::exists(*file)) {
    std::ifstream in(*file);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        fail(ErrorCode::kInvalid, file->string() + ":" + std::to_string(number) + ": expected key = value",
             {{"line", number}});
      const auto key = trim(line.substr(0, eq));
      const auto value = trim(line.substr(eq + 1));
      if (key == "endpoint") cfg.endpoint = value;
      else if (key == "token") cfg.token = value;
      else if (key == "output") cfg.output = value;
      else
        fail(ErrorCode::kInvalid, file->string() + ":" + std::to_string(number) + ": unknown key '" + key + "'",
             {{"line", number}, {"field", key}});
    }
  }
  if (const auto endpoint = env("RUNLOG_ENDPOINT")) cfg.endpoint = *endpoint;
  if (const auto token = env("RUNLOG_TOKEN")) cfg.token = *token;
  if (cfg.output != "table" && cfg.output != "raw")
    fail(ErrorCode::kInvalid, "output must be table or raw", {{"field", "output"}});
  client::validate_endpoint(cfg.endpoint);
  return cfg;
}

int run(int argc, const char* const* argv, CliEnv& env) { return Commands(env).run(argc, argv); }

}  // namespace runlog::cli
