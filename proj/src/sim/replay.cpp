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

#include "runlog/sim/replay.hpp"

#include <map>

#include "runlog/domain/errors.hpp"

namespace runlog::sim {

namespace {

// The operations replay needs, once over HTTP and once straight into a store.
class Target {
 public:
  virtual ~Target() = default;
  virtual void create_template(const store::NewTemplate& t) = 0;
  virtual void create_fill(const store::NewFill& f) = 0;
  virtual std::int64_t start_run(const store::NewRun& r) = 0;
  virtual void end_run(std::int64_t run_number, Timestamp end) = 0;
  virtual void set_quality(std::int64_t run_number, Quality q) = 0;
  virtual std::int64_t create_pass(const store::NewPass& p) = 0;
  virtual void set_pass_status(std::int64_t pass_id, PassStatus s) = 0;
  virtual void create_log(const store::NewLog& log) = 0;
  virtual void create_log_from_template(const std::string& name, const TemplateValues& values,
                                        const store::NewLog& extra) = 0;
};

class ApiTarget : public Target {
 public:
  explicit ApiTarget(client::ApiClient& api) : api_(api) {}
  void create_template(const store::NewTemplate& t) override { api_.create_template(t); }
  void create_fill(const store::NewFill& f) override { api_.create_fill(f); }
  std::int64_t start_run(const store::NewRun& r) override { return api_.start_run(r).run_number; }
  void end_run(std::int64_t n, Timestamp end) override { api_.end_run(n, end); }
  void set_quality(std::int64_t n, Quality q) override { api_.set_quality(n, q); }
  std::int64_t create_pass(const store::NewPass& p) override { return api_.create_pass(p).pass_id; }
  void set_pass_status(std::int64_t id, PassStatus s) override { api_.set_pass_status(id, s); }
  void create_log(const store::NewLog& log) override { api_.create_log(log); }
  void create_log_from_template(const std::string& name, const TemplateValues& values,
                                const store::NewLog& extra) override {
    api_.create_log_from_template(name, values, extra);
  }

 private:
  client::ApiClient& api_;
};

class StoreTarget : public Target {
 public:
  StoreTarget(store::Store& store, ActorRef actor) : store_(store), actor_(std::move(actor)) {}
  void create_template(const store::NewTemplate& t) override { store_.create_template(t, actor_); }
  void create_fill(const store::NewFill& f) override { store_.create_fill(f, actor_); }
  std::int64_t start_run(const store::NewRun& r) override { return store_.create_run(r, actor_).run_number; }
  void end_run(std::int64_t n, Timestamp end) override { store_.mutate_run(n, EndRun{end}, actor_); }
  void set_quality(std::int64_t n, Quality q) override { store_.mutate_run(n, SetQuality{q}, actor_); }
  std::int64_t create_pass(const store::NewPass& p) override { return store_.create_pass(p, actor_).pass_id; }
  void set_pass_status(std::int64_t id, PassStatus s) override { store_.set_pass_status(id, s, actor_); }
  void create_log(const store::NewLog& log) override { store_.create_log(log, actor_); }
  void create_log_from_template(const std::string& name, const TemplateValues& values,
                                const store::NewLog& extra) override {
    auto rendered = render_template(store_.get_template(name), values);
    auto log = extra;
    log.title = std::move(rendered.title);
    log.body = std::move(rendered.body);
    log.tags.merge(rendered.tags);
    store_.create_log(log, actor_);
  }

 private:
  store::Store& store_;
  ActorRef actor_;
};

class Replayer {
 public:
  explicit Replayer(Target& target) : target_(target) {}

  ReplayReport run(const SimDataset& ds) {
    const auto started = std::chrono::steady_clock::now();
    for (const auto& t : ds.templates) attempt("create_template", [&] { target_.create_template(t); });
    for (const auto& f : ds.fills) attempt("create_fill", [&] { target_.create_fill(f); });

    for (std::size_t i = 0; i < ds.runs.size(); ++i) {
      const auto& sim = ds.runs[i];
      std::int64_t number = 0;
      if (!attempt("start_run", [&] { number = target_.start_run(sim.run); })) continue;
      run_ids_[static_cast<std::int64_t>(i + 1)] = number;
      attempt("end_run", [&] { target_.end_run(number, sim.end_time); });
      if (sim.quality != Quality::kUnknown) attempt("set_quality", [&] { target_.set_quality(number, sim.quality); });
    }

    for (std::size_t i = 0; i < ds.passes.size(); ++i) {
      const auto& sim = ds.passes[i];
      auto payload = sim.pass;
      const auto input = map(payload.input);
      if (!input) {
        skip("create_pass", "input " + to_string(payload.input) + " was not created");
        continue;
      }
      payload.input = *input;
      std::int64_t id = 0;
      if (!attempt("create_pass", [&] { id = target_.create_pass(payload); })) continue;
      pass_ids_[static_cast<std::int64_t>(i + 1)] = id;
      if (sim.final_status == PassStatus::kPending) continue;
      if (!attempt("set_pass_status", [&] { target_.set_pass_status(id, PassStatus::kRunning); })) continue;
      if (sim.final_status != PassStatus::kRunning)
        attempt("set_pass_status", [&] { target_.set_pass_status(id, sim.final_status); });
    }

    for (const auto& sim : ds.logs) {
      auto payload = sim.log;
      bool complete = true;
      for (auto& ref : payload.associations) {
        const auto mapped = map(ref);
        if (!mapped) complete = false;
        else ref = *mapped;
      }
      if (!complete) {
        skip("create_log", "an associated entity was not created");
        continue;
      }
      if (sim.template_name) {
        attempt("create_log", [&] { target_.create_log_from_template(*sim.template_name, sim.values, payload); });
      } else {
        attempt("create_log", [&] { target_.create_log(payload); });
      }
    }

    report_.elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    return std::move(report_);
  }

 private:
  template <typename F>
  bool attempt(const char* operation, F&& f) {
    ++report_.requests;
    try {
      f();
      return true;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kConnectionFailed) throw;
      report_.failures.push_back({report_.requests, operation, e.what()});
      return false;
    }
  }

  void skip(const char* operation, const std::string& why) {
    report_.failures.push_back({report_.requests, operation, "skipped: " + why});
  }

  std::optional<EntityRef> map(const EntityRef& ref) const {
    const auto lookup = [&](const std::map<std::int64_t, std::int64_t>& ids) -> std::optional<EntityRef> {
      const auto it = ids.find(ref.id);
      if (it == ids.end()) return std::nullopt;
      return EntityRef{ref.kind, it->second};
    };
    switch (ref.kind) {
      case EntityKind::kRun: return lookup(run_ids_);
      case EntityKind::kPass: return lookup(pass_ids_);
      default: return ref;
    }
  }

  Target& target_;
  ReplayReport report_;
  std::map<std::int64_t, std::int64_t> run_ids_;
  std::map<std::int64_t, std::int64_t> pass_ids_;
};

}  // namespace

nlohmann::json to_json(const ReplayReport& report) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : report.failures)
    failures.push_back({{"request", f.request}, {"operation", f.operation}, {"message", f.message}});
  return {{"requests", report.requests}, {"failures", failures}, {"elapsed_ms", report.elapsed.count()}};
}

ReplayReport replay(const SimDataset& dataset, client::ApiClient& api) {
  ApiTarget target(api);
  return Replayer(target).run(dataset);
}

ReplayReport replay(const SimDataset& dataset, store::Store& store, const ActorRef& actor) {
  StoreTarget target(store, actor);
  return Replayer(target).run(dataset);
}

}  // namespace runlog::sim
