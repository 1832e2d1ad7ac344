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

#include "support/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "support/json_schema.hpp"

namespace runlog::testing {

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

template <typename T>
store::Page<T> slice(std::vector<T> items, const store::PageRequest& page) {
  store::Page<T> out;
  out.total = static_cast<std::int64_t>(items.size());
  out.offset = page.offset;
  out.limit = page.limit;
  for (std::int64_t i = page.offset; i < out.total && i < page.offset + page.limit; ++i)
    out.items.push_back(items[static_cast<std::size_t>(i)]);
  return out;
}

Timestamp random_time(std::mt19937_64& rng, Timestamp lo, Timestamp hi) {
  const auto span = (hi - lo).count();
  return lo + Millis(pick(rng, 0, span));
}

template <typename E>
std::set<E> random_subset(std::mt19937_64& rng) {
  const auto& all = all_values<E>();
  std::set<E> out;
  while (out.empty())
    for (const auto v : all)
      if (coin(rng, 0.4)) out.insert(v);
  return out;
}

}  // namespace

Timestamp ts(std::string_view text) { return parse_timestamp(text); }

store::Clock stepping_clock(Timestamp start, Millis step) {
  auto ticks = std::make_shared<std::atomic<std::int64_t>>(0);
  return [=] { return start + step * ticks->fetch_add(1); };
}

store::StoreOptions memory_options() {
  store::StoreOptions opts;
  opts.clock = stepping_clock(ts("2024-06-01T00:00:00Z"));
  return opts;
}

TempDir::TempDir() {
  std::string tmpl = (std::filesystem::temp_directory_path() / "runlog-test-XXXXXX").string();
  if (::mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

service::ServiceConfig test_service_config() {
  service::ServiceConfig cfg;
  cfg.tokens = {{kShifterToken, kShifter}, {kPhysicistToken, kPhysicist}, {kMachineToken, kMachine}};
  cfg.max_upload_bytes = 1 << 20;
  return cfg;
}

Harness::Harness(store::StoreOptions options)
    : store_(std::make_unique<store::Store>(std::move(options))),
      service_(std::make_unique<service::Service>(*store_, test_service_config())),
      inproc_(std::make_unique<client::InProcessTransport>(*service_)),
      recorder_(*inproc_),
      api_(std::make_unique<client::ApiClient>(recorder_, std::string(kMachineToken))) {}

api::Response Harness::send(const std::string& method, const std::string& path, const nlohmann::json& body,
                            const std::optional<std::string>& token, api::Params query) {
  api::Request req;
  req.method = method;
  req.path = std::string(service::kApiPrefix) + path;
  req.query = std::move(query);
  if (!body.is_null()) {
    req.body = body.is_string() ? body.get<std::string>() : body.dump();
    req.content_type = "application/json";
  }
  if (token) req.headers["authorization"] = "Bearer " + *token;
  return recorder_.send(req);
}

std::vector<std::string> Harness::schema_errors() const {
  std::vector<std::string> errors;
  const auto& doc = service_->openapi();
  for (const auto& ex : recorder_.exchanges()) {
    auto e = check_exchange(doc, ex.request.method, ex.request.path, ex.response.status, ex.response.content_type,
                            ex.response.body);
    errors.insert(errors.end(), e.begin(), e.end());
  }
  return errors;
}

bool oracle_run_matches(const Run& run, const RunQuery& q) {
  if (q.run_number_range &&
      (run.run_number < q.run_number_range->min || run.run_number > q.run_number_range->max))
    return false;
  if (q.time_range && (run.start_time < q.time_range->min || run.start_time > q.time_range->max)) return false;
  if (q.run_types && q.run_types->count(run.run_type) == 0) return false;
  if (q.qualities && q.qualities->count(run.quality) == 0) return false;
  if (q.states && q.states->count(run.state) == 0) return false;
  if (q.fill_number && run.fill_number != q.fill_number) return false;
  if (q.tags_all)
    for (const auto& t : *q.tags_all)
      if (run.tags.count(t) == 0) return false;
  return true;
}

bool oracle_log_matches(const LogEntry& log, const LogQuery& q) {
  if (q.text) {
    const auto haystack = lower(log.title) + " " + lower(log.body);
    for (const auto& token : *q.text)
      if (haystack.find(lower(token)) == std::string::npos) return false;
  }
  if (q.tags_all)
    for (const auto& t : *q.tags_all)
      if (log.tags.count(t) == 0) return false;
  if (q.author && log.author.actor_id != *q.author) return false;
  if (q.association &&
      std::find(log.associations.begin(), log.associations.end(), *q.association) == log.associations.end())
    return false;
  if (q.time_range && (log.created_at < q.time_range->min || log.created_at > q.time_range->max)) return false;
  return true;
}

store::Page<Run> oracle_list_runs(const std::vector<Run>& all, const RunQuery& q, const store::PageRequest& page) {
  std::vector<Run> hits;
  for (const auto& r : all)
    if (oracle_run_matches(r, q)) hits.push_back(r);
  std::sort(hits.begin(), hits.end(), [](const Run& a, const Run& b) { return a.run_number > b.run_number; });
  return slice(std::move(hits), page);
}

store::Page<LogEntry> oracle_list_logs(const std::vector<LogEntry>& all, const LogQuery& q,
                                       const store::PageRequest& page) {
  std::vector<LogEntry> hits;
  for (const auto& l : all)
    if (oracle_log_matches(l, q)) hits.push_back(l);
  std::sort(hits.begin(), hits.end(), [](const LogEntry& a, const LogEntry& b) { return a.log_id > b.log_id; });
  return slice(std::move(hits), page);
}

std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Corpus build_random_corpus(Harness& h, std::mt19937_64& rng, int runs, int logs) {
  Corpus c;
  c.earliest = ts("2024-01-01T00:00:00Z");
  auto clock = c.earliest;
  auto& api = h.api();
  const int n_fills = std::max(1, runs / 25);
  for (int f = 0; f < n_fills; ++f) {
    store::NewFill fill;
    fill.fill_number = 9000 + f;
    fill.beam_type = coin(rng) ? "p-p" : "Pb-Pb";
    fill.created_at = clock;
    c.fills.push_back(api.create_fill(fill));
  }
  for (int i = 0; i < runs; ++i) {
    clock += Millis(pick(rng, 1000, 3'600'000));
    store::NewRun n;
    n.run_type = all_values<RunType>()[static_cast<std::size_t>(pick(rng, 0, 3))];
    n.start_time = clock;
    if (coin(rng, 0.8)) n.fill_number = c.fills[static_cast<std::size_t>(pick(rng, 0, n_fills - 1))].fill_number;
    n.configuration = {{"detectors", coin(rng) ? "tpc" : "its"}};
    for (const auto& t : kTagPool)
      if (coin(rng, 0.25)) n.tags.insert(Tag::make(t));
    auto run = api.start_run(n);
    if (coin(rng, 0.7)) run = api.end_run(run.run_number, clock + Millis(pick(rng, 0, 200'000'000)));
    if (coin(rng, 0.6)) run = api.set_quality(run.run_number, coin(rng) ? Quality::kGood : Quality::kBad);
    c.runs.push_back(run);
    if (coin(rng, 0.1)) {
      store::NewPass p;
      p.name = "pass-" + std::to_string(i);
      p.input = {EntityKind::kRun, run.run_number};
      p.created_at = clock;
      c.passes.push_back(api.create_pass(p));
    }
  }
  const char* tokens[] = {kShifterToken, kPhysicistToken, kMachineToken};
  for (int i = 0; i < logs; ++i) {
    clock += Millis(pick(rng, 1000, 600'000));
    store::NewLog n;
    n.created_at = clock;
    const auto words = pick(rng, 1, 6);
    n.title = kWordPool[static_cast<std::size_t>(pick(rng, 0, kWordPool.size() - 1))];
    for (std::int64_t w = 0; w < words; ++w) {
      if (w) n.body += ' ';
      n.body += kWordPool[static_cast<std::size_t>(pick(rng, 0, kWordPool.size() - 1))];
    }
    for (const auto& t : kTagPool)
      if (coin(rng, 0.2)) n.tags.insert(Tag::make(t));
    const auto assoc = pick(rng, 0, 2);
    for (std::int64_t a = 0; a < assoc; ++a) {
      const auto kind = pick(rng, 0, c.passes.empty() ? 1 : 2);
      if (kind == 0) n.associations.push_back({EntityKind::kRun, c.runs[static_cast<std::size_t>(pick(rng, 0, c.runs.size() - 1))].run_number});
      if (kind == 1) n.associations.push_back({EntityKind::kFill, c.fills[static_cast<std::size_t>(pick(rng, 0, c.fills.size() - 1))].fill_number});
      if (kind == 2) n.associations.push_back({EntityKind::kPass, c.passes[static_cast<std::size_t>(pick(rng, 0, c.passes.size() - 1))].pass_id});
    }
    auto client = h.client_for(tokens[pick(rng, 0, 2)]);
    c.logs.push_back(client.create_log(n));
  }
  c.latest = clock;
  return c;
}

RunQuery random_run_query(std::mt19937_64& rng, const Corpus& c) {
  RunQuery q;
  if (coin(rng, 0.3)) {
    auto a = pick(rng, 0, static_cast<std::int64_t>(c.runs.size()) + 2);
    auto b = pick(rng, 0, static_cast<std::int64_t>(c.runs.size()) + 2);
    if (a > b) std::swap(a, b);
    q.run_number_range = Range<std::int64_t>{a, b};
  }
  if (coin(rng, 0.3)) {
    auto a = random_time(rng, c.earliest, c.latest);
    auto b = random_time(rng, c.earliest, c.latest);
    if (b < a) std::swap(a, b);
    q.time_range = Range<Timestamp>{a, b};
  }
  if (coin(rng, 0.3)) q.run_types = random_subset<RunType>(rng);
  if (coin(rng, 0.3)) q.qualities = random_subset<Quality>(rng);
  if (coin(rng, 0.2)) q.states = random_subset<RunState>(rng);
  if (coin(rng, 0.2))
    q.fill_number = coin(rng, 0.9) ? c.fills[static_cast<std::size_t>(pick(rng, 0, c.fills.size() - 1))].fill_number
                                   : 1;
  if (coin(rng, 0.4)) {
    TagSet tags;
    const auto n = pick(rng, 1, 2);
    for (std::int64_t i = 0; i < n; ++i) tags.insert(Tag::make(kTagPool[static_cast<std::size_t>(pick(rng, 0, kTagPool.size() - 1))]));
    q.tags_all = tags;
  }
  return q;
}

LogQuery random_log_query(std::mt19937_64& rng, const Corpus& c) {
  LogQuery q;
  if (coin(rng, 0.5)) {
    std::vector<std::string> tokens;
    const auto n = pick(rng, 1, 2);
    for (std::int64_t i = 0; i < n; ++i) {
      auto word = kWordPool[static_cast<std::size_t>(pick(rng, 0, kWordPool.size() - 1))];
      if (coin(rng, 0.3)) word = lower(word);
      else if (coin(rng, 0.2)) word = word.substr(0, std::max<std::size_t>(1, word.size() - 1));
      tokens.push_back(word);
    }
    q.text = tokens;
  }
  if (coin(rng, 0.3)) q.tags_all = TagSet{Tag::make(kTagPool[static_cast<std::size_t>(pick(rng, 0, kTagPool.size() - 1))])};
  if (coin(rng, 0.3)) {
    const char* authors[] = {"alice", "bob", "detector", "nobody"};
    q.author = authors[pick(rng, 0, 3)];
  }
  if (coin(rng, 0.3)) {
    const auto kind = pick(rng, 0, 2);
    if (kind == 0) q.association = EntityRef{EntityKind::kRun, c.runs[static_cast<std::size_t>(pick(rng, 0, c.runs.size() - 1))].run_number};
    else if (kind == 1) q.association = EntityRef{EntityKind::kFill, c.fills[static_cast<std::size_t>(pick(rng, 0, c.fills.size() - 1))].fill_number};
    else q.association = EntityRef{EntityKind::kPass, c.passes.empty() ? 1 : c.passes[static_cast<std::size_t>(pick(rng, 0, c.passes.size() - 1))].pass_id};
  }
  if (coin(rng, 0.3)) {
    auto a = random_time(rng, c.earliest, c.latest);
    auto b = random_time(rng, c.earliest, c.latest);
    if (b < a) std::swap(a, b);
    q.time_range = Range<Timestamp>{a, b};
  }
  return q;
}

store::PageRequest random_page(std::mt19937_64& rng, std::int64_t total) {
  store::PageRequest p;
  p.offset = coin(rng, 0.6) ? 0 : pick(rng, 0, total + 5);
  const std::int64_t limits[] = {1, 3, 10, 50, 100, 1000};
  p.limit = coin(rng, 0.2) ? pick(rng, 1, 40) : limits[pick(rng, 0, 5)];
  return p;
}

std::string test_data_dir() { return RUNLOG_TEST_DATA_DIR; }

}  // namespace runlog::testing
