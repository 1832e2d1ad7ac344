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

#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "runlog/service/config.hpp"
#include "runlog/service/params.hpp"
#include "support/fixtures.hpp"

namespace runlog::service {
namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInternal;
}

TEST(Params, ParsesRunFilters) {
  const api::Params p{{"type", "global,cosmics"}, {"type", "TECHNICAL"}, {"quality", "GOOD"},
                      {"tags", "TPC,its"},        {"fill", "7001"},      {"run_min", "3"},
                      {"from", "2024-01-01T00:00:00Z"}};
  const auto q = run_query_from_params(p);
  EXPECT_EQ(q.run_types, (std::set<RunType>{RunType::kGlobal, RunType::kCosmics, RunType::kTechnical}));
  EXPECT_EQ(q.qualities, (std::set<Quality>{Quality::kGood}));
  EXPECT_EQ(q.tags_all, (TagSet{Tag::make("tpc"), Tag::make("its")}));
  EXPECT_EQ(q.fill_number, 7001);
  EXPECT_EQ(q.run_number_range->min, 3);
  EXPECT_EQ(q.run_number_range->max, std::numeric_limits<std::int64_t>::max());
  EXPECT_EQ(q.time_range->max, max_timestamp());
  EXPECT_FALSE(q.states.has_value());
}

TEST(Params, RejectsBadValues) {
  EXPECT_EQ(code_of([] { run_query_from_params({{"fill", "x"}}); }), ErrorCode::kInvalid);
  EXPECT_EQ(code_of([] { run_query_from_params({{"type", "PARTY"}}); }), ErrorCode::kInvalid);
  EXPECT_EQ(code_of([] { run_query_from_params({{"from", "yesterday"}}); }), ErrorCode::kInvalid);
  EXPECT_EQ(code_of([] { run_query_from_params({{"run_min", "9"}, {"run_max", "2"}}); }), ErrorCode::kInvalidQuery);
  EXPECT_EQ(code_of([] { log_query_from_params({{"association", "RUN"}}); }), ErrorCode::kInvalid);
  EXPECT_EQ(code_of([] { page_from_params({{"limit", "0"}}); }), ErrorCode::kInvalidQuery);
  EXPECT_EQ(code_of([] { page_from_params({{"offset", "-1"}}); }), ErrorCode::kInvalidQuery);
  EXPECT_EQ(code_of([] { page_from_params({{"limit", "12abc"}}); }), ErrorCode::kInvalid);
}

TEST(Params, BlankTextIsNoFilter) {
  EXPECT_FALSE(log_query_from_params({{"text", "   "}}).text.has_value());
  EXPECT_EQ(log_query_from_params({{"text", "beam  dump"}}).text, (std::vector<std::string>{"beam", "dump"}));
}

TEST(Params, PageDefaults) {
  const auto page = page_from_params({});
  EXPECT_EQ(page.offset, 0);
  EXPECT_EQ(page.limit, store::kDefaultPageLimit);
}

TEST(ParamsProperty, QueriesRoundTripThroughParams) {
  testing::Corpus corpus;
  corpus.earliest = testing::ts("2024-01-01T00:00:00Z");
  corpus.latest = testing::ts("2024-02-01T00:00:00Z");
  for (int f = 1; f <= 3; ++f) corpus.fills.push_back({f, {}, {}, "", corpus.earliest});
  for (int r = 1; r <= 20; ++r) {
    runlog::Run run;
    run.run_number = r;
    corpus.runs.push_back(run);
    LogEntry log;
    log.log_id = r;
    log.author = testing::kShifter;
    corpus.logs.push_back(log);
  }
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    const auto rq = testing::random_run_query(rng, corpus);
    ASSERT_EQ(run_query_from_params(to_params(rq)), rq);
    auto lq = testing::random_log_query(rng, corpus);
    ASSERT_EQ(log_query_from_params(to_params(lq)), lq);
  }
}

TEST(Encoding, UrlEncodeEscapesReserved) {
  EXPECT_EQ(api::url_encode("a b&c=d/é"), "a%20b%26c%3Dd%2F%C3%A9");
  EXPECT_EQ(api::url_encode("A-z_0.~"), "A-z_0.~");
  EXPECT_EQ(api::encode_query({{"a", "1"}, {"b", "x y"}}), "a=1&b=x%20y");
}

TEST(Config, ParsesListen) {
  EXPECT_EQ(parse_listen("0.0.0.0:9000"), (std::pair<std::string, int>{"0.0.0.0", 9000}));
  EXPECT_EQ(code_of([] { parse_listen("nohost"); }), ErrorCode::kInvalid);
  EXPECT_EQ(code_of([] { parse_listen(":80"); }), ErrorCode::kInvalid);
  EXPECT_EQ(code_of([] { parse_listen("h:70000"); }), ErrorCode::kInvalid);
}

TEST(Config, LoadsFileAndAppliesEnvironment) {
  testing::TempDir dir;
  const auto path = dir / "server.json";
  std::ofstream(path) << R"({"listen":"127.0.0.1:9100","store":"x.db","max_upload_bytes":1024,
    "durable_commits":false,
    "tokens":[{"token":"t1","actor_id":"alice","role":"shifter"}]})";
  std::map<std::string, std::string> env{{"RUNLOG_CONFIG", path.string()}, {"RUNLOG_STORE", "y.db"}};
  const EnvLookup lookup = [&](const std::string& k) -> std::optional<std::string> {
    const auto it = env.find(k);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  const auto cfg = resolve_config(std::nullopt, lookup);
  EXPECT_EQ(cfg.port, 9100);
  EXPECT_EQ(cfg.store_path, "y.db");
  EXPECT_EQ(cfg.max_upload_bytes, 1024u);
  EXPECT_FALSE(cfg.durable_commits);
  EXPECT_EQ(cfg.tokens.at("t1"), (ActorRef{"alice", Role::kShifter}));

  env["RUNLOG_LISTEN"] = "localhost:1";
  EXPECT_EQ(resolve_config(path, lookup).host, "localhost");
  env.clear();
  EXPECT_EQ(resolve_config(std::nullopt, lookup).port, 8080);
}

TEST(Config, BadFilesAreRejected) {
  testing::TempDir dir;
  EXPECT_EQ(code_of([&] { load_config(dir / "missing.json"); }), ErrorCode::kNotFound);
  std::ofstream(dir / "bad.json") << "{not json";
  EXPECT_EQ(code_of([&] { load_config(dir / "bad.json"); }), ErrorCode::kInvalid);
  std::ofstream(dir / "role.json") << R"({"tokens":[{"token":"t","actor_id":"a","role":"KING"}]})";
  EXPECT_EQ(code_of([&] { load_config(dir / "role.json"); }), ErrorCode::kInvalid);
  std::ofstream(dir / "size.json") << R"({"max_upload_bytes":0})";
  EXPECT_EQ(code_of([&] { load_config(dir / "size.json"); }), ErrorCode::kInvalid);
}

}  // namespace
}  // namespace runlog::service
