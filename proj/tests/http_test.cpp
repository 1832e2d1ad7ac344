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

#include <thread>

#include "runlog/client/api_client.hpp"
#include "runlog/service/http_server.hpp"
#include "support/fixtures.hpp"
#include "support/json_schema.hpp"

namespace runlog::service {
namespace {

class HttpTest : public ::testing::Test {
 protected:
  HttpTest() : store_(testing::memory_options()), service_(store_, testing::test_service_config()), server_(service_) {
    server_.bind("127.0.0.1", 0);
    server_.start();
  }
  ~HttpTest() override { server_.stop(); }

  store::Store store_;
  Service service_;
  HttpServer server_;
};

TEST_F(HttpTest, BindsAnEphemeralPort) {
  EXPECT_GT(server_.port(), 0);
  EXPECT_EQ(server_.endpoint(), "http://127.0.0.1:" + std::to_string(server_.port()));
}

TEST_F(HttpTest, TypedClientOverTheWire) {
  client::HttpTransport http(server_.endpoint());
  client::RecordingTransport rec(http);
  client::ApiClient api(rec, std::string(testing::kShifterToken));
  api.create_fill({7001, std::nullopt, std::nullopt, "pp", std::nullopt});
  const auto run = api.start_run({RunType::kCosmics, std::nullopt, 7001, {{"k", "v w"}}, {Tag::make("tpc")}});
  EXPECT_EQ(api.get_run(run.run_number), run);
  api.add_tag(run.run_number, Tag::make("with.dot"));
  api.remove_tag(run.run_number, Tag::make("with.dot"));
  api.end_run(run.run_number);
  RunQuery q;
  q.tags_all = TagSet{Tag::make("tpc")};
  q.time_range = Range<Timestamp>{from_unix_millis(0), max_timestamp()};
  EXPECT_EQ(api.list_runs(q).total, 1);
  LogQuery lq;
  lq.text = std::vector<std::string>{"a&b", "c=d"};
  store::NewLog log;
  log.title = "a&b c=d ü";
  api.create_log(log);
  EXPECT_EQ(api.list_logs(lq).total, 1);
  EXPECT_EQ(api.health().at("status"), "ok");

  std::string problems;
  for (const auto& ex : rec.exchanges())
    for (const auto& e : testing::check_exchange(service_.openapi(), ex.request.method, ex.request.path,
                                                 ex.response.status, ex.response.content_type, ex.response.body))
      problems += e + "\n";
  EXPECT_TRUE(problems.empty()) << problems;
}

TEST_F(HttpTest, MultipartRoundTripPreservesBinary) {
  client::HttpTransport http(server_.endpoint());
  client::ApiClient api(http, std::string(testing::kShifterToken));
  store::NewLog log;
  log.title = "binary";
  const auto created = api.create_log(log);
  std::string bytes;
  for (int i = 0; i < 256 * 40; ++i) bytes.push_back(static_cast<char>(i % 256));
  const auto meta = api.attach(created.log_id, "dump.bin", "application/x-custom", bytes);
  EXPECT_EQ(meta.size_bytes, bytes.size());
  const auto [got, type] = api.download(meta.digest);
  EXPECT_EQ(got, bytes);
  EXPECT_EQ(type, "application/x-custom");
  EXPECT_EQ(api.get_log(created.log_id).attachments.size(), 1u);
}

TEST_F(HttpTest, OversizedUploadIs413) {
  client::HttpTransport http(server_.endpoint());
  client::ApiClient api(http, std::string(testing::kShifterToken));
  store::NewLog log;
  log.title = "big";
  const auto created = api.create_log(log);
  try {
    api.attach(created.log_id, "big.bin", "", std::string(1024 * 1024 + 10, 'z'));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
    EXPECT_EQ(e.detail().at("status"), 413);
  }
  EXPECT_EQ(store_.counts().blobs, 0);
}

TEST_F(HttpTest, UnknownTokenIs401OverTheWire) {
  client::HttpTransport http(server_.endpoint());
  api::Request req;
  req.method = "GET";
  req.path = "/api/v1/runs";
  req.headers["authorization"] = "Bearer nope";
  const auto r = http.send(req);
  EXPECT_EQ(r.status, 401);
  EXPECT_EQ(r.json().at("code"), "UNAUTHORIZED");
  req.path = "/elsewhere";
  EXPECT_EQ(http.send(req).status, 404);
}

TEST_F(HttpTest, ConcurrentClientsGetDistinctRunNumbers) {
  std::vector<std::thread> threads;
  std::vector<std::vector<std::int64_t>> ids(4);
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      client::HttpTransport http(server_.endpoint());
      client::ApiClient api(http, std::string(testing::kMachineToken));
      for (int i = 0; i < 25; ++i) ids[t].push_back(api.start_run({}).run_number);
    });
  }
  for (auto& th : threads) th.join();
  std::set<std::int64_t> all;
  for (const auto& v : ids) all.insert(v.begin(), v.end());
  EXPECT_EQ(all.size(), 100u);
  EXPECT_TRUE(store_.verify_audit().ok());
}

TEST(Http, DownEndpointIsConnectionFailed) {
  int port = 0;
  {
    store::Store st(testing::memory_options());
    Service svc(st, testing::test_service_config());
    HttpServer server(svc);
    port = server.bind("127.0.0.1", 0);
  }
  client::HttpTransport http("http://127.0.0.1:" + std::to_string(port));
  client::ApiClient api(http);
  try {
    api.health();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConnectionFailed);
  }
}

TEST(Http, EndpointValidation) {
  EXPECT_NO_THROW(client::validate_endpoint("http://localhost:8080"));
  EXPECT_NO_THROW(client::validate_endpoint("http://10.0.0.1/"));
  EXPECT_THROW(client::validate_endpoint("https://x"), Error);
  EXPECT_THROW(client::validate_endpoint("localhost:8080"), Error);
  EXPECT_THROW(client::validate_endpoint("http://host:8080/api"), Error);
}

}  // namespace
}  // namespace runlog::service
