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

#include <random>

#include "runlog/client/api_client.hpp"
#include "runlog/service/params.hpp"
#include "runlog/service/service.hpp"
#include "support/fixtures.hpp"
#include "support/json_schema.hpp"

namespace runlog::service {
namespace {

using nlohmann::json;
using testing::Harness;

std::string flat(const std::vector<std::string>& errors) {
  std::string out;
  for (const auto& e : errors) out += e + "\n";
  return out;
}

void expect_envelope(const api::Response& r, int status, const std::string& code, const std::string& error = "") {
  EXPECT_EQ(r.status, status) << r.body;
  const auto body = r.json();
  EXPECT_EQ(body.at("code"), code) << r.body;
  EXPECT_TRUE(body.at("message").is_string());
  if (!error.empty()) {
    EXPECT_EQ(body.at("detail").at("error"), error) << r.body;
  }
}

json new_run(std::optional<std::int64_t> fill = std::nullopt) {
  json b{{"run_type", "GLOBAL"}};
  if (fill) b["fill_number"] = *fill;
  return b;
}

TEST(ErrorMapping, StatusesFollowTheTable) {
  EXPECT_EQ(http_status(ErrorCode::kNotFound), 404);
  EXPECT_EQ(http_status(ErrorCode::kUnknownReference), 404);
  EXPECT_EQ(http_status(ErrorCode::kUnknownDigest), 404);
  EXPECT_EQ(http_status(ErrorCode::kConflict), 409);
  EXPECT_EQ(http_status(ErrorCode::kInvalidTransition), 409);
  EXPECT_EQ(http_status(ErrorCode::kInvalidTimestamps), 422);
  EXPECT_EQ(http_status(ErrorCode::kInvalid), 400);
  EXPECT_EQ(http_status(ErrorCode::kMissingField), 400);
  EXPECT_EQ(http_status(ErrorCode::kUnauthorized), 401);
  EXPECT_EQ(http_status(ErrorCode::kTooLarge), 413);
  EXPECT_EQ(http_status(ErrorCode::kCorruptLineage), 500);
  EXPECT_EQ(envelope_code(ErrorCode::kInvalidTransition), "CONFLICT");
  EXPECT_EQ(envelope_code(ErrorCode::kParseError), "INVALID");
  EXPECT_EQ(envelope_code(ErrorCode::kBrokenLineage), "INTERNAL");
}

TEST(PathMatching, CapturesNamedSegments) {
  std::map<std::string, std::string> caps;
  EXPECT_TRUE(match_path("/runs/{runNumber}/tags/{tag}", "/runs/12/tags/tpc", caps));
  EXPECT_EQ(caps.at("runNumber"), "12");
  EXPECT_EQ(caps.at("tag"), "tpc");
  caps.clear();
  EXPECT_FALSE(match_path("/runs/{runNumber}", "/runs/12/tags", caps));
  EXPECT_FALSE(match_path("/runs", "/fills", caps));
}

// --- the documented examples ---------------------------------------------------------

TEST(Service, StartRunThenSearchByTag) {
  Harness h;
  auto b = new_run();
  b["tags"] = {"TPC"};
  const auto created = h.send("POST", "/runs", b);
  ASSERT_EQ(created.status, 201) << created.body;
  EXPECT_EQ(created.json().at("run_number"), 1);
  EXPECT_EQ(created.json().at("state"), "ONGOING");
  const auto found = h.send("GET", "/runs", nullptr, testing::kShifterToken, {{"tags", "tpc"}});
  ASSERT_EQ(found.status, 200);
  EXPECT_EQ(found.json().at("total"), 1);
  EXPECT_EQ(found.json().at("items").at(0).at("tags"), json::array({"tpc"}));
  EXPECT_TRUE(flat(h.schema_errors()).empty()) << flat(h.schema_errors());
}

TEST(Service, EndingTwiceIsConflict) {
  Harness h;
  h.send("POST", "/runs", new_run());
  const auto first = h.send("PATCH", "/runs/1", json{{"end", json::object()}});
  ASSERT_EQ(first.status, 200) << first.body;
  EXPECT_EQ(first.json().at("state"), "ENDED");
  expect_envelope(h.send("PATCH", "/runs/1", json{{"end", json::object()}}), 409, "CONFLICT", "InvalidTransition");
}

TEST(Service, EndBeforeStartIs422) {
  Harness h;
  auto b = new_run();
  b["start_time"] = "2024-06-01T12:00:00Z";
  h.send("POST", "/runs", b);
  expect_envelope(h.send("PATCH", "/runs/1", json{{"end", {{"end_time", "2024-06-01T11:00:00Z"}}}}), 422,
                  "INVALID", "InvalidTimestamps");
}

TEST(Service, PatchRunNeedsExactlyOneEvent) {
  Harness h;
  h.send("POST", "/runs", new_run());
  expect_envelope(h.send("PATCH", "/runs/1", json::object()), 400, "INVALID");
  expect_envelope(h.send("PATCH", "/runs/1", json{{"end", json::object()}, {"quality", "GOOD"}}), 400, "INVALID");
  EXPECT_EQ(h.send("PATCH", "/runs/1", json{{"quality", "good"}}).json().at("quality"), "GOOD");
}

TEST(Service, TagsAddAndRemove) {
  Harness h;
  h.send("POST", "/runs", new_run());
  EXPECT_EQ(h.send("POST", "/runs/1/tags", json{{"tag", "ITS"}}).json().at("tags"), json::array({"its"}));
  EXPECT_EQ(h.send("DELETE", "/runs/1/tags/its").json().at("tags"), json::array());
  expect_envelope(h.send("DELETE", "/runs/1/tags/its"), 404, "NOT_FOUND", "NotFound");
  expect_envelope(h.send("POST", "/runs/1/tags", json{{"tag", "no spaces"}}), 400, "INVALID");
}

TEST(Service, TemplateMissingFieldNamesIt) {
  Harness h;
  const auto tpl = h.send("POST", "/templates",
                          json{{"template_name", "eos"},
                               {"title_pattern", "EOS {{shift}}"},
                               {"body_pattern", "by {{shifter}}"},
                               {"required_fields", json::array({"shift", "shifter"})}});
  ASSERT_EQ(tpl.status, 201) << tpl.body;
  const auto r = h.send("POST", "/logs", json{{"template_name", "eos"}, {"values", {{"shift", "night"}}}});
  expect_envelope(r, 400, "INVALID", "MissingField");
  EXPECT_EQ(r.json().at("detail").at("field"), "shifter");
  const auto ok = h.send("POST", "/logs",
                         json{{"template_name", "eos"}, {"values", {{"shift", "night"}, {"shifter", "ann"}}}});
  ASSERT_EQ(ok.status, 201) << ok.body;
  EXPECT_EQ(ok.json().at("title"), "EOS night");
  EXPECT_EQ(ok.json().at("origin"), "PROCESS");
  expect_envelope(h.send("POST", "/logs", json{{"template_name", "nope"}}), 404, "NOT_FOUND");
}

TEST(Service, PassInputRules) {
  Harness h;
  h.send("POST", "/fills", json{{"fill_number", 7}});
  h.send("POST", "/runs", new_run(7));
  expect_envelope(h.send("POST", "/passes", json{{"name", "p"}, {"input", {{"kind", "FILL"}, {"id", 7}}}}), 422,
                  "INVALID");
  expect_envelope(h.send("POST", "/passes", json{{"name", "p"}, {"input", {{"kind", "RUN"}, {"id", 9}}}}), 404,
                  "NOT_FOUND", "UnknownReference");
  ASSERT_EQ(h.send("POST", "/passes", json{{"name", "p"}, {"input", {{"kind", "RUN"}, {"id", 1}}}}).status, 201);
  ASSERT_EQ(h.send("POST", "/passes", json{{"name", "q"}, {"input", {{"kind", "PASS"}, {"id", 1}}}}).status, 201);
  const auto lineage = h.send("GET", "/passes/2/lineage");
  ASSERT_EQ(lineage.status, 200);
  EXPECT_EQ(lineage.json().at("chain").size(), 3u);
  EXPECT_EQ(lineage.json().at("chain").back(), (json{{"kind", "RUN"}, {"id", 1}}));
  expect_envelope(h.send("PATCH", "/passes/1", json{{"status", "DONE"}}), 409, "CONFLICT");
  EXPECT_EQ(h.send("PATCH", "/passes/1", json{{"status", "RUNNING"}}).json().at("status"), "RUNNING");
  EXPECT_TRUE(flat(h.schema_errors()).empty()) << flat(h.schema_errors());
}

TEST(Service, EditKeepsRevisionsAndAuthor) {
  Harness h;
  const auto log = h.send("POST", "/logs", json{{"title", "t0"}, {"body", "b0"}}, testing::kShifterToken);
  ASSERT_EQ(log.status, 201);
  EXPECT_EQ(log.json().at("origin"), "HUMAN");
  h.send("PATCH", "/logs/1", json{{"title", "t1"}}, testing::kPhysicistToken);
  const auto edited = h.send("PATCH", "/logs/1", json{{"body", "b2"}}, testing::kShifterToken);
  EXPECT_EQ(edited.json().at("title"), "t1");
  EXPECT_EQ(edited.json().at("body"), "b2");
  EXPECT_EQ(edited.json().at("author").at("actor_id"), "alice");
  const auto revs = h.send("GET", "/logs/1/revisions").json().at("revisions");
  ASSERT_EQ(revs.size(), 3u);
  EXPECT_EQ(revs.at(0).at("title"), "t0");
  EXPECT_EQ(revs.at(1).at("edited_by").at("actor_id"), "bob");
  expect_envelope(h.send("PATCH", "/logs/1", json::object()), 400, "INVALID");
}

TEST(Service, MultipartAttachmentRoundTrip) {
  Harness h;
  h.send("POST", "/logs", json{{"title", "with file"}});
  api::Request req;
  req.method = "POST";
  req.path = std::string(kApiPrefix) + "/logs/1/attachments";
  req.files.push_back({"file", "trace.txt", "text/plain", "hello"});
  auto api = h.client_for(testing::kShifterToken);
  const auto resp = api.send(req);
  ASSERT_EQ(resp.status, 201) << resp.body;
  const auto digest = resp.json().at("digest").get<std::string>();
  const auto [bytes, type] = api.download(digest);
  EXPECT_EQ(bytes, "hello");
  EXPECT_EQ(type, "text/plain");
  expect_envelope(h.send("GET", "/attachments/" + std::string(64, '0')), 404, "NOT_FOUND", "UnknownDigest");
  expect_envelope(h.send("GET", "/attachments/xyz"), 404, "NOT_FOUND", "UnknownDigest");
  req.files.front().field = "other";
  expect_envelope(api.send(req), 400, "INVALID");
  req.files.front() = {"file", "big.bin", "", std::string(1024 * 1024 + 1, 'x')};
  expect_envelope(api.send(req), 413, "TOO_LARGE");
  EXPECT_TRUE(flat(h.schema_errors()).empty()) << flat(h.schema_errors());
}

TEST(Service, ReportsInJsonAndCsv) {
  Harness h;
  h.send("POST", "/fills", json{{"fill_number", 7}});
  for (int i = 0; i < 3; ++i) h.send("POST", "/runs", new_run(7));
  const auto rows = h.send("GET", "/reports/runs-per-fill");
  ASSERT_EQ(rows.status, 200);
  EXPECT_EQ(rows.json().at("rows"), (json::array({{{"fill_number", 7}, {"run_count", 3}}})));
  const auto csv = h.send("GET", "/reports/runs-per-fill", nullptr, testing::kMachineToken, {{"format", "csv"}});
  EXPECT_EQ(csv.content_type.rfind("text/csv", 0), 0u);
  EXPECT_EQ(csv.body, "fill_number,run_count\n7,3\n");
  EXPECT_EQ(h.send("GET", "/reports/overview").json().at("mean_runs_per_fill"), 3.0);
  expect_envelope(h.send("GET", "/reports/overview", nullptr, testing::kMachineToken, {{"format", "xml"}}), 400,
                  "INVALID");
  expect_envelope(h.send("GET", "/reports/overview", nullptr, testing::kMachineToken,
                         {{"from", "2024-02-01T00:00:00Z"}, {"to", "2024-01-01T00:00:00Z"}}),
                  400, "INVALID", "InvalidQuery");
  EXPECT_TRUE(flat(h.schema_errors()).empty()) << flat(h.schema_errors());
}

TEST(Service, AuditIsReadable) {
  Harness h;
  h.send("POST", "/runs", new_run());
  h.send("POST", "/runs/1/tags", json{{"tag", "x"}}, testing::kShifterToken);
  const auto audit = h.send("GET", "/audit", nullptr, testing::kMachineToken, {{"since", "1"}}).json();
  EXPECT_EQ(audit.at("total"), 1);
  EXPECT_EQ(audit.at("items").at(0).at("action"), "TAG_RUN");
  EXPECT_EQ(audit.at("items").at(0).at("actor").at("actor_id"), "alice");
}

TEST(Service, HealthIsPublic) {
  Harness h;
  const auto r = h.send("GET", "/health", nullptr, std::nullopt);
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.json().at("status"), "ok");
  EXPECT_EQ(r.json().at("version"), kServiceVersion);
  EXPECT_EQ(r.json().at("store_reachable"), true);
  EXPECT_EQ(h.send("GET", "/openapi", nullptr, std::nullopt).status, 200);
}

// --- authentication and malformed requests ------------------------------------------------

TEST(Service, EveryProtectedRouteRejectsMissingAndUnknownTokens) {
  Harness h;
  for (const auto& route : h.service().routes()) {
    std::string path = route.path_template;
    for (const auto& [from, to] : std::vector<std::pair<std::string, std::string>>{
             {"{fillNumber}", "1"}, {"{runNumber}", "1"}, {"{passId}", "1"}, {"{logId}", "1"},
             {"{tag}", "x"}, {"{digest}", std::string(64, 'a')}}) {
      const auto at = path.find(from);
      if (at != std::string::npos) path.replace(at, from.size(), to);
    }
    const auto bogus = h.send(route.method, path, json::object(), std::string("bogus"));
    expect_envelope(bogus, 401, "UNAUTHORIZED");
    if (!route.requires_auth) continue;
    expect_envelope(h.send(route.method, path, json::object(), std::nullopt), 401, "UNAUTHORIZED");
  }
  EXPECT_EQ(h.store().counts().audit_records, 0);
}

TEST(Service, MalformedRequests) {
  Harness h;
  expect_envelope(h.send("POST", "/runs", std::string("{not json")), 400, "INVALID");
  expect_envelope(h.send("POST", "/runs", std::string("[1,2]")), 400, "INVALID");
  expect_envelope(h.send("POST", "/runs", json{{"run_type", "PARTY"}}), 400, "INVALID");
  expect_envelope(h.send("POST", "/runs", json::object()), 400, "INVALID");
  expect_envelope(h.send("POST", "/runs", new_run(404)), 404, "NOT_FOUND", "UnknownReference");
  expect_envelope(h.send("GET", "/runs/abc"), 400, "INVALID");
  expect_envelope(h.send("GET", "/runs/0"), 400, "INVALID");
  expect_envelope(h.send("GET", "/runs/5"), 404, "NOT_FOUND", "NotFound");
  expect_envelope(h.send("GET", "/runs", nullptr, testing::kMachineToken, {{"limit", "5000"}}), 400, "INVALID");
  expect_envelope(h.send("GET", "/nowhere"), 404, "NOT_FOUND");
  expect_envelope(h.send("PUT", "/runs/1"), 404, "NOT_FOUND");
  h.send("POST", "/fills", json{{"fill_number", 3}});
  expect_envelope(h.send("POST", "/fills", json{{"fill_number", 3}}), 409, "CONFLICT", "Conflict");
  EXPECT_TRUE(flat(h.schema_errors()).empty()) << flat(h.schema_errors());
}

// --- the API description ---------------------------------------------------------------

TEST(OpenApi, ValidatesAgainstMetaSchema) {
  Harness h;
  const testing::SchemaValidator meta(testing::load_json_file(testing::test_data_dir() + "/openapi-3.0-schema.json"));
  const auto errors = meta.validate(h.service().openapi());
  EXPECT_TRUE(errors.empty()) << flat(errors);
  EXPECT_EQ(h.service().openapi().at("openapi"), "3.0.3");
}

TEST(OpenApi, MetaSchemaCatchesBrokenDocuments) {
  Harness h;
  const testing::SchemaValidator meta(testing::load_json_file(testing::test_data_dir() + "/openapi-3.0-schema.json"));
  auto doc = h.service().openapi();
  doc.erase("info");
  EXPECT_FALSE(meta.validate(doc).empty());
  doc = h.service().openapi();
  doc["paths"]["/runs"]["get"]["responses"] = json::object();
  EXPECT_FALSE(meta.validate(doc).empty());
  doc = h.service().openapi();
  doc["paths"]["runs-without-slash"] = json::object();
  EXPECT_FALSE(meta.validate(doc).empty());
}

TEST(OpenApi, PathSetEqualsRouteTable) {
  Harness h;
  std::set<std::pair<std::string, std::string>> documented;
  for (const auto& [path, item] : h.service().openapi().at("paths").items())
    for (const auto& [method, op] : item.items()) {
      std::string upper = method;
      for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      documented.insert({upper, path});
    }
  std::set<std::pair<std::string, std::string>> routed;
  for (const auto& r : h.service().routes()) routed.insert({r.method, r.path_template});
  EXPECT_EQ(documented, routed);
  std::set<std::string> ids;
  for (const auto& r : h.service().routes()) EXPECT_TRUE(ids.insert(r.operation_id).second) << r.operation_id;
}

TEST(OpenApi, ComponentSchemasAcceptServedEntities) {
  Harness h;
  std::mt19937_64 rng(1);
  testing::build_random_corpus(h, rng, 20, 20);
  h.api().read_audit(0, 1000);
  h.api().list_templates();
  h.api().overview();
  h.api().health();
  h.api().openapi();
  EXPECT_GT(h.recorder().exchanges().size(), 40u);
  const auto errors = h.schema_errors();
  EXPECT_TRUE(errors.empty()) << flat(errors);
}

TEST(OpenApi, SchemaCheckRejectsWrongShapes) {
  Harness h;
  const auto& doc = h.service().openapi();
  EXPECT_FALSE(testing::check_exchange(doc, "GET", "/api/v1/runs/1", 200, "application/json",
                                       R"({"run_number":"one"})")
                   .empty());
  EXPECT_FALSE(testing::check_exchange(doc, "GET", "/api/v1/runs/1", 418, "application/json", "{}").empty());
  EXPECT_FALSE(testing::check_exchange(doc, "GET", "/api/v1/runs/1", 200, "text/plain", "{}").empty());
}

// --- listing properties ---------------------------------------------------------------

TEST(ServiceProperty, PagesTileTheFullResult) {
  Harness h;
  std::mt19937_64 rng(31);
  const auto corpus = testing::build_random_corpus(h, rng, 60, 40);
  for (int i = 0; i < 30; ++i) {
    const auto q = testing::random_run_query(rng, corpus);
    const auto all = h.api().list_runs(q, {0, store::kMaxPageLimit});
    const auto size = testing::pick(rng, 1, 7);
    std::vector<runlog::Run> stitched;
    for (std::int64_t off = 0; off < all.total + size; off += size) {
      const auto page = h.api().list_runs(q, {off, size});
      ASSERT_EQ(page.total, all.total);
      ASSERT_LE(static_cast<std::int64_t>(page.items.size()), size);
      stitched.insert(stitched.end(), page.items.begin(), page.items.end());
    }
    ASSERT_EQ(stitched, all.items);
    for (std::size_t k = 1; k < stitched.size(); ++k) ASSERT_GT(stitched[k - 1].run_number, stitched[k].run_number);
  }
}

TEST(ServiceProperty, GetsAreIdempotentAndLeaveNoAudit) {
  Harness h;
  std::mt19937_64 rng(32);
  const auto corpus = testing::build_random_corpus(h, rng, 30, 30);
  const auto before = h.store().counts();
  for (int i = 0; i < 50; ++i) {
    const auto q = testing::random_log_query(rng, corpus);
    const auto a = h.send("GET", "/logs", nullptr, testing::kMachineToken, to_params(q));
    const auto b = h.send("GET", "/logs", nullptr, testing::kMachineToken, to_params(q));
    ASSERT_EQ(a.status, 200);
    ASSERT_EQ(a.body, b.body);
  }
  for (const auto& r : corpus.runs) ASSERT_EQ(h.api().get_run(r.run_number), h.api().get_run(r.run_number));
  EXPECT_EQ(h.store().counts(), before);
}

TEST(ServiceProperty, ClientErrorsRoundTripToLibraryErrors) {
  Harness h;
  const std::vector<std::pair<std::function<void()>, ErrorCode>> cases{
      {[&] { h.api().get_run(42); }, ErrorCode::kNotFound},
      {[&] { h.api().start_run({RunType::kGlobal, {}, 99, {}, {}}); }, ErrorCode::kUnknownReference},
      {[&] { h.api().list_runs({}, {-1, 10}); }, ErrorCode::kInvalidQuery},
      {[&] { h.client_for("nope").get_run(1); }, ErrorCode::kUnauthorized},
  };
  for (const auto& [call, code] : cases) {
    try {
      call();
      ADD_FAILURE() << "no error";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code) << e.what();
    }
  }
}

}  // namespace
}  // namespace runlog::service
