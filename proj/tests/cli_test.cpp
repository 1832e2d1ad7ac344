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
#include <sstream>

#include "runlog/cli/cli.hpp"
#include "runlog/client/api_client.hpp"
#include "support/fixtures.hpp"

namespace runlog::cli {
namespace {

class Forward : public client::Transport {
 public:
  explicit Forward(client::Transport& inner) : inner_(inner) {}
  api::Response send(const api::Request& r) override { return inner_.send(r); }

 private:
  client::Transport& inner_;
};

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

// Runs the CLI against an in-process service; every request is recorded by
// the harness.
class CliTest : public ::testing::Test {
 protected:
  Outcome cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    CliEnv env{out, err, [this](const std::string& k) -> std::optional<std::string> {
                 const auto it = vars_.find(k);
                 if (it == vars_.end()) return std::nullopt;
                 return it->second;
               },
               [this](const std::string& endpoint) -> std::unique_ptr<client::Transport> {
                 endpoints_.push_back(endpoint);
                 return std::make_unique<Forward>(h_.recorder());
               }};
    args.insert(args.begin(), "runlog");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    const int code = run(static_cast<int>(argv.size()), argv.data(), env);
    return {code, out.str(), err.str()};
  }

  std::optional<std::string> last_auth() const {
    const auto& ex = h_.recorder().exchanges();
    if (ex.empty()) return std::nullopt;
    return ex.back().request.header("authorization");
  }

  testing::Harness h_;
  testing::TempDir dir_;
  std::map<std::string, std::string> vars_{{"RUNLOG_TOKEN", testing::kShifterToken}};
  std::vector<std::string> endpoints_;
};

TEST_F(CliTest, HelpExitsZero) {
  const auto r = cli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("seed"), std::string::npos);
}

TEST_F(CliTest, ParseErrorsAreUsageErrors) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"runs", "list", "--limit", "many"}).code, kExitUsage);
  EXPECT_EQ(cli({"--output", "xml", "runs", "list"}).code, kExitUsage);
  EXPECT_EQ(cli({"seed"}).code, kExitUsage);
  EXPECT_EQ(cli({"seed", "--fills", "1", "--target", "http://a:1", "--store", "x"}).code, kExitUsage);
  EXPECT_EQ(cli({"--endpoint", "ftp://x", "runs", "list"}).code, kExitUsage);
  EXPECT_TRUE(h_.recorder().exchanges().empty());
}

TEST_F(CliTest, RunsListValidatesLocallyBeforeSending) {
  const auto r = cli({"runs", "list", "--type", "PARTY"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("usage error:"), std::string::npos);
  EXPECT_EQ(cli({"runs", "list", "--from", "2024-02-01T00:00:00Z", "--to", "2024-01-01T00:00:00Z"}).code,
            kExitUsage);
  EXPECT_EQ(cli({"runs", "list", "--limit", "0"}).code, kExitUsage);
  EXPECT_TRUE(h_.recorder().exchanges().empty());
}

TEST_F(CliTest, RunsListTableAndRaw) {
  h_.api().start_run({RunType::kCosmics, std::nullopt, std::nullopt, {}, {Tag::make("tpc")}});
  h_.api().start_run({});
  const auto table = cli({"runs", "list", "--tag", "TPC"});
  ASSERT_EQ(table.code, kExitOk) << table.err;
  EXPECT_NE(table.out.find("COSMICS"), std::string::npos);
  EXPECT_NE(table.out.find("total: 1"), std::string::npos);
  EXPECT_EQ(last_auth(), std::string("Bearer ") + testing::kShifterToken);
  EXPECT_EQ(endpoints_.back(), "http://127.0.0.1:8080");

  const auto raw = cli({"--output", "raw", "runs", "list", "--type", "global"});
  ASSERT_EQ(raw.code, kExitOk);
  const auto body = nlohmann::json::parse(raw.out);
  EXPECT_EQ(body.at("total"), 1);
  EXPECT_EQ(body.at("items").at(0).at("run_type"), "GLOBAL");
}

TEST_F(CliTest, DomainErrorsExitOne) {
  vars_.erase("RUNLOG_TOKEN");
  const auto r = cli({"runs", "list"});
  EXPECT_EQ(r.code, kExitDomainError);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  EXPECT_EQ(cli({"--token", "wrong", "runs", "list"}).code, kExitDomainError);
}

TEST_F(CliTest, LogFromTemplateNamesMissingField) {
  h_.api().create_template({"eos", "EOS {{shift}}", "by {{shifter}}", {"shift", "shifter"}, {}});
  const auto missing = cli({"log", "new", "--template", "eos", "--set", "shift=night"});
  EXPECT_EQ(missing.code, kExitDomainError);
  EXPECT_NE(missing.err.find("(field: shifter)"), std::string::npos) << missing.err;
  const auto ok = cli({"log", "new", "--template", "eos", "--set", "shift=night", "--set", "shifter=ann=b"});
  ASSERT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_NE(ok.out.find("EOS night"), std::string::npos);
  EXPECT_EQ(h_.store().get_log(1).body, "by ann=b");
}

TEST_F(CliTest, LogNewUsageErrors) {
  EXPECT_EQ(cli({"log", "new"}).code, kExitUsage);
  EXPECT_EQ(cli({"log", "new", "--template", "eos", "--set", "novalue"}).code, kExitUsage);
  EXPECT_EQ(cli({"log", "new", "--title", "t", "--set", "a=b"}).code, kExitUsage);
  EXPECT_EQ(cli({"log", "new", "--template", "eos", "--title", "t"}).code, kExitUsage);
  EXPECT_EQ(cli({"log", "new", "--title", "t", "--tag", "bad tag"}).code, kExitUsage);
}

TEST_F(CliTest, LogNewWithBodyAssociationsAndAttachment) {
  h_.api().create_fill({9, std::nullopt, std::nullopt, "", std::nullopt});
  h_.api().start_run({RunType::kGlobal, std::nullopt, 9, {}, {}});
  std::ofstream(dir_ / "body.txt") << "the body";
  std::ofstream(dir_ / "trace.log") << "trace";
  const auto r = cli({"log", "new", "--title", "Trip", "--body-file", (dir_ / "body.txt").string(), "--run", "1",
                      "--fill", "9", "--tag", "hv", "--attach", (dir_ / "trace.log").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("attached trace.log (5 bytes"), std::string::npos) << r.out;
  const auto log = h_.store().get_log(1);
  EXPECT_EQ(log.body, "the body");
  EXPECT_EQ(log.associations.size(), 2u);
  EXPECT_EQ(log.attachments.at(0).media_type, "text/plain");
  EXPECT_EQ(log.author, testing::kShifter);
  EXPECT_EQ(cli({"log", "new", "--title", "x", "--attach", (dir_ / "missing").string()}).code, kExitDomainError);
}

TEST_F(CliTest, ConfigFileThenEnvironmentThenFlags) {
  vars_.clear();
  vars_["HOME"] = dir_.path().string();
  std::filesystem::create_directories(dir_ / ".config/runlog");
  std::ofstream(dir_ / ".config/runlog/config") << "# client\nendpoint = http://logbook:9000\ntoken = "
                                                 << testing::kPhysicistToken << "\n";
  ASSERT_EQ(cli({"runs", "list"}).code, kExitOk);
  EXPECT_EQ(endpoints_.back(), "http://logbook:9000");
  EXPECT_EQ(last_auth(), std::string("Bearer ") + testing::kPhysicistToken);

  vars_["RUNLOG_TOKEN"] = testing::kMachineToken;
  vars_["RUNLOG_ENDPOINT"] = "http://other:1";
  ASSERT_EQ(cli({"runs", "list"}).code, kExitOk);
  EXPECT_EQ(endpoints_.back(), "http://other:1");
  EXPECT_EQ(last_auth(), std::string("Bearer ") + testing::kMachineToken);

  ASSERT_EQ(cli({"--endpoint", "http://flag:2", "--token", testing::kShifterToken, "runs", "list"}).code, kExitOk);
  EXPECT_EQ(endpoints_.back(), "http://flag:2");
  EXPECT_EQ(last_auth(), std::string("Bearer ") + testing::kShifterToken);

  std::ofstream(dir_ / ".config/runlog/config") << "colour = blue\n";
  EXPECT_EQ(cli({"runs", "list"}).code, kExitUsage);
}

TEST(CliConfig, ParsesKeyValueFile) {
  testing::TempDir dir;
  std::ofstream(dir / "cfg") << "  output=raw  # trailing\n\nendpoint = http://h:1/\n";
  const auto cfg = load_cli_config(dir / "cfg", [](const std::string&) { return std::nullopt; });
  EXPECT_EQ(cfg.output, "raw");
  EXPECT_EQ(cfg.endpoint, "http://h:1/");
  EXPECT_FALSE(cfg.token.has_value());
  std::ofstream(dir / "bad") << "endpoint\n";
  EXPECT_THROW(load_cli_config(dir / "bad", [](const std::string&) { return std::nullopt; }), Error);
  EXPECT_EQ(default_config_path([](const std::string&) { return std::string("/home/u"); }),
            std::filesystem::path("/home/u/.config/runlog/config"));
  EXPECT_FALSE(default_config_path([](const std::string&) { return std::nullopt; }).has_value());
}

TEST_F(CliTest, SeedThroughTheApi) {
  const auto r = cli({"--token", testing::kMachineToken, "seed", "--seed", "3", "--fills", "2",
                      "--mean-runs-per-fill", "5", "--target", "http://sim:7"});
  ASSERT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_EQ(endpoints_.back(), "http://sim:7");
  EXPECT_NE(r.out.find("failures 0"), std::string::npos);
  EXPECT_EQ(h_.store().counts().fills, 2);
  // A second replay collides on fill numbers and reports it.
  const auto again = cli({"--output", "raw", "--token", testing::kMachineToken, "seed", "--seed", "3", "--fills",
                          "2", "--mean-runs-per-fill", "5"});
  EXPECT_EQ(again.code, kExitDomainError);
  EXPECT_GE(nlohmann::json::parse(again.out).at("failures").size(), 2u);
}

TEST_F(CliTest, StoreCommandsSeedExportImportVerify) {
  const auto db = (dir_ / "a.db").string();
  ASSERT_EQ(cli({"seed", "--fills", "2", "--mean-runs-per-fill", "4", "--store", db}).code, kExitOk);
  const auto verify = cli({"audit", "verify", "--store", db});
  ASSERT_EQ(verify.code, kExitOk) << verify.out;
  EXPECT_NE(verify.out.find("OK"), std::string::npos);

  const auto backup = (dir_ / "backup").string();
  ASSERT_EQ(cli({"export", backup, "--store", db}).code, kExitOk);
  vars_["RUNLOG_STORE"] = (dir_ / "b.db").string();
  const auto imported = cli({"import", backup});
  ASSERT_EQ(imported.code, kExitOk) << imported.err;
  EXPECT_NE(imported.out.find("imported"), std::string::npos);
  const auto raw = cli({"--output", "raw", "audit", "verify"});
  ASSERT_EQ(raw.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(raw.out).at("contiguous"), true);

  EXPECT_EQ(cli({"import", backup}).code, kExitDomainError) << "target not empty";
  EXPECT_EQ(cli({"import", (dir_ / "nowhere").string()}).code, kExitUsage);
  vars_.erase("RUNLOG_STORE");
  EXPECT_EQ(cli({"audit", "verify"}).code, kExitUsage);
  EXPECT_EQ(cli({"audit", "verify", "--store", (dir_ / "none.db").string()}).code, kExitDomainError);
}

}  // namespace
}  // namespace runlog::cli
