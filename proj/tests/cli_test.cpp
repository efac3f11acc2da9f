//
// sfiles2 - Copyright 2026 The sfiles2 Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.h"
#include "support/fixtures.h"

namespace sfiles {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string &stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return { code, out.str(), err.str() };
}

class TempDir {
public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path()
            / ("sfiles_cli_" + std::to_string(::testing::UnitTest::GetInstance()
                                                  ->random_seed())
               + "_" + ::testing::UnitTest::GetInstance()
                           ->current_test_info()
                           ->name());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string write(const std::string &name, const std::string &text) const {
    const auto file = path_ / name;
    std::ofstream(file) << text;
    return file.string();
  }

private:
  std::filesystem::path path_;
};

TEST(CliTest, EncodeFixture) {
  const Outcome r = run({ "encode", testing::fixture_path("fig1b") });
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out,
            "(raw)(hex)(r)<&|(raw)(pp)&|(mix)<1(v)(dist)[{tout}(prod)]{bout}"
            "(splt)1(prod)\n");
  EXPECT_EQ(r.err, "");
}

TEST(CliTest, EncodeNumberedFromStdin) {
  const Outcome r = run({ "encode", "--numbered", "-" },
                    testing::read_file(testing::fixture_path("fig5a")));
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "(raw-1)(C-1){FC}_1(v-1)<_1(prod-1)\n");
}

TEST(CliTest, EncodeEmptyGraph) {
  const Outcome r = run({ "encode", "-" }, R"({"nodes": [], "edges": []})");
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "\n");
}

TEST(CliTest, EncodeErrors) {
  const Outcome corrupt = run({ "encode", "-" }, "{\"nodes\": [");
  EXPECT_EQ(corrupt.code, cli::kSchemaError);
  EXPECT_EQ(corrupt.out, "");
  EXPECT_NE(corrupt.err.find("1:"), std::string::npos) << corrupt.err;

  const Outcome invariant = run(
      { "encode", "-" },
      R"({"nodes": [{"name": "raw-1"}, {"name": "prod-1"}],
          "edges": [{"src": "prod-1", "dst": "raw-1", "kind": "material"}]})");
  EXPECT_EQ(invariant.code, cli::kInvariantError);

  const Outcome unknown = run(
      { "encode", "-" },
      R"({"nodes": [{"name": "raw-1"}, {"name": "frob-1"}],
          "edges": [{"src": "raw-1", "dst": "frob-1", "kind": "material"}]})");
  EXPECT_EQ(unknown.code, cli::kSchemaError);
  const Outcome lenient = run(
      { "encode", "--lenient", "-" },
      R"({"nodes": [{"name": "raw-1"}, {"name": "frob-1"}],
          "edges": [{"src": "raw-1", "dst": "frob-1", "kind": "material"}]})");
  EXPECT_EQ(lenient.code, cli::kOk);
  EXPECT_EQ(lenient.out, "(raw)(frob)\n");
  EXPECT_NE(lenient.err.find("unknown-unit"), std::string::npos);

  EXPECT_EQ(run({ "encode", "/nonexistent/graph.json" }).code,
            cli::kSchemaError);
}

TEST(CliTest, EncodeJsonFormat) {
  const Outcome r = run({ "encode", "--format", "json",
                      testing::fixture_path("fig5a") });
  ASSERT_EQ(r.code, cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc[0]["sfiles"], "(raw)(C){FC}_1(v)<_1(prod)");
}

TEST(CliTest, DecodeString) {
  const Outcome r = run({ "decode", "(raw)(C){FC}_1(v)<_1(prod)" });
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["nodes"].size(), 4u);
  int signals = 0;
  for (const auto &e: doc["edges"])
    signals += e["kind"] == "signal";
  EXPECT_EQ(signals, 1);
}

TEST(CliTest, DecodeTwoNodes) {
  const Outcome r = run({ "decode", "(raw)(prod)" });
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(nlohmann::json::parse(r.out)["nodes"].size(), 2u);
}

TEST(CliTest, DecodeError) {
  const Outcome r = run({ "decode", "(raw)[" });
  EXPECT_EQ(r.code, cli::kParseError);
  EXPECT_EQ(r.out, "");
  EXPECT_NE(r.err.find("unclosed branch"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("^"), std::string::npos);
}

TEST(CliTest, DecodeBatchFromFile) {
  TempDir dir;
  const std::string file = dir.write("batch.txt", "(raw)(prod)\n(raw)(v)(prod)\n");
  const Outcome r = run({ "decode", "--file", file });
  ASSERT_EQ(r.code, cli::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_TRUE(doc.is_array());
  EXPECT_EQ(doc.size(), 2u);
  EXPECT_EQ(doc[1]["nodes"].size(), 3u);
}

TEST(CliTest, CanonIsIdempotentOnFixtures) {
  for (const auto &c: testing::expected_cases()) {
    if (c.notation != Notation::kGeneralized
        || c.style != ConvergingStyle::kInsertion || c.tree_limit)
      continue;
    const Outcome r = run({ "canon", c.expected });
    EXPECT_EQ(r.code, cli::kOk) << c.name;
    EXPECT_EQ(r.out, c.expected + "\n") << c.name;
  }
}

TEST(CliTest, CanonReordersScrambledBranches) {
  // Same absorber with branches and the inserted inlet in another order.
  const Outcome r = run({ "canon", "(raw){tin}(abs)<&|(raw){bin}&|[{bout}(prod)]{tout}(prod)" });
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out, "(raw){bin}(abs)<&|(raw){tin}&|[{tout}(prod)]{bout}(prod)\n");
}

TEST(CliTest, CanonBatchAndEmpty) {
  const Outcome r = run({ "canon" }, "(prod)<&|(raw)&|\n\n(raw)(v)(prod)\n");
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out, "(raw)(prod)\n\n(raw)(v)(prod)\n");
  EXPECT_EQ(run({ "canon", "" }).out, "\n");
}

TEST(CliTest, CanonNumbered) {
  const Outcome r = run({ "canon", "--numbered", "(raw)(hex){1}(hex){1}(prod)" });
  EXPECT_EQ(r.out, "(raw-1)(hex-1/1){1}(hex-1/2){1}(prod-1)\n");
}

TEST(CliTest, CheckCorpus) {
  std::vector<std::string> args { "check" };
  for (const auto &name: testing::fixture_names())
    args.push_back(testing::fixture_path(name));
  const Outcome ok = run(args);
  EXPECT_EQ(ok.code, cli::kOk) << ok.out << ok.err;
  EXPECT_NE(ok.out.find("9 checked, 0 failed"), std::string::npos) << ok.out;

  TempDir dir;
  args.push_back(dir.write("mutated.json",
                           R"({"nodes": [{"name": "raw-1"}], "edges": [{}]})"));
  const Outcome bad = run(args);
  EXPECT_EQ(bad.code, cli::kCheckFailed);
  EXPECT_NE(bad.out.find("mutated.json"), std::string::npos);
  EXPECT_NE(bad.out.find("1 failed"), std::string::npos);
}

TEST(CliTest, CheckNothing) {
  const Outcome r = run({ "check" });
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "0 checked, 0 failed\n");
}

TEST(CliTest, Registry) {
  const Outcome r = run({ "registry" });
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(nlohmann::json::parse(r.out).size(), 32u);
}

TEST(CliTest, UsageErrors) {
  EXPECT_NE(run({}).code, cli::kOk);
  EXPECT_NE(run({ "frobnicate" }).code, cli::kOk);
  EXPECT_NE(run({ "encode", "--numbered", "--generalized", "x" }).code,
            cli::kOk);
  const Outcome help = run({ "--help" });
  EXPECT_EQ(help.code, cli::kOk);
  EXPECT_NE(help.out.find("encode"), std::string::npos);
}

}  // namespace
}  // namespace sfiles
