#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mds22/cli.hpp"
#include "mds22/constructions.hpp"
#include "mds22/store.hpp"
#include "temp_dir.hpp"

using namespace mds22;
using mds22::testing::read_all;
using mds22::testing::TempDir;
using mds22::testing::write_random;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, VerifyConstructions) {
  EXPECT_EQ(run({"verify", "--k", "4", "--construction", "c1"}).code, 0);
  EXPECT_EQ(run({"verify", "--k", "6", "--construction", "c2"}).code, 0);
  const auto r = run({"verify", "--k", "6", "--construction", "c2", "--json"});
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["ok"], true);
  EXPECT_EQ(j["field"], "gf:2^8");
  EXPECT_EQ(j["pattern"]["kind"], "nz");
  EXPECT_EQ(run({"verify", "--k", "2", "--construction", "c1", "--field", "gf:p=7"}).code, 5);
}

TEST(Cli, VerifyCustomCodes) {
  TempDir tmp;
  const auto code = build_c2(3, Field::prime(7));
  json h = json::array();
  for (const auto& b : code.h_blocks()) {
    json rows = json::array();
    for (std::size_t r = 0; r < 4; ++r) rows.push_back({b(r, 0), b(r, 1)});
    h.push_back(rows);
  }
  std::ofstream(tmp / "good.json") << json{{"field", "gf:p=7"}, {"h", h}}.dump();
  EXPECT_EQ(run({"verify", "--custom", (tmp / "good.json").string()}).code, 0);
  h[2] = h[0];
  std::ofstream(tmp / "dup.json") << json{{"field", "gf:p=7"}, {"h", h}}.dump();
  const auto r = run({"verify", "--custom", (tmp / "dup.json").string(), "--json"});
  EXPECT_EQ(r.code, 5);
  EXPECT_EQ(json::parse(r.out)["mds"]["failing_pair"], json({1, 3}));
  std::ofstream(tmp / "bad.json") << "{";
  EXPECT_EQ(run({"verify", "--custom", (tmp / "bad.json").string()}).code, 2);
  EXPECT_EQ(run({"verify", "--custom", (tmp / "absent.json").string()}).code, 3);
}

TEST(Cli, BoundsHumanAndJsonAgree) {
  const auto j = run({"bounds", "--k", "4", "--construction", "c1", "--field", "gf:p=13", "--json"});
  ASSERT_EQ(j.code, 0) << j.err;
  const auto doc = json::parse(j.out);
  for (const char* key : {"avg_beta", "max_beta", "avg_gamma", "max_gamma"}) EXPECT_EQ(doc["satisfied"][key], true);
  EXPECT_EQ(doc["avg_beta"], json({{"num", 17}, {"den", 3}}));

  const auto h = run({"bounds", "--k", "4", "--construction", "c1", "--field", "gf:p=13"});
  ASSERT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("avg_beta    17/3      5         yes"), std::string::npos) << h.out;
  EXPECT_NE(h.out.find("avg_gamma   19/3      17/3      yes"), std::string::npos) << h.out;
  EXPECT_NE(h.out.find("max_gamma   8         6         yes"), std::string::npos) << h.out;
  for (const auto& node : doc["per_node"]) {
    std::ostringstream line;
    line << std::setw(4) << node["node"].get<int>() << "  " << std::setw(4) << node["beta"].get<int>() << "  "
         << std::setw(5) << node["gamma"].get<int>();
    EXPECT_NE(h.out.find(line.str()), std::string::npos) << line.str();
  }
}

TEST(Cli, BoundsSmallCode) {
  const auto r = run({"bounds", "--k", "2", "--construction", "c2", "--field", "gf:p=5", "--json"});
  ASSERT_EQ(r.code, 0);
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["bounds"]["max_gamma"], 3);
  EXPECT_GE(doc["max_gamma"].get<int>(), 3);
}

TEST(Cli, BoundsGuards) {
  EXPECT_EQ(run({"bounds", "--k", "2", "--construction", "c2", "--field", "gf:p=257"}).code, 6);
  EXPECT_EQ(run({"bounds", "--k", "2", "--construction", "c2"}).code, 2);
  EXPECT_EQ(run({"bounds", "--k", "2", "--construction", "c2", "--field", "gf:p=9"}).code, 2);
}

TEST(Cli, EncodeRepairDecode) {
  TempDir tmp;
  write_random(tmp / "a.bin", 5000, 8);
  const auto dir = (tmp / "d").string();
  const auto enc = run({"encode", "--k", "4", "--construction", "c1", "--input", (tmp / "a.bin").string(), "--out", dir,
                        "--json"});
  ASSERT_EQ(enc.code, 0) << enc.err;
  EXPECT_EQ(json::parse(enc.out)["shards"].size(), 6u);
  const std::uint64_t stripes = json::parse(enc.out)["stripes"];

  const auto original = read_all(shard_path(dir, 6));
  std::filesystem::remove(shard_path(dir, 6));
  const auto rep = run({"repair", "--dir", dir, "--node", "6", "--json"});
  ASSERT_EQ(rep.code, 0) << rep.err;
  const auto report = json::parse(rep.out);
  EXPECT_EQ(report["total_sent"], 5 * stripes);
  EXPECT_EQ(read_all(shard_path(dir, 6)), original);

  const auto human = run({"repair", "--dir", dir, "--node", "6"});
  EXPECT_NE(human.out.find("total_sent " + std::to_string(5 * stripes)), std::string::npos);
  EXPECT_NE(human.out.find("total_read " + report["total_read"].dump()), std::string::npos);

  std::filesystem::remove(shard_path(dir, 1));
  std::filesystem::remove(shard_path(dir, 3));
  const auto dec = run({"decode", "--dir", dir, "--output", (tmp / "b.bin").string()});
  ASSERT_EQ(dec.code, 0) << dec.err;
  EXPECT_EQ(read_all(tmp / "b.bin"), read_all(tmp / "a.bin"));
  EXPECT_EQ(run({"repair", "--dir", dir, "--node", "1"}).code, 4);
}

TEST(Cli, UsageErrors) {
  TempDir tmp;
  write_random(tmp / "a.bin", 10, 1);
  EXPECT_EQ(run({"encode", "--k", "4", "--construction", "c1", "--out", (tmp / "d").string()}).code, 2);
  EXPECT_EQ(run({"encode", "--k", "1", "--construction", "c1", "--input", (tmp / "a.bin").string(), "--out",
                 (tmp / "d").string()})
                .code,
            2);
  EXPECT_EQ(run({"encode", "--k", "4", "--construction", "c1", "--input", (tmp / "nope.bin").string(), "--out",
                 (tmp / "d").string()})
                .code,
            3);
  EXPECT_EQ(run({"repair", "--dir", (tmp / "d").string(), "--node", "0"}).code, 2);
  EXPECT_EQ(run({"repair", "--dir", (tmp / "empty").string(), "--node", "1"}).code, 3);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify", "--k", "4", "--construction", "c9"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args = {"bounds", "--k", "3", "--construction", "c2", "--field", "gf:2^3", "--json"};
  EXPECT_EQ(run(args).out, run(args).out);
}
