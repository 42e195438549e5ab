#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(ESSDIM_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const std::string& rel) { return std::string(FIXTURE_DIR) + "/" + rel; }

fs::path scratch() {
  auto d = fs::temp_directory_path() / ("essdim_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST(Cli, EdimKlein) {
  auto r = run("edim " + fixture("groups/klein.json") + " --field Q");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["lower"], 2);
  EXPECT_EQ(j["upper"], 2);
  EXPECT_TRUE(j["exact"].get<bool>());
  ASSERT_FALSE(j["trace"].empty());
  for (const auto& t : j["trace"]) EXPECT_TRUE(t["citation"].is_string());
}

TEST(Cli, InvariantsS3) {
  auto r = run("invariants " + fixture("groups/s3.json") + " --field Q");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["order"], 6);
  EXPECT_EQ(j["socle"]["order"], 3);
  EXPECT_EQ(j["feet"].size(), 1u);
  EXPECT_EQ(j["center"]["order"], 1);
  EXPECT_EQ(j["k_center"]["order"], 1);
  EXPECT_TRUE(j["semi_faithful"].get<bool>());
}

TEST(Cli, ExitCodes) {
  auto r = run("edim missing.json --field Q");
  EXPECT_EQ(r.code, 2);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["error"], "InputError");
  EXPECT_TRUE(j.contains("detail"));
  EXPECT_EQ(run("rdim S3 --field Q").code, 3);        // OutOfScope
  EXPECT_EQ(run("covdim E2^3 --field 'Q(zeta_3)'").code, 0);
  EXPECT_EQ(run("edim S3 --field 'Q(zeta'").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("edim").code, 2);
  auto d = scratch();
  write(d / "bad.json", "{\"kind\": \"permutation\", \"degree\": 3, \"generators\": [[[0,5]]]}");
  EXPECT_EQ(run("edim " + (d / "bad.json").string()).code, 2);
  write(d / "junk.json", "{ not json");
  EXPECT_EQ(run("invariants " + (d / "junk.json").string()).code, 2);
  fs::remove_all(d);
}

TEST(Cli, DeterministicAndRoundTrips) {
  for (std::string args : {"edim Q8xC3 --field 'Q(zeta_12)'", "chartab A4", "invariants D4xC2 --field Q",
                           "covdim S3 --field Q"}) {
    auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
    auto j = json::parse(a.out);
    EXPECT_EQ(json::parse(j.dump()), j);
    EXPECT_EQ(j.dump() + "\n", a.out);
  }
}

TEST(Cli, FactsMerge) {
  auto d = scratch();
  auto store = (d / "store.json").string();
  write(d / "a.json", R"([{"group":"S3","field":"Q","lower":2,"upper":3,"source":"a"}])");
  write(d / "b.json", R"([{"group":"S3","field":"Q","lower":1,"upper":3,"source":"b"}])");
  write(d / "c.json", R"([{"group":"S3","field":"Q","lower":4,"upper":5,"source":"c"}])");
  ASSERT_EQ(run("facts merge " + store + " " + (d / "a.json").string()).code, 0);
  auto copy = json::parse(std::ifstream(store));
  EXPECT_EQ(copy.size(), 1u);
  ASSERT_EQ(run("facts merge " + store + " " + (d / "b.json").string()).code, 0);
  auto merged = json::parse(std::ifstream(store));
  EXPECT_EQ(merged[0]["lower"], 2);
  EXPECT_EQ(merged[0]["upper"], 3);
  auto r = run("facts merge " + store + " " + (d / "c.json").string());
  EXPECT_EQ(r.code, 2);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["error"], "FactConflict");
  std::string detail = j["detail"];
  EXPECT_NE(detail.find("'a; b'"), std::string::npos);
  EXPECT_NE(detail.find("'c'"), std::string::npos);
  EXPECT_EQ(json::parse(std::ifstream(store)), merged);  // unchanged on conflict
  fs::remove_all(d);
}

TEST(Cli, MhomHomogenize) {
  auto r = run("mhom homogenize " + fixture("covariants/worked_example.json") + " --lambda 1,3");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["H"]["components"], json({"x", "x^2"}));
  EXPECT_EQ(j["M"]["entries"], json({{1, 2}, {0, 0}}));
  EXPECT_EQ(j["rank"], 1);
  EXPECT_EQ(run("mhom homogenize " + fixture("covariants/worked_example.json") + " --lambda 1,1").code, 2);
  EXPECT_EQ(run("mhom homogenize " + fixture("covariants/worked_example.json") + " --lambda 1,x").code, 2);
  auto q = run("mhom rank-bound " + fixture("covariants/q8_identity.json") + " --field Q");
  ASSERT_EQ(q.code, 0);
  auto k = json::parse(q.out);
  EXPECT_EQ(k["rank_M"], 1);
  EXPECT_EQ(k["rank_Z"], 1);
  EXPECT_TRUE(k["probabilistic"].get<bool>());
}

TEST(Cli, CacheLifecycle) {
  auto d = scratch() / "cache";
  auto flag = " --cache-dir " + d.string();
  ASSERT_EQ(run("cache warm S4" + flag).code, 0);
  auto l = json::parse(run("cache list" + flag).out);
  EXPECT_EQ(l["entries"].size(), 1u);
  auto t = json::parse(run("chartab S4" + flag).out);
  EXPECT_EQ(t["origin"], "cache");
  auto nc = json::parse(run("chartab S4 --no-cache" + flag).out);
  EXPECT_EQ(nc["origin"], "computed");
  run("cache clear" + flag);
  EXPECT_TRUE(json::parse(run("cache list" + flag).out)["entries"].empty());
  fs::remove_all(d.parent_path());
}

TEST(Cli, SubgroupsFlag) {
  auto d = scratch();
  // C3 inside Q12 = C3 ⋊ C4, written as the square of the order-6 generator word
  write(d / "subs.json", R"([[{"word": [0, 0]}]])");
  auto r = run("edim Q12 --field Q --subgroups " + (d / "subs.json").string());
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["lower"], 2);
  write(d / "perm.json", R"([[[[0, 1, 2]]]])");
  EXPECT_EQ(run("edim " + fixture("groups/s3.json") + " --subgroups " + (d / "perm.json").string()).code, 0);
  write(d / "alien.json", R"([[[[0, 1]], [[0, 1, 2, 3]]]])");
  EXPECT_EQ(run("edim " + fixture("groups/s3.json") + " --subgroups " + (d / "alien.json").string()).code, 2);
  fs::remove_all(d);
}
