#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

using Json = nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string("\"") + MINEX_CLI_PATH + "\" " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("minex_cli_" + name)).string();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

TEST(Cli, BallCounts) {
  const Result r = run("ball \"Z^2|gens=(1,0),(0,1),sym\" --radius 2");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["num_vertices"], 13);
  EXPECT_EQ(j["graph"]["vertices"].size(), 13u);
  EXPECT_EQ(j["command"], "ball");

  const Result zero = run("ball \"Z^2\" --radius 0");
  ASSERT_EQ(zero.code, 0);
  EXPECT_EQ(Json::parse(zero.out)["num_vertices"], 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("ball \"Z^2 | gens=(1,0,0)\" --radius 2").code, 2);
  EXPECT_EQ(run("ball \"Q^2\" --radius 2").code, 2);
  EXPECT_EQ(run("ball \"Z\" --radius -1").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, CapacityExit) { EXPECT_EQ(run("ball \"F3\" --radius 12 --cap 1000").code, 3); }

TEST(Cli, ConstructThenVerifyThroughPipe) {
  const std::string cmd = std::string("\"") + MINEX_CLI_PATH + "\" minor construct-z2s2 --m 5 | \"" +
                          MINEX_CLI_PATH + "\" minor verify --in - > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 0);
}

TEST(Cli, TamperedDecompositionFailsVerification) {
  const Result made = run("minor construct-z2s2 --m 4");
  ASSERT_EQ(made.code, 0);
  Json doc = Json::parse(made.out);
  auto& sets = doc["decomposition"]["sets"];
  ASSERT_EQ(sets.size(), 4u);
  sets[1] = sets[0];
  const std::string path = temp_path("tampered.json");
  write(path, doc.dump());
  const Result r = run("minor verify --in " + path);
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(Json::parse(r.out)["verdict"]["pass"].get<bool>());
  std::filesystem::remove(path);
}

TEST(Cli, SearchOnTreeExhaustsWithoutMinor) {
  const std::string path = temp_path("tree.json");
  write(path, R"({"vertices":[{"id":0},{"id":1},{"id":2},{"id":3},{"id":4}],"edges":[[0,1],[0,2],[1,3],[1,4]]})");
  EXPECT_EQ(run("minor find --host " + path + " --m 3").code, 4);
  EXPECT_EQ(run("minor find --host " + path + " --m 2").code, 0);
  std::filesystem::remove(path);
}

TEST(Cli, FindOnGridVerifies) {
  const Result r = run("minor find --spec \"Z^2\" --radius 4 --m 4");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(Json::parse(r.out)["verdict"]["pass"].get<bool>());
}

TEST(Cli, KprExitCodes) {
  const Result single = run("kpr --spec \"Z^2\" --radius 0 --m 2 --s 1");
  ASSERT_EQ(single.code, 0);
  EXPECT_TRUE(Json::parse(single.out)["reports"][0]["pass"].get<bool>());
  EXPECT_EQ(run("kpr --spec \"Z^2\" --radius 0 --m 7 --s 1").code, 2);
  EXPECT_EQ(run("kpr --spec \"Z^2\" --radius 6 --m 1 --s 1 --format csv").code, 0);
}

TEST(Cli, RaysExitCodes) {
  const Result ok = run("rays \"Z^2\" --m 3 --radius 40");
  ASSERT_EQ(ok.code, 0);
  const Json j = Json::parse(ok.out);
  EXPECT_TRUE(j["verdict"]["pass"].get<bool>());

  const Result small = run("rays \"Z^2\" --m 2 --radius 3");
  EXPECT_EQ(small.code, 5);
  EXPECT_TRUE(Json::parse(small.out).contains("suggested_radius"));

  EXPECT_EQ(run("rays \"F2\" --m 3 --radius 10").code, 2);
}

TEST(Cli, CollapseBlocks) {
  const Result r = run("collapse --spec \"Z\" --radius 9 --block 2");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["quotient"]["vertices"].size(), 10u);
}

TEST(Cli, IdenticalRunsGiveIdenticalBytes) {
  for (const char* args : {"minor find --spec \"Z^2\" --radius 3 --m 4 --seed 7", "rays \"Z^2\" --m 3 --radius 40",
                           "kpr --spec \"Z^2\" --radius 6 --m 2 --s 1,2 --threads 2"}) {
    const Result a = run(args);
    const Result b = run(args);
    EXPECT_EQ(a.code, b.code) << args;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_FALSE(a.out.empty()) << args;
  }
}

TEST(Cli, OutputFile) {
  const std::string path = temp_path("ball.json");
  ASSERT_EQ(run("--out " + path + " ball \"Z\" --radius 3").code, 0);
  std::ifstream in(path);
  const Json j = Json::parse(in);
  EXPECT_EQ(j["num_vertices"], 7);
  std::filesystem::remove(path);
}

}  // namespace
