#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hsk_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  Result run(const std::string& args) {
    const std::string cmd = std::string(HSK_CLI_PATH) + " " + args + " 2>" + (dir_ / "stderr").string();
    Result r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  fs::path dir_;
};

const char* kFiveVertex = "p hs 5 4 3 1\n1 2 4\n1 2 5\n2 3 4\n2 3 5\n";

}  // namespace

TEST_F(Cli, KernelizeDecidesFiveVertex) {
  const fs::path in = write("f.hs", kFiveVertex);
  const fs::path rep = dir_ / "r.json";
  const Result r = run("kernelize " + in.string() + " --report-json " + rep.string());
  EXPECT_EQ(r.code, 10);
  EXPECT_TRUE(r.out.empty());
  std::ifstream rf(rep);
  const auto j = nlohmann::json::parse(rf);
  EXPECT_EQ(j["verdict"], "yes");
  EXPECT_EQ(j["n_initial"], 5);
  EXPECT_EQ(j["k_initial"], 1);
  EXPECT_EQ(j["k_overridden"], false);
  EXPECT_EQ(j["bound"], 4 * j["k_final"].get<int>() * j["k_final"].get<int>() + j["k_final"].get<int>());
}

TEST_F(Cli, KernelizeNoAndOverride) {
  const fs::path in = write("f.hs", kFiveVertex);
  EXPECT_EQ(run("kernelize " + in.string() + " --k 0").code, 20);
  EXPECT_EQ(run("solve " + in.string()).out, "yes\n");
  const Result no = run("solve " + in.string() + " --k 0");
  EXPECT_EQ(no.code, 20);
  EXPECT_EQ(no.out, "no\n");
}

TEST_F(Cli, KernelOutputParses) {
  // Complete 3-uniform hypergraph on 4 vertices: no rule fires.
  std::ostringstream text;
  text << "p hs 4 4 3 3\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n";
  const fs::path in = write("k4.hs", text.str());
  const fs::path rep = dir_ / "r.json";
  const Result r = run("kernelize " + in.string() + " --report-json " + rep.string());
  ASSERT_EQ(r.code, 0) << r.out;
  const hsk::Instance kernel = hsk::parse_instance(r.out);
  EXPECT_EQ(kernel.edge_count(), 4u);
  EXPECT_NE(r.out.find("c kernel:"), std::string::npos);
  std::ifstream rf(rep);
  EXPECT_EQ(nlohmann::json::parse(rf)["verdict"], "kernel");
}

TEST_F(Cli, StdinInput) {
  const fs::path in = write("f.hs", kFiveVertex);
  EXPECT_EQ(run("solve - < " + in.string()).out, "yes\n");
}

TEST_F(Cli, FormatAndUsageErrors) {
  EXPECT_EQ(run("kernelize " + write("bad.hs", "p hs 3 1 3 1\n1 4\n").string()).code, 1);
  EXPECT_EQ(run("kernelize " + (dir_ / "missing.hs").string()).code, 1);
  EXPECT_EQ(run("kernelize " + write("d2.hs", "p hs 2 1 2 1\n1 2\n").string()).code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("").code, 1);
}

TEST_F(Cli, GenIsDeterministicAndParses) {
  const Result a = run("gen --seed 4 --n 10 --m 12 --d 3 --k 2 --plant 2");
  const Result b = run("gen --seed 4 --n 10 --m 12 --d 3 --k 2 --plant 2");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const hsk::Instance inst = hsk::parse_instance(a.out);
  EXPECT_EQ(inst.edge_count(), 12u);
  EXPECT_TRUE(hsk::decide_brute_force(inst));
}

TEST_F(Cli, VerifyReportsAgreement) {
  const Result r = run("verify --trials 100 --seed 3 --n 14 --d 3 --kmax 3 --threads 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("100/100 agree"), std::string::npos) << r.out;
}

TEST_F(Cli, DumpsGoToStderr) {
  std::string text = "p hs 6 3 3 1\n1 2\n3 4\n5 6\n";
  const fs::path in = write("pairs.hs", text);
  const Result r = run("kernelize " + in.string() + " --trace --dump-lp");
  EXPECT_EQ(r.code, 20);
  std::ifstream err(dir_ / "stderr");
  const std::string log((std::istreambuf_iterator<char>(err)), std::istreambuf_iterator<char>());
  EXPECT_NE(log.find("verdict: no"), std::string::npos) << log;
}
