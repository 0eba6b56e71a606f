#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "oaenum/catalog.hpp"
#include "oaenum/cells.hpp"

using namespace oaenum;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(OAENUM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("oaenum-cli-" + std::to_string(std::random_device{}()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, VerifyFactorial) {
  write_oad(path("ff.oad"), full_factorial(2, 3));
  EXPECT_EQ(run("verify --file " + path("ff.oad") + " --strength 3").code, 0);
}

TEST_F(CliTest, VerifyFailureExitsOne) {
  write_oad(path("bad.oad"), Design(2, {{0, 0}, {0, 1}, {1, 0}, {0, 1}}));
  const auto r = run("verify --file " + path("bad.oad") + " --strength 2");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("fails"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("verify --strength 2").code, 2);
  EXPECT_EQ(run("verify --file " + path("missing.oad") + " --strength 2").code, 2);
  EXPECT_EQ(run("seed --runs 12 --strength 3 --out " + path("c")).code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(CliTest, TinyFamilyEndsNonexistent) {
  ASSERT_EQ(run("seed --runs 4 --strength 2 --out " + path("c")).code, 0);
  const auto r = run("extend --catalog " + path("c") + " --to 10 --quiet");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("nonexistent"), std::string::npos);
  EXPECT_NE(r.out.find("OA(4,3,2,2): 1 "), std::string::npos);
}

TEST_F(CliTest, ExtendThenRank) {
  ASSERT_EQ(run("seed --runs 160 --levels 2 --strength 4 --out " + path("c")).code, 0);
  const auto e = run("extend --catalog " + path("c") + " --to 5 --method compressed --reduce iso --pruning orbit --jobs 1");
  ASSERT_EQ(e.code, 0) << e.out;
  EXPECT_NE(e.out.find("k=5 rep 1/1"), std::string::npos);
  EXPECT_NE(e.out.find("OA(160,5,2,4): 6 iso classes"), std::string::npos);
  const auto r = run("rank --catalog " + path("c") + " --k 5");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("(0.00)  B = (5, 25, 50, 50, 25, 5)  GMA"), std::string::npos) << r.out;
}

TEST_F(CliTest, ExtendResumesFromLastLevel) {
  ASSERT_EQ(run("seed --runs 16 --strength 2 --out " + path("c")).code, 0);
  ASSERT_EQ(run("extend --catalog " + path("c") + " --to 4 --quiet").code, 0);
  const auto r = run("extend --catalog " + path("c") + " --to 5 --quiet --method identity");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("OA(16,4,2,2)"), std::string::npos);
  EXPECT_EQ(read_catalog(dir_ / "c", 5).size(), 11u);
}

TEST_F(CliTest, OdPathExpandsToIso) {
  ASSERT_EQ(run("seed --runs 16 --strength 2 --out " + path("c")).code, 0);
  ASSERT_EQ(run("extend --catalog " + path("c") + " --to 5 --reduce od --quiet").code, 0);
  const auto r = run("expand-od --catalog " + path("c") + " --k 5");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("expand to 11 iso classes"), std::string::npos) << r.out;
  EXPECT_EQ(run("rank --catalog " + path("c") + " --k 5").code, 2);
  EXPECT_EQ(run("rank --catalog " + path("c") + " --k 5 --relation od").code, 0);
}

TEST_F(CliTest, OdRejectsOddStrength) {
  ASSERT_EQ(run("seed --runs 16 --strength 3 --out " + path("c")).code, 0);
  EXPECT_EQ(run("extend --catalog " + path("c") + " --to 4 --reduce od").code, 2);
}

TEST_F(CliTest, ReduceKeepsOnePerClass) {
  const Design ff = full_factorial(2, 3);
  write_oad(path("a.oad"), ff);
  write_oad(path("b.oad"), ff.permute_rows(std::vector<int>{7, 6, 5, 4, 3, 2, 1, 0}));
  write_oad(path("c.oad"), Design(2, {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1},
                                      {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {0, 0, 0}}));
  const auto r = run("reduce --in " + path("a.oad") + " " + path("b.oad") + " " + path("c.oad") + " --relation iso");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("2 iso classes among 3 designs"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("b.oad"), std::string::npos);
}

TEST_F(CliTest, Stats) {
  write_oad(path("half.oad"), Design(2, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  const auto r = run("stats --file " + path("half.oad"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("strength=2"), std::string::npos);
  EXPECT_NE(r.out.find("A3=1"), std::string::npos);
  EXPECT_NE(r.out.find("distance (3 d.p.) (1, 0, 3, 0)"), std::string::npos) << r.out;
}

TEST_F(CliTest, CorruptCatalogExitsThree) {
  ASSERT_EQ(run("seed --runs 16 --strength 2 --out " + path("c")).code, 0);
  ASSERT_EQ(run("extend --catalog " + path("c") + " --to 4 --quiet").code, 0);
  const auto m = read_manifest(dir_ / "c");
  const fs::path f = dir_ / "c" / m->find(4)->files[0];
  const fs::path g = dir_ / "c" / m->find(4)->files[1];
  fs::copy_file(g, f, fs::copy_options::overwrite_existing);
  EXPECT_EQ(run("rank --catalog " + path("c") + " --k 4").code, 3);
}

TEST_F(CliTest, JobsFromEnvironment) {
  ASSERT_EQ(run("seed --runs 16 --strength 2 --out " + path("c")).code, 0);
  const auto r = run("extend --catalog " + path("c") + " --to 5 --help");
  EXPECT_NE(r.out.find("OAENUM_JOBS"), std::string::npos);
  EXPECT_EQ(run("extend --catalog " + path("c") + " --to 5 --quiet").code, 0);
  const std::string env = "OAENUM_JOBS=3 ";
  const std::string cmd = env + OAENUM_CLI_PATH + " extend --catalog " + path("c") + " --to 6 --quiet --help";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  pclose(pipe);
  EXPECT_NE(out.find("[3]"), std::string::npos) << out;
}
