#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("polaris_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    ASSERT_EQ(run("grid --rows 8 --cols 8 --seed 2 --out " + path("g.net")).code, 0);
    ASSERT_EQ(run("kroad --net " + path("g.net") + " --v 100 --m 3 --seed 7 --out " +
                  path("L.kr")).code, 0);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string path(const std::string& name) { return (dir_ / name).string(); }

  static Result run(const std::string& args) {
    const auto out = dir_ / "stdout.txt";
    const auto err = dir_ / "stderr.txt";
    const std::string cmd = std::string(POLARIS_CLI_PATH) + " " + args + " >" + out.string() +
                            " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  static inline fs::path dir_;
};

TEST_F(Cli, KroadWritesHeaderAndIsReproducible) {
  const auto first = slurp(path("L.kr"));
  EXPECT_EQ(first.rfind("KROAD m=3 v=100 seed=7\n", 0), 0u);
  ASSERT_EQ(run("kroad --net " + path("g.net") + " --v 100 --m 3 --seed 7 --out " +
                path("L2.kr")).code, 0);
  EXPECT_EQ(slurp(path("L2.kr")), first);
}

TEST_F(Cli, KroadRejectsZeroLayers) {
  EXPECT_EQ(run("kroad --net " + path("g.net") + " --v 100 --m 0 --seed 7").code, 1);
}

TEST_F(Cli, RouteDumpsDistinctAlternatives) {
  const auto r = run("route --net " + path("g.net") + " --layers " + path("L.kr") +
                     " --algo polaris --k 3 --od r0c0,r7c7 --seed 1");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> routes;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#') routes.push_back(line);
  }
  ASSERT_EQ(routes.size(), 3u);
  EXPECT_NE(routes[0], routes[1]);
  EXPECT_NE(routes[1], routes[2]);
  EXPECT_NE(routes[0], routes[2]);
}

TEST_F(Cli, FastRouteIsCheapest) {
  auto costs = [](const std::string& out) {
    std::vector<double> c;
    std::istringstream lines(out);
    std::string line;
    while (std::getline(lines, line)) {
      const auto at = line.find("cost_s=");
      if (at != std::string::npos) c.push_back(std::stod(line.substr(at + 7)));
    }
    return c;
  };
  const auto fast = run("route --net " + path("g.net") + " --algo fast --od r1c0,r6c7 --seed 1");
  const auto pp = run("route --net " + path("g.net") + " --algo pp --k 3 --od r1c0,r6c7 --seed 1");
  ASSERT_EQ(fast.code, 0) << fast.err;
  ASSERT_EQ(pp.code, 0) << pp.err;
  const auto f = costs(fast.out);
  ASSERT_EQ(f.size(), 1u);
  for (double c : costs(pp.out)) EXPECT_LE(f[0], c);
}

TEST_F(Cli, UnknownAlgorithmIsUsageError) {
  const auto r = run("route --net " + path("g.net") + " --algo dijkstra --od r0c0,r1c1");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("dijkstra"), std::string::npos);
}

TEST_F(Cli, MissingLayersFileIsNamed) {
  const auto r = run("route --net " + path("g.net") + " --algo polaris --layers " +
                     path("absent.kr") + " --od r0c0,r1c1");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("absent.kr"), std::string::npos);
}

TEST_F(Cli, InvalidNetworkIsDataError) {
  std::ofstream(path("bad.net")) << "NODE a 0 0\nEDGE e a b 1 1\n";
  const auto r = run("validate --net " + path("bad.net"));
  EXPECT_EQ(r.code, 2);
}

TEST_F(Cli, CapExceededIsAlgorithmicError) {
  const auto r = run("route --net " + path("g.net") + " --algo kmd --epsilon 0.0001 --k 3 "
                     "--od r0c0,r0c1");
  EXPECT_EQ(r.code, 3) << r.err;
}

TEST_F(Cli, BenchTwiceIsByteIdentical) {
  const std::string args = "bench --net " + path("g.net") + " --layers " + path("L.kr") +
                           " --hotspot '0:0;1:1' --algo fast,pp,polaris --n 50 --runs 2 --seed 3";
  ASSERT_EQ(run("--threads 1 " + args + " --json " + path("a.json")).code, 0);
  ASSERT_EQ(run("--threads 3 " + args + " --json " + path("b.json")).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_FALSE(slurp(path("a.json")).empty());
}

TEST_F(Cli, SweepEmitsOneRowPerValue) {
  const auto r = run("bench --net " + path("g.net") + " --layers " + path("L.kr") +
                     " --hotspot 1:1 --n 40 --runs 1 --seed 3 --sweep m=1,2,3");
  ASSERT_EQ(r.code, 0) << r.err;
  int rows = 0;
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#' && line.find("High") == std::string::npos) ++rows;
  }
  EXPECT_EQ(rows, 3);
}

TEST_F(Cli, OdAndDemandPipeline) {
  ASSERT_EQ(run("od --net " + path("g.net") + " --hotspot 0:1 --seed 4 --out " + path("od.txt"))
                .code, 0);
  ASSERT_EQ(run("demand --net " + path("g.net") + " --od " + path("od.txt") +
                " --n 25 --seed 4 --out " + path("d.txt")).code, 0);
  const auto r = run("route --net " + path("g.net") + " --algo pr --k 2 --demand " +
                     path("d.txt") + " --seed 4");
  EXPECT_EQ(r.code, 0) << r.err;
}

}  // namespace
