#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
  const std::string cmd = std::string(DARKSTORE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "darkstore_cli_test";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }

  fs::path dir_;
};

const char* kSmallConfig = R"({
  "map": {"min": [0, 0], "max": [100, 100]},
  "population": {"kind": "uniform", "count": 40, "seed": 2},
  "traffic": {"kind": "uniform", "multipliers": [1]},
  "routing": {"t_max": 30, "couriers": 2, "trips_per_courier": 2},
  "search": {"coarse_grid": 4, "levels": 1, "n_warehouses": 2}
})";

TEST_F(CliTest, RunWritesOutputs) {
  const auto cfg = write("c.json", kSmallConfig);
  const auto report = dir_ / "out" / "report.json";
  EXPECT_EQ(run_cli("run " + cfg.string() + " --report " + report.string() + " --plot " +
                    (dir_ / "out" / "p.svg").string() + " --seed 5"),
            0);
  EXPECT_TRUE(fs::exists(report));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "p.svg"));
}

TEST_F(CliTest, ValidationErrorExitsOne) {
  std::string bad = kSmallConfig;
  bad.replace(bad.find("\"t_max\": 30"), 11, "\"t_max\": 0");
  EXPECT_EQ(run_cli("run " + write("bad.json", bad).string()), 1);
  EXPECT_EQ(run_cli("run " + write("c.json", kSmallConfig).string() + " --t-max -3"), 1);
  EXPECT_EQ(run_cli("frobnicate"), 1);
}

TEST_F(CliTest, IoErrorExitsTwo) {
  EXPECT_EQ(run_cli("run " + (dir_ / "missing.json").string()), 2);
  std::ofstream(dir_ / "blocker") << "x";
  EXPECT_EQ(run_cli("run " + write("c.json", kSmallConfig).string() + " --report " +
                    (dir_ / "blocker" / "r.json").string()),
            2);
}

TEST_F(CliTest, GenPopThenRunFromFile) {
  const auto csv = dir_ / "pop.csv";
  ASSERT_EQ(run_cli("gen-pop --kind gaussian --count 50 --sigma 15 --seed 3 -o " +
                    csv.string()),
            0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "id,x,y");
  const std::string cfg = std::string(R"({
    "map": {"min": [0, 0], "max": [100, 100]},
    "population": {"kind": "file", "path": ")") + csv.string() + R"("},
    "traffic": {"kind": "uniform", "multipliers": [1]},
    "routing": {"t_max": 30, "couriers": 2, "trips_per_courier": 2},
    "search": {"coarse_grid": 4, "levels": 1, "n_warehouses": 1}
  })";
  EXPECT_EQ(run_cli("run " + write("file.json", cfg).string()), 0);
}

TEST_F(CliTest, BenchAndOracleSubcommands) {
  EXPECT_EQ(run_cli("bench-scaling " + write("c.json", kSmallConfig).string() +
                    " --sizes 10,20"),
            0);
  EXPECT_EQ(run_cli("oracle-check --instances 10 --seed 2"), 0);
}

}  // namespace
