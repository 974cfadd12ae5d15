#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef CFOR_CLI_PATH
#error "CFOR_CLI_PATH must name the cfor executable"
#endif

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(CFOR_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("cfor_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir;
};

}  // namespace

TEST_F(CliTest, RunWritesErrorsLogAndManifest) {
  const std::string cfg = write("taylor.cfg", "case = taylor\nN = 64\nk = 1\nt_final = 0.1\n");
  EXPECT_EQ(run("run " + cfg + " -q -o " + (dir / "out").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "taylor_errors.csv"));
  EXPECT_TRUE(fs::exists(dir / "out" / "taylor_run.log"));
  EXPECT_TRUE(fs::exists(dir / "out" / "taylor_manifest.txt"));
  std::ifstream manifest(dir / "out" / "taylor_manifest.txt");
  std::stringstream text;
  text << manifest.rdbuf();
  EXPECT_NE(text.str().find("case = taylor"), std::string::npos);
}

TEST_F(CliTest, MissingNIsAConfigError) {
  const std::string cfg = write("bad.cfg", "case = taylor\nk = 1\n");
  EXPECT_EQ(run("run " + cfg + " -q -o " + dir.string()), 2);
}

TEST_F(CliTest, UnknownTableIsAUsageError) { EXPECT_EQ(run("reproduce-table 9"), 2); }

TEST_F(CliTest, UnknownVerbIsAUsageError) { EXPECT_EQ(run("simulate"), 2); }

TEST_F(CliTest, MissingConfigFileIsAnIoError) { EXPECT_EQ(run("run " + (dir / "none.cfg").string() + " -q"), 4); }

TEST_F(CliTest, SolverFailureExitCode) {
  // Strict positivity stops the unfiltered shock run at the first pressure undershoot.
  const std::string cfg = write("shock.cfg", "case = shock_entropy\nN = 400\nt_final = 0.2\npositivity = strict\nfilter = off\n");
  EXPECT_EQ(run("run " + cfg + " -q -o " + dir.string()), 3);
}

TEST_F(CliTest, ListAndStencil) {
  EXPECT_EQ(run("list"), 0);
  EXPECT_EQ(run("stencil -q 1 -o " + (dir / "w.csv").string()), 0);
  std::ifstream in(dir / "w.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "offset,weight");
}

TEST_F(CliTest, AnalyzeWritesResponseWithUnitDcGain) {
  EXPECT_EQ(run("analyze -q 0 --samples 64 -o " + dir.string()), 0);
  fs::path csv;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().filename().string().rfind("response_", 0) == 0) csv = e.path();
  }
  ASSERT_FALSE(csv.empty());
  std::ifstream in(csv);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  std::istringstream row(first);
  std::string omega, mag;
  std::getline(row, omega, ',');
  std::getline(row, mag, ',');
  EXPECT_EQ(std::stod(omega), 0.0);
  EXPECT_NEAR(std::stod(mag), 1.0, 1e-14);
}
