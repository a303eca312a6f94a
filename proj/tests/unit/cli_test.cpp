// Copyright 2026 The orsched Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "orsched/core/io.hpp"
#include "support/tiny.hpp"

namespace orsched {
namespace {

namespace fs = std::filesystem;

class CliTest : public testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::path(testing::TempDir()) /
           ("orsched-cli-" + std::to_string(getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    SaveInstance(dir_ / "tiny.json", test::RandomTinyInstance(7));
    solved_ = Run("solve tiny.json --deterministic --time-limit 60 -o run.json");
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  // Exit code of the CLI run inside the scratch directory; output goes to
  // out.txt and err.txt.
  static int Run(const std::string& args) {
    const std::string command = "cd '" + dir_.string() + "' && '" +
                                std::string(ORSCHED_CLI) + "' " + args +
                                " > out.txt 2> err.txt";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  static std::string Read(const std::string& name) {
    std::ifstream in(dir_ / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static fs::path dir_;
  static int solved_;
};

fs::path CliTest::dir_;
int CliTest::solved_ = -1;

TEST_F(CliTest, SolveWritesAValidRun) {
  ASSERT_EQ(solved_, 0);
  const PipelineRun run = LoadRun(dir_ / "run.json");
  EXPECT_TRUE(run.validation && run.validation->ok());
  EXPECT_EQ(Run("validate run.json"), 0);
  EXPECT_NE(Read("out.txt").find("ok: 0 violations"), std::string::npos);
  EXPECT_EQ(Run("validate run.json --json"), 0);
  EXPECT_TRUE(Json::parse(Read("out.txt")).contains("violations"));
}

TEST_F(CliTest, SolveLogsOneLinePerStep) {
  ASSERT_EQ(Run("solve tiny.json --deterministic --time-limit 60 "
                "--variant warm-start -o warm.json"),
            0);
  const std::string log = Read("out.txt") + Read("err.txt");
  for (const char* step : {"step1", "step3", "step7", "step9"}) {
    EXPECT_NE(log.find(step), std::string::npos) << step;
  }
}

TEST_F(CliTest, TamperedRunFailsValidation) {
  ASSERT_EQ(solved_, 0);
  Json doc = ReadJsonFile(dir_ / "run.json");
  doc["plan"]["objective_value"] = "1";
  WriteTextFile(dir_ / "tampered.json", Dump(doc));
  EXPECT_EQ(Run("validate tampered.json"), 1);
  EXPECT_NE(Read("out.txt").find("objective"), std::string::npos);
}

TEST_F(CliTest, ReportAndGantt) {
  ASSERT_EQ(solved_, 0);
  EXPECT_EQ(Run("report run.json --format csv"), 0);
  EXPECT_EQ(Read("out.txt").rfind("ID,|D|,|J|,OF", 0), 0u);
  EXPECT_EQ(Run("gantt run.json"), 0);
  EXPECT_TRUE(Json::parse(Read("out.txt")).is_array());
  EXPECT_EQ(Run("gantt run.json --h 0 --l 1"), 0);
  const Json bars = Json::parse(Read("out.txt"));
  EXPECT_TRUE(std::any_of(bars.begin(), bars.end(), [](const Json& b) {
    return b["kind"] == "emergency";
  }));
}

TEST_F(CliTest, GenWritesInstancesAndGrid) {
  EXPECT_EQ(Run("gen -n 12 --group C --horizon 14 --rooms 3 -o c.json"), 0);
  const Instance instance = LoadInstance(dir_ / "c.json");
  EXPECT_EQ(instance.num_patients(), 12);
  EXPECT_EQ(instance.rooms, 3);
  EXPECT_EQ(Run("gen --grid --sizes 12 -o grid"), 0);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(dir_ / "grid")) {
    if (entry.path().filename() != "manifest.json") ++files;
  }
  EXPECT_EQ(files, 16);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Run(""), 2);
  EXPECT_EQ(Run("frobnicate"), 2);
  EXPECT_EQ(Run("solve missing.json"), 2);
  EXPECT_EQ(Run("solve tiny.json --noshow-mode sometimes"), 2);
  EXPECT_EQ(Run("gen --group Q -o q.json"), 2);
  WriteTextFile(dir_ / "broken.json", "{\"kind\": \"instance\"}\n");
  EXPECT_EQ(Run("solve broken.json"), 2);
  EXPECT_FALSE(Read("err.txt").empty());
  EXPECT_EQ(Run("--help"), 0);
}

}  // namespace
}  // namespace orsched
