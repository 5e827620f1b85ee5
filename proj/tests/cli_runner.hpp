// Copyright 2026 The qmeasure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace qmeas::testing {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::filesystem::path scratch_dir() {
  const auto dir =
      std::filesystem::temp_directory_path() /
      ("qmeas-tests-" + std::to_string(static_cast<long>(::getpid())));
  std::filesystem::create_directories(dir);
  return dir;
}

/// Runs the CLI binary through the shell, capturing streams. Arguments
/// are single-quoted; none of the tests need embedded quotes.
inline CliResult run_cli(const std::vector<std::string>& args) {
  static int counter = 0;
  const auto dir = scratch_dir();
  const auto out_path = dir / ("out-" + std::to_string(counter) + ".txt");
  const auto err_path = dir / ("err-" + std::to_string(counter) + ".txt");
  ++counter;

  std::string command = QMEAS_CLI_PATH;
  for (const auto& a : args) {
    command += " '" + a + "'";
  }
  command += " > '" + out_path.string() + "' 2> '" + err_path.string() + "'";

  const int status = std::system(command.c_str());
  const int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {exit_code, read_file(out_path), read_file(err_path)};
}

inline std::string fixture(const std::string& name) {
  return std::string(QMEAS_FIXTURES_DIR) + "/" + name;
}

}  // namespace qmeas::testing
