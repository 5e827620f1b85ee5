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

#include <iosfwd>
#include <optional>
#include <string>

namespace qmeas::cli {

// Exit codes shared by every subcommand: 0 success, 1 semantic failure
// (failed verification, zero-probability conditioning), 2 parse or
// validation problems with the inputs.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;

struct ValidateOptions {
  std::string model;
  double tolerance = 1e-8;
  std::string format = "table";
};

struct ProbsOptions {
  std::string model;
  std::string state;
  std::string format = "table";
};

struct ReduceOptions {
  std::string model;
  std::string state;
  std::string outcome;
  std::string format = "table";
};

struct InstrumentOptions {
  std::string model;
  std::string format = "table";
};

struct JointOptions {
  std::string model;
  std::string state;
  std::string x_observable;
  std::optional<double> delay;
  std::optional<double> hbar;
  double tolerance = 1e-8;
  std::string format = "table";
};

struct ConsecutiveOptions {
  std::string first;
  std::string second;
  std::string state;
  std::string format = "table";
};

struct AmplifyOptions {
  std::string model;
  std::string state;
  std::optional<double> hbar;
  std::string format = "table";
};

int run_validate(const ValidateOptions& opt, std::ostream& out,
                 std::ostream& err);
int run_probs(const ProbsOptions& opt, std::ostream& out, std::ostream& err);
int run_reduce(const ReduceOptions& opt, std::ostream& out, std::ostream& err);
int run_instrument(const InstrumentOptions& opt, std::ostream& out,
                   std::ostream& err);
int run_joint(const JointOptions& opt, std::ostream& out, std::ostream& err);
int run_consecutive(const ConsecutiveOptions& opt, std::ostream& out,
                    std::ostream& err);
int run_amplify(const AmplifyOptions& opt, std::ostream& out,
                std::ostream& err);

}  // namespace qmeas::cli
