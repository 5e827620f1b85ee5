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

#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qmeas/errors.hpp"

namespace {

using namespace qmeas::cli;

// Every subcommand accepts a model either as a positional file path or
// as --model (catalog name or path).
void add_model_arg(CLI::App* cmd, std::string* target) {
  auto* positional = cmd->add_option("file", *target, "Model file (JSON)");
  auto* named = cmd->add_option(
      "-m,--model", *target,
      "Model: catalog name (cnot, shift:<d>, nonproj:hadamard, "
      "nonproj:identity) or file path");
  positional->excludes(named);
  named->excludes(positional);
}

void add_format_arg(CLI::App* cmd, std::string* target) {
  cmd->add_option("--format", *target, "Output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Measuring processes for discrete quantum observables: transduction "
      "checks, outcome statistics, state reduction, instruments, and "
      "infinite-gain readout algebra"};
  app.require_subcommand(1);

  ValidateOptions validate_opt;
  auto* validate = app.add_subcommand(
      "validate", "Check the transduction requirement for a model");
  add_model_arg(validate, &validate_opt.model);
  validate->add_option("--tol", validate_opt.tolerance,
                       "Verdict tolerance on both criteria")
      ->capture_default_str();
  add_format_arg(validate, &validate_opt.format);

  ProbsOptions probs_opt;
  auto* probs = app.add_subcommand(
      "probs", "Outcome distribution of the probe measurement");
  add_model_arg(probs, &probs_opt.model);
  probs->add_option("-s,--state", probs_opt.state,
                    "Object state: zero|one|plus|uniform or comma-separated "
                    "amplitudes")
      ->required();
  add_format_arg(probs, &probs_opt.format);

  ReduceOptions reduce_opt;
  auto* reduce = app.add_subcommand(
      "reduce", "Posterior object state conditional on an outcome");
  add_model_arg(reduce, &reduce_opt.model);
  reduce->add_option("-s,--state", reduce_opt.state, "Object state")
      ->required();
  reduce->add_option("-o,--outcome", reduce_opt.outcome, "Outcome value")
      ->required();
  add_format_arg(reduce, &reduce_opt.format);

  InstrumentOptions instrument_opt;
  auto* instrument = app.add_subcommand(
      "instrument", "Kraus sets and Choi matrices of the derived instrument");
  add_model_arg(instrument, &instrument_opt.model);
  add_format_arg(instrument, &instrument_opt.format);

  JointOptions joint_opt;
  auto* joint = app.add_subcommand(
      "joint",
      "Joint and conditional statistics with a later object measurement, "
      "plus the posterior-consistency residual");
  add_model_arg(joint, &joint_opt.model);
  joint->add_option("-s,--state", joint_opt.state, "Object state")->required();
  joint->add_option("-x,--x-observable", joint_opt.x_observable,
                    "Later observable: sigmax|sigmay|sigmaz|identity|"
                    "diag:v1,v2,...")
      ->required();
  joint->add_option("--delay", joint_opt.delay,
                    "Free-evolution time before the later measurement");
  joint->add_option("--hbar", joint_opt.hbar, "Value of hbar");
  joint->add_option("--tol", joint_opt.tolerance,
                    "Tolerance for the consistency residual")
      ->capture_default_str();
  add_format_arg(joint, &joint_opt.format);

  ConsecutiveOptions consecutive_opt;
  auto* consecutive = app.add_subcommand(
      "consecutive",
      "Joint outcome distribution of two consecutive measurements");
  consecutive->add_option("--m1", consecutive_opt.first, "First model")
      ->required();
  consecutive->add_option("--m2", consecutive_opt.second, "Second model")
      ->required();
  consecutive->add_option("-s,--state", consecutive_opt.state, "Object state")
      ->required();
  add_format_arg(consecutive, &consecutive_opt.format);

  AmplifyOptions amplify_opt;
  auto* amplify = app.add_subcommand(
      "amplify",
      "Infinite-gain readout: meter observable, exact cancellation, and "
      "macroscopic commutativity");
  add_model_arg(amplify, &amplify_opt.model);
  amplify->add_option("-s,--state", amplify_opt.state, "Object state")
      ->required();
  amplify->add_option("--hbar", amplify_opt.hbar,
                      "hbar in the posited canonical commutator");
  add_format_arg(amplify, &amplify_opt.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends
    }
    app.exit(e);
    return kExitParse;
  }

  std::function<int()> run;
  if (*validate) {
    run = [&] { return run_validate(validate_opt, std::cout, std::cerr); };
  } else if (*probs) {
    run = [&] { return run_probs(probs_opt, std::cout, std::cerr); };
  } else if (*reduce) {
    run = [&] { return run_reduce(reduce_opt, std::cout, std::cerr); };
  } else if (*instrument) {
    run = [&] { return run_instrument(instrument_opt, std::cout, std::cerr); };
  } else if (*joint) {
    run = [&] { return run_joint(joint_opt, std::cout, std::cerr); };
  } else if (*consecutive) {
    run = [&] { return run_consecutive(consecutive_opt, std::cout, std::cerr); };
  } else {
    run = [&] { return run_amplify(amplify_opt, std::cout, std::cerr); };
  }

  try {
    return run();
  } catch (const qmeas::ModelParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const qmeas::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitParse;
  }
}
