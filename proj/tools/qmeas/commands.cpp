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

#include "commands.hpp"

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <utility>

#include <json.hpp>

#include "qmeas/amplifier.hpp"
#include "qmeas/catalog.hpp"
#include "qmeas/model_io.hpp"
#include "qmeas/reduction.hpp"

namespace qmeas::cli {

namespace {

using nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Input-phase wrapper: any domain complaint while resolving models,
// states or observables is a parse-class failure (exit 2), not a
// semantic one.
template <typename F>
auto input_phase(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ModelParseError&) {
    throw;
  } catch (const Error& e) {
    throw ModelParseError(e.what());
  }
}

struct LoadedModel {
  MeasuringProcess process;
  ModelFile file;
  std::string label;
};

LoadedModel resolve_model(const std::string& ref) {
  return input_phase([&]() -> LoadedModel {
    if (is_catalog_name(ref)) {
      MeasuringProcess mp = model_by_name(ref);
      ModelFile mf = from_measuring_process(mp);
      mf.origin = ref;
      return {std::move(mp), std::move(mf), ref};
    }
    ModelFile mf = load_model_file(ref);
    MeasuringProcess mp = to_measuring_process(mf);
    return {std::move(mp), std::move(mf), ref};
  });
}

Ket resolve_state(const std::string& text, Eigen::Index dim,
                  std::ostream& err) {
  std::string warning;
  Ket state = input_phase([&] { return parse_state(text, dim, &warning); });
  if (!warning.empty()) {
    err << "warning: " << warning << "\n";
  }
  return state;
}

double parse_outcome_value(const std::string& text) {
  return input_phase([&]() -> double {
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) {
        throw ValidationError("");
      }
      return v;
    } catch (const std::exception&) {
      throw ValidationError("bad outcome value '" + text + "'");
    }
  });
}

ordered_json matrix_to_json(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(ordered_json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json distribution_to_json(const OutcomeDistribution& dist) {
  ordered_json rows = ordered_json::array();
  for (const auto& o : dist.outcomes) {
    rows.push_back({{"value", o.value}, {"probability", o.probability}});
  }
  return rows;
}

void print_json(std::ostream& out, const ordered_json& j) {
  out << j.dump(2) << "\n";
}

// Matrices in tables use the same [re, im] convention as model files.
void print_matrix(std::ostream& out, const ComplexMatrix& m,
                  const std::string& indent) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << indent << "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out << (j == 0 ? "" : ", ") << "[" << fmt(m(i, j).real()) << ", "
          << fmt(m(i, j).imag()) << "]";
    }
    out << "]\n";
  }
}

void print_distribution(std::ostream& out, const OutcomeDistribution& dist,
                        const std::string& indent) {
  for (const auto& o : dist.outcomes) {
    out << indent << std::left << std::setw(16) << fmt(o.value)
        << fmt(o.probability) << "\n";
  }
}

EvolutionSpec resolve_evolution(const LoadedModel& model,
                                std::optional<double> delay,
                                std::optional<double> hbar) {
  ComplexMatrix h = model.file.evolution
                        ? model.file.evolution->hamiltonian
                        : ComplexMatrix::Zero(model.process.dim_s(),
                                              model.process.dim_s());
  const double t = delay.value_or(
      model.file.evolution ? model.file.evolution->delay : 0.0);
  const double hb = hbar.value_or(
      model.file.evolution ? model.file.evolution->hbar : 1.0);
  return input_phase([&] { return EvolutionSpec(std::move(h), t, hb); });
}

}  // namespace

int run_validate(const ValidateOptions& opt, std::ostream& out,
                 std::ostream& err) {
  const LoadedModel model = resolve_model(opt.model);
  const TransductionReport report =
      check_transduction(model.process, opt.tolerance);

  if (opt.format == "json") {
    ordered_json j;
    j["holds"] = report.holds;
    j["noise_norm"] = report.noise_norm;
    j["pvm_distance"] = report.pvm_distance;
    j["tolerance"] = report.tolerance;
    ordered_json matching = ordered_json::array();
    for (const auto& m : report.outcome_matching) {
      ordered_json entry;
      entry["measured"] = m.measured_value;
      if (m.probe_value) {
        entry["probe"] = *m.probe_value;
      } else {
        entry["probe"] = nullptr;
      }
      matching.push_back(std::move(entry));
    }
    j["outcome_matching"] = std::move(matching);
    print_json(out, j);
  } else {
    out << "model:         " << model.label << "\n";
    out << "transduction:  " << (report.holds ? "HOLDS" : "FAILS") << "\n";
    out << "noise norm:    " << fmt(report.noise_norm) << "\n";
    out << "pvm distance:  " << fmt(report.pvm_distance) << "\n";
    out << "tolerance:     " << fmt(report.tolerance) << "\n";
    out << "outcome map:\n";
    for (const auto& m : report.outcome_matching) {
      out << "  " << std::left << std::setw(16) << fmt(m.measured_value)
          << "-> " << (m.probe_value ? fmt(*m.probe_value) : "(unmatched)")
          << "\n";
    }
  }
  if (!report.holds) {
    err << "transduction requirement fails (noise norm "
        << fmt(report.noise_norm) << ", pvm distance "
        << fmt(report.pvm_distance) << ")\n";
  }
  return report.holds ? kExitSuccess : kExitFailure;
}

int run_probs(const ProbsOptions& opt, std::ostream& out, std::ostream& err) {
  const LoadedModel model = resolve_model(opt.model);
  const Ket psi = resolve_state(opt.state, model.process.dim_s(), err);
  const OutcomeDistribution dist = outcome_distribution(model.process, psi);

  if (opt.format == "json") {
    ordered_json j;
    j["outcomes"] = distribution_to_json(dist);
    print_json(out, j);
  } else {
    out << std::left << std::setw(16) << "value" << "probability\n";
    print_distribution(out, dist, "");
  }
  return kExitSuccess;
}

int run_reduce(const ReduceOptions& opt, std::ostream& out, std::ostream& err) {
  const LoadedModel model = resolve_model(opt.model);
  const Ket psi = resolve_state(opt.state, model.process.dim_s(), err);
  const double outcome = parse_outcome_value(opt.outcome);

  const double probability =
      outcome_distribution(model.process, psi)
          .probability_of(outcome,
                          model.process.probe().value_match_tolerance());
  const DensityOperator posterior =
      posterior_state(model.process, psi, outcome);

  if (opt.format == "json") {
    ordered_json j;
    j["outcome"] = outcome;
    j["probability"] = probability;
    j["posterior"] = matrix_to_json(posterior.matrix());
    print_json(out, j);
  } else {
    out << "outcome:      " << fmt(outcome) << "\n";
    out << "probability:  " << fmt(probability) << "\n";
    out << "posterior:\n";
    print_matrix(out, posterior.matrix(), "  ");
  }
  return kExitSuccess;
}

int run_instrument(const InstrumentOptions& opt, std::ostream& out,
                   std::ostream& err) {
  (void)err;
  const LoadedModel model = resolve_model(opt.model);
  const Instrument instrument = extract_instrument(model.process);

  if (opt.format == "json") {
    ordered_json branches = ordered_json::array();
    for (const auto& b : instrument.branches) {
      ordered_json branch;
      branch["value"] = b.value;
      ordered_json kraus = ordered_json::array();
      for (const auto& k : b.kraus) {
        kraus.push_back(matrix_to_json(k));
      }
      branch["kraus"] = std::move(kraus);
      branch["choi"] = matrix_to_json(b.choi);
      branches.push_back(std::move(branch));
    }
    ordered_json j;
    j["dim"] = instrument.dim;
    j["branches"] = std::move(branches);
    print_json(out, j);
  } else {
    for (const auto& b : instrument.branches) {
      out << "outcome " << fmt(b.value) << "  (" << b.kraus.size()
          << " Kraus operator" << (b.kraus.size() == 1 ? "" : "s") << ")\n";
      for (std::size_t i = 0; i < b.kraus.size(); ++i) {
        out << "  kraus[" << i << "]:\n";
        print_matrix(out, b.kraus[i], "    ");
      }
      out << "  choi:\n";
      print_matrix(out, b.choi, "    ");
    }
  }
  return kExitSuccess;
}

int run_joint(const JointOptions& opt, std::ostream& out, std::ostream& err) {
  const LoadedModel model = resolve_model(opt.model);
  const Ket psi = resolve_state(opt.state, model.process.dim_s(), err);
  const Observable x = input_phase(
      [&] { return named_observable(opt.x_observable, model.process.dim_s()); });
  const EvolutionSpec evo = resolve_evolution(model, opt.delay, opt.hbar);

  const OutcomeDistribution dist = outcome_distribution(model.process, psi);
  struct Row {
    double a;
    double x;
    double joint;
    std::optional<double> conditional;
  };
  std::vector<Row> rows;
  for (const auto& o : dist.outcomes) {
    for (const auto& xo : x.outcomes()) {
      Row row{o.value, xo.value,
              joint_probability(model.process, psi, evo, x, o.value, xo.value),
              std::nullopt};
      if (o.probability > tol::probability) {
        row.conditional = conditional_probability(model.process, psi, evo, x,
                                                  xo.value, o.value);
      }
      rows.push_back(row);
    }
  }
  const BayesReport bayes =
      bayes_check(model.process, psi, evo, x, opt.tolerance);

  if (opt.format == "json") {
    ordered_json entries = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json e;
      e["outcome"] = r.a;
      e["x"] = r.x;
      e["joint"] = r.joint;
      if (r.conditional) {
        e["conditional"] = *r.conditional;
      } else {
        e["conditional"] = nullptr;
      }
      entries.push_back(std::move(e));
    }
    ordered_json j;
    j["delay"] = evo.delay();
    j["hbar"] = evo.hbar();
    j["entries"] = std::move(entries);
    j["bayes_residual"] = bayes.max_discrepancy;
    j["bayes_pass"] = bayes.pass;
    j["tolerance"] = bayes.tolerance;
    print_json(out, j);
  } else {
    out << std::left << std::setw(16) << "outcome" << std::setw(16) << "x"
        << std::setw(22) << "joint" << "conditional\n";
    for (const auto& r : rows) {
      out << std::left << std::setw(16) << fmt(r.a) << std::setw(16)
          << fmt(r.x) << std::setw(22) << fmt(r.joint)
          << (r.conditional ? fmt(*r.conditional) : "(zero-probability)")
          << "\n";
    }
    out << "bayes residual: " << fmt(bayes.max_discrepancy) << " ("
        << (bayes.pass ? "PASS" : "FAIL") << " at tolerance "
        << fmt(bayes.tolerance) << ")\n";
  }
  if (!bayes.pass) {
    err << "posterior states do not reproduce the conditional distribution\n";
  }
  return bayes.pass ? kExitSuccess : kExitFailure;
}

int run_consecutive(const ConsecutiveOptions& opt, std::ostream& out,
                    std::ostream& err) {
  const LoadedModel first = resolve_model(opt.first);
  const LoadedModel second = resolve_model(opt.second);
  const Ket psi = resolve_state(opt.state, first.process.dim_s(), err);
  const JointDistribution joint =
      consecutive_joint(first.process, second.process, psi);

  if (opt.format == "json") {
    ordered_json entries = ordered_json::array();
    for (const auto& o : joint.outcomes) {
      entries.push_back({{"first", o.first},
                         {"second", o.second},
                         {"probability", o.probability}});
    }
    ordered_json j;
    j["outcomes"] = std::move(entries);
    print_json(out, j);
  } else {
    out << std::left << std::setw(16) << "first" << std::setw(16) << "second"
        << "probability\n";
    for (const auto& o : joint.outcomes) {
      out << std::left << std::setw(16) << fmt(o.first) << std::setw(16)
          << fmt(o.second) << fmt(o.probability) << "\n";
    }
  }
  return kExitSuccess;
}

int run_amplify(const AmplifyOptions& opt, std::ostream& out,
                std::ostream& err) {
  const LoadedModel model = resolve_model(opt.model);
  const Ket psi = resolve_state(opt.state, model.process.dim_s(), err);

  const std::string gain_name =
      model.file.amplifier ? model.file.amplifier->gain : "G";
  const std::string conjugate_name =
      model.file.amplifier ? model.file.amplifier->conjugate_gain : "G'";
  const double hbar = opt.hbar.value_or(
      model.file.evolution ? model.file.evolution->hbar : 1.0);

  const AmplifierSpec spec = input_phase([&] {
    return AmplifierSpec(GainSymbol{gain_name}, model.process.probe(),
                         GainSymbol{conjugate_name});
  });
  const ReadoutReport readout = readout_equivalence(model.process, spec, psi);
  // No conjugate probe matrix exists in a model file; the canonical
  // commutator -i hbar I is supplied as the posited input.
  const MacroCommutativityReport macro = macro_commutativity(
      spec, ComplexMatrix(Complex(0.0, -hbar) *
                          identity(model.process.dim_a())));
  const bool ok = readout.gain_cancellation_exact &&
                  macro.all_entries_infinitesimal;

  if (opt.format == "json") {
    ordered_json j;
    j["gain"] = gain_name;
    j["conjugate_gain"] = conjugate_name;
    j["gain_cancellation_exact"] = readout.gain_cancellation_exact;
    j["transduction_holds"] = readout.transduction_holds;
    j["meter_distribution"] = distribution_to_json(readout.meter_distribution);
    j["max_diff_vs_probe"] = readout.max_diff_vs_probe;
    j["max_diff_vs_object"] = readout.max_diff_vs_object;
    j["matches_object"] = readout.matches_object;
    j["hbar"] = hbar;
    ordered_json commutator = ordered_json::array();
    for (Eigen::Index i = 0; i < macro.commutator.rows(); ++i) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index k = 0; k < macro.commutator.cols(); ++k) {
        row.push_back(macro.commutator.at(i, k).to_string());
      }
      commutator.push_back(std::move(row));
    }
    j["macro_commutator"] = std::move(commutator);
    j["all_entries_infinitesimal"] = macro.all_entries_infinitesimal;
    print_json(out, j);
  } else {
    out << "gain symbols:        " << gain_name << ", " << conjugate_name
        << "\n";
    out << "gain cancellation:   "
        << (readout.gain_cancellation_exact ? "exact" : "FAILED") << "\n";
    out << "transduction:        "
        << (readout.transduction_holds ? "HOLDS" : "FAILS") << "\n";
    out << "meter distribution (standard readings):\n";
    print_distribution(out, readout.meter_distribution, "  ");
    out << "meter vs probe:      max diff " << fmt(readout.max_diff_vs_probe)
        << "\n";
    out << "meter vs object:     " << (readout.matches_object ? "PASS" : "FAIL")
        << " (max diff " << fmt(readout.max_diff_vs_object) << ")\n";
    out << "macro commutator with posited [B,B'] = -i*hbar*I, hbar = "
        << fmt(hbar) << ":\n";
    for (Eigen::Index i = 0; i < macro.commutator.rows(); ++i) {
      out << "  [";
      for (Eigen::Index k = 0; k < macro.commutator.cols(); ++k) {
        out << (k == 0 ? "" : ", ") << macro.commutator.at(i, k).to_string();
      }
      out << "]\n";
    }
    out << "all entries infinitesimal: "
        << (macro.all_entries_infinitesimal ? "PASS" : "FAIL") << "\n";
  }
  if (!ok) {
    err << "amplification-stage checks failed\n";
  }
  return ok ? kExitSuccess : kExitFailure;
}

}  // namespace qmeas::cli
