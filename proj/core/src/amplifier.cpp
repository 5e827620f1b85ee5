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

#include "qmeas/amplifier.hpp"

#include <algorithm>
#include <cmath>

namespace qmeas {

AmplifierSpec::AmplifierSpec(GainSymbol gain, Observable probe,
                             std::optional<GainSymbol> conjugate_gain,
                             std::optional<ComplexMatrix> conjugate_probe,
                             double micro_unit, double conjugate_micro_unit)
    : gain_(std::move(gain)),
      conjugate_gain_(std::move(conjugate_gain)),
      probe_(std::move(probe)),
      conjugate_probe_(std::move(conjugate_probe)),
      micro_unit_(micro_unit),
      conjugate_micro_unit_(conjugate_micro_unit) {
  if (gain_.name.empty()) {
    throw ValidationError("AmplifierSpec: empty gain symbol name");
  }
  if (conjugate_gain_ && conjugate_gain_->name == gain_.name) {
    throw ValidationError("AmplifierSpec: gain and conjugate gain must be distinct symbols");
  }
  if (!(micro_unit_ > 0.0) || !(conjugate_micro_unit_ > 0.0)) {
    throw ValidationError("AmplifierSpec: units must be positive");
  }
  if (conjugate_probe_ && (conjugate_probe_->rows() != probe_.dim() ||
                           conjugate_probe_->cols() != probe_.dim())) {
    throw DimensionError("AmplifierSpec: conjugate probe shape mismatch");
  }
  std::vector<std::string> names{gain_.name};
  if (conjugate_gain_) {
    names.push_back(conjugate_gain_->name);
  }
  ctx_ = make_context(std::move(names));
}

HyperScalar AmplifierSpec::gain_scalar() const {
  return HyperScalar::symbol(ctx_, gain_.name);
}

HyperScalar AmplifierSpec::conjugate_gain_scalar() const {
  if (!conjugate_gain_) {
    throw ValidationError("AmplifierSpec: no conjugate gain symbol");
  }
  return HyperScalar::symbol(ctx_, conjugate_gain_->name);
}

HyperScalar AmplifierSpec::macro_unit() const {
  return HyperScalar::constant(ctx_, Complex(micro_unit_, 0.0)) * gain_scalar();
}

MeterObservable meter_observable(const AmplifierSpec& spec) {
  const HyperScalar inverse_gain = invert(spec.gain_scalar());
  MeterObservable meter{
      inverse_gain * HyperOperator::lift(spec.context(), spec.probe().matrix()),
      {}};
  for (const auto& o : spec.probe().outcomes()) {
    meter.outcome_map.push_back(
        {meter_standard_reading(spec, o.value), o.projector});
  }
  return meter;
}

HyperOperator amplified_probe(const AmplifierSpec& spec) {
  return spec.gain_scalar() *
         HyperOperator::lift(spec.context(), spec.probe().matrix());
}

double meter_standard_reading(const AmplifierSpec& spec, double probe_value) {
  const HyperScalar gain = spec.gain_scalar();
  const HyperScalar amplified =
      gain * HyperScalar::constant(spec.context(), Complex(probe_value, 0.0));
  return standard_part(invert(gain) * amplified).real();
}

ReadoutReport readout_equivalence(const MeasuringProcess& mp,
                                  const AmplifierSpec& spec, const Ket& psi,
                                  double tol) {
  if (spec.probe().dim() != mp.probe().dim() ||
      operator_distance(spec.probe().matrix(), mp.probe().matrix()) >
          tol::hermitian) {
    throw ValidationError("readout_equivalence: amplifier probe differs from the process probe");
  }

  ReadoutReport report;
  report.tolerance = tol;

  // Second stage: amplify the Heisenberg probe, read it back through the
  // meter scale, demand exact collapse.
  const ComplexMatrix heisenberg = heisenberg_probe(mp);
  const HyperScalar gain = spec.gain_scalar();
  const HyperOperator amplified =
      gain * HyperOperator::lift(spec.context(), heisenberg);
  report.gain_cancellation_exact =
      (invert(gain) * amplified) == HyperOperator::lift(spec.context(), heisenberg);

  report.transduction_holds = check_transduction(mp).holds;

  // Meter distribution over standard readings, via the meter's own
  // outcome map.
  const MeterObservable meter = meter_observable(spec);
  const ComplexVector evolved =
      mp.interaction() * tensor(psi.vec(), mp.preparation().vec());
  for (const auto& o : meter.outcome_map) {
    const ComplexMatrix lifted = tensor(identity(mp.dim_s()), o.projector);
    const double p =
        std::clamp((evolved.adjoint() * lifted * evolved).value().real(), 0.0, 1.0);
    report.meter_distribution.outcomes.push_back({o.standard_value, p});
  }

  const OutcomeDistribution probe_dist = outcome_distribution(mp, psi);
  double vs_probe = 0.0;
  for (std::size_t i = 0; i < probe_dist.outcomes.size(); ++i) {
    vs_probe = std::max(
        vs_probe, std::abs(report.meter_distribution.outcomes[i].probability -
                           probe_dist.outcomes[i].probability));
  }
  report.max_diff_vs_probe = vs_probe;

  // Born distribution of the measured observable, compared over the
  // union of both spectra (an unmatched value on either side counts with
  // probability 0 on the other).
  const double match_tol = std::max(mp.measured().value_match_tolerance(),
                                    mp.probe().value_match_tolerance());
  double vs_object = 0.0;
  std::vector<bool> meter_matched(report.meter_distribution.outcomes.size(), false);
  for (const auto& ao : mp.measured().outcomes()) {
    const double born =
        (psi.vec().adjoint() * ao.projector * psi.vec()).value().real();
    double meter_p = 0.0;
    for (std::size_t i = 0; i < report.meter_distribution.outcomes.size(); ++i) {
      if (!meter_matched[i] &&
          std::abs(report.meter_distribution.outcomes[i].value - ao.value) <=
              match_tol) {
        meter_matched[i] = true;
        meter_p = report.meter_distribution.outcomes[i].probability;
        break;
      }
    }
    vs_object = std::max(vs_object, std::abs(born - meter_p));
  }
  for (std::size_t i = 0; i < report.meter_distribution.outcomes.size(); ++i) {
    if (!meter_matched[i]) {
      vs_object =
          std::max(vs_object, report.meter_distribution.outcomes[i].probability);
    }
  }
  report.max_diff_vs_object = vs_object;
  report.matches_object = vs_object <= tol;
  return report;
}

MacroCommutativityReport macro_commutativity(
    const AmplifierSpec& spec,
    std::optional<ComplexMatrix> posited_commutator) {
  if (!spec.conjugate_gain()) {
    throw ValidationError("macro_commutativity: missing conjugate gain symbol");
  }
  if (!spec.conjugate_probe() && !posited_commutator) {
    throw ValidationError(
        "macro_commutativity: need a conjugate probe matrix or a posited commutator");
  }

  const HyperScalar inv_gains =
      invert(spec.gain_scalar()) * invert(spec.conjugate_gain_scalar());

  std::optional<bool> scaling_exact;
  if (spec.conjugate_probe()) {
    const ComplexMatrix& b = spec.probe().matrix();
    const ComplexMatrix& bp = *spec.conjugate_probe();
    const HyperOperator meter =
        invert(spec.gain_scalar()) * HyperOperator::lift(spec.context(), b);
    const HyperOperator conjugate_meter =
        invert(spec.conjugate_gain_scalar()) *
        HyperOperator::lift(spec.context(), bp);
    scaling_exact =
        hyper_commutator(meter, conjugate_meter) ==
        inv_gains * HyperOperator::lift(spec.context(), commutator(b, bp));
  }

  const ComplexMatrix k = posited_commutator
                              ? *posited_commutator
                              : commutator(spec.probe().matrix(),
                                           *spec.conjugate_probe());
  if (k.rows() != spec.probe().dim() || k.cols() != spec.probe().dim()) {
    throw DimensionError("macro_commutativity: commutator matrix shape mismatch");
  }
  MacroCommutativityReport report{
      scaling_exact, inv_gains * HyperOperator::lift(spec.context(), k), false};
  report.all_entries_infinitesimal = report.commutator.all_entries_infinitesimal();
  return report;
}

}  // namespace qmeas
