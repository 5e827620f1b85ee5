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

#include <optional>

#include "qmeas/hyperscalar.hpp"
#include "qmeas/model.hpp"

namespace qmeas {

/// The second measurement stage: amplification of the probe observable B
/// by a formal infinite gain G into the macroscopic meter observable
/// C = G⁻¹B. The stage's dynamics is specified only by the defining
/// identity "amplified probe = G · (Heisenberg probe)"; no
/// finite-dimensional unitary realizes infinite gain, so none is modeled.
///
/// The optional conjugate data (G', B') supports the macroscopic
/// commutativity analysis of the pair C = G⁻¹B, C' = G'⁻¹B'. A
/// canonically conjugate pair with [B,B'] = −iħI does not exist in
/// finite dimension (the commutator would need nonzero trace), so the
/// posited commutator can be supplied as input data instead.
class AmplifierSpec {
 public:
  /// micro units are the quantities' microscopic scales; the macroscopic
  /// unit is gain · micro_unit, represented symbolically (see
  /// macro_unit()). Throws ValidationError when the two gain symbols
  /// coincide, a unit is not positive, or the conjugate probe shape
  /// disagrees with the probe.
  AmplifierSpec(GainSymbol gain, Observable probe,
                std::optional<GainSymbol> conjugate_gain = std::nullopt,
                std::optional<ComplexMatrix> conjugate_probe = std::nullopt,
                double micro_unit = 1.0, double conjugate_micro_unit = 1.0);

  const GainSymbol& gain() const { return gain_; }
  const std::optional<GainSymbol>& conjugate_gain() const {
    return conjugate_gain_;
  }
  const Observable& probe() const { return probe_; }
  const std::optional<ComplexMatrix>& conjugate_probe() const {
    return conjugate_probe_;
  }
  double micro_unit() const { return micro_unit_; }
  double conjugate_micro_unit() const { return conjugate_micro_unit_; }

  /// Symbol context: {G} or {G, G'} when conjugate data is present.
  const SymbolContextPtr& context() const { return ctx_; }

  /// The gain as an element of the context's algebra.
  HyperScalar gain_scalar() const;
  HyperScalar conjugate_gain_scalar() const;

  /// The macroscopic unit gain · micro_unit (an infinite element).
  HyperScalar macro_unit() const;

 private:
  GainSymbol gain_;
  std::optional<GainSymbol> conjugate_gain_;
  Observable probe_;
  std::optional<ComplexMatrix> conjugate_probe_;
  double micro_unit_;
  double conjugate_micro_unit_;
  SymbolContextPtr ctx_;
};

struct MeterOutcome {
  /// Meter reading mapped back to the standard scale; computed through
  /// the algebra as st(G⁻¹ · (G · a)) rather than copied from a.
  double standard_value;
  ComplexMatrix projector;
};

/// The macro-meter observable C = G⁻¹B with its outcome map.
struct MeterObservable {
  HyperOperator matrix;
  std::vector<MeterOutcome> outcome_map;
};

struct ReadoutReport {
  /// G⁻¹·(G·(Heisenberg probe)) equals the lifted Heisenberg probe with
  /// no tolerance; this is the second-stage readout identity and is
  /// independent of whether the model transduces.
  bool gain_cancellation_exact;
  bool transduction_holds;
  /// Distribution over standard meter readings.
  OutcomeDistribution meter_distribution;
  /// Worst gap between the meter distribution and the probe distribution
  /// (a relabeling check, expected 0).
  double max_diff_vs_probe;
  /// Worst gap between the meter distribution and the object-side Born
  /// distribution of the measured observable, over the union of both
  /// spectra.
  double max_diff_vs_object;
  /// max_diff_vs_object within tolerance; implied by transduction.
  bool matches_object;
  double tolerance;
};

struct MacroCommutativityReport {
  /// Whether hyper_commutator(G⁻¹B, G'⁻¹B') equals
  /// G⁻¹G'⁻¹·commutator(B,B') exactly; absent when no conjugate probe
  /// matrix was supplied.
  std::optional<bool> scaling_exact;
  /// G⁻¹G'⁻¹ · K for the commutator matrix K in effect (the supplied one,
  /// else commutator(B, B')).
  HyperOperator commutator;
  /// Every entry of `commutator` is infinitesimal; with finite K this is
  /// the macroscopic-commutativity conclusion.
  bool all_entries_infinitesimal;
};

/// C = G⁻¹ · B with the per-outcome readout map.
MeterObservable meter_observable(const AmplifierSpec& spec);

/// G · B; every nonzero entry is infinite.
HyperOperator amplified_probe(const AmplifierSpec& spec);

/// Standard-scale reading for probe value `a`: st(G⁻¹·(G·a)).
double meter_standard_reading(const AmplifierSpec& spec, double probe_value);

/// Runs the second-stage checks for `mp` with object state `psi`:
/// exact gain cancellation, and agreement of the meter readout
/// distribution with the probe and (when transduction holds) with the
/// measured observable's Born distribution. Throws ValidationError when
/// spec.probe differs from mp.probe.
ReadoutReport readout_equivalence(const MeasuringProcess& mp,
                                  const AmplifierSpec& spec, const Ket& psi,
                                  double tol = tol::distribution);

/// Commutator analysis of the meter pair. Requires the conjugate gain,
/// plus either the conjugate probe matrix or `posited_commutator`
/// standing in for [B, B'] (e.g. −iħI for a canonically conjugate pair).
MacroCommutativityReport macro_commutativity(
    const AmplifierSpec& spec,
    std::optional<ComplexMatrix> posited_commutator = std::nullopt);

}  // namespace qmeas
