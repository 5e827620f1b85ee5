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
#include <vector>

#include "qmeas/linalg.hpp"

namespace qmeas {

/// A measuring process for a discrete object observable: the apparatus
/// dimension and preparation, the object-apparatus interaction, and the
/// probe observable read out on the apparatus side.
///
/// The first measurement stage is the interaction unitary U acting on
/// H_S ⊗ H_A; it transduces the measured observable A into the probe
/// observable B when the Heisenberg-evolved probe U†(I⊗B)U agrees with
/// A⊗I on every vector ψ⊗ξ.
class MeasuringProcess {
 public:
  /// Validates: `interaction` is unitary within `tol_unitary` on
  /// H_S ⊗ H_A, `preparation` lives on H_A, `probe` acts on H_A.
  MeasuringProcess(Observable measured, Ket preparation,
                   ComplexMatrix interaction, Observable probe,
                   double tol_unitary = tol::unitary);

  Eigen::Index dim_s() const { return measured_.dim(); }
  Eigen::Index dim_a() const { return preparation_.dim(); }
  Eigen::Index dim_total() const { return dim_s() * dim_a(); }

  const Observable& measured() const { return measured_; }
  const Ket& preparation() const { return preparation_; }
  const ComplexMatrix& interaction() const { return interaction_; }
  const Observable& probe() const { return probe_; }

 private:
  Observable measured_;
  Ket preparation_;
  ComplexMatrix interaction_;
  Observable probe_;
};

/// Pairing of a measured-observable eigenvalue with the probe eigenvalue
/// it is identified with (empty when the probe spectrum has no value
/// within the matching tolerance).
struct OutcomeMatch {
  double measured_value;
  std::optional<double> probe_value;
};

/// Result of the transduction check. `holds` is noise_norm ≤ tol and
/// pvm_distance ≤ tol; the two criteria are computed independently so
/// their equivalence is itself observable.
struct TransductionReport {
  bool holds;
  double noise_norm;
  double pvm_distance;
  std::vector<OutcomeMatch> outcome_matching;
  double tolerance;
};

struct Outcome {
  double value;
  double probability;
};

/// Probability distribution over the discrete outcomes of one
/// observable, ordered by descending outcome value.
struct OutcomeDistribution {
  std::vector<Outcome> outcomes;

  /// Probability of the outcome nearest `value` within `value_tol`;
  /// throws SpectrumError when no outcome matches.
  double probability_of(double value, double value_tol) const;
  double total() const;
};

/// Heisenberg-evolved probe U†(I⊗B)U on H_S ⊗ H_A.
ComplexMatrix heisenberg_probe(const MeasuringProcess& mp);

/// Noise operator: heisenberg_probe(mp) − A⊗I. Transduction holds
/// exactly when this annihilates every ψ⊗ξ.
ComplexMatrix noise_operator(const MeasuringProcess& mp);

/// The isometry ψ ↦ ψ⊗ξ as a (dim_s·dim_a) × dim_s matrix. Composing
/// the noise operator with this embedding turns the for-all-ψ
/// transduction condition into one finite matrix-norm check.
ComplexMatrix preparation_embedding(const MeasuringProcess& mp);

/// Verifies transduction two ways: noise_norm = ‖N ∘ (ψ↦ψ⊗ξ)‖_F, and
/// pvm_distance = the worst Frobenius gap between the measured
/// observable's projectors and the probe-induced operators (taken over
/// the union of both spectra, with a zero operator standing in for a
/// value absent from the other side).
TransductionReport check_transduction(const MeasuringProcess& mp,
                                      double tol = tol::transduce);

/// The object-side operator induced by probe outcome `probe_value`:
/// Tr_A[(I⊗E^B(a)) U (I⊗|ξ⟩⟨ξ|) U†]. Always PSD with norm ≤ 1; equals
/// the corresponding measured-observable projector exactly when
/// transduction holds for that outcome. Throws SpectrumError when
/// `probe_value` is not in the probe spectrum.
ComplexMatrix induced_pvm(const MeasuringProcess& mp, double probe_value);

/// Outcome distribution of the probe measurement for object state `psi`:
/// p(a) = ⟨ψ⊗ξ| U†(I⊗E^B(a))U |ψ⊗ξ⟩, clamped to [0,1].
OutcomeDistribution outcome_distribution(const MeasuringProcess& mp,
                                         const Ket& psi);

}  // namespace qmeas
