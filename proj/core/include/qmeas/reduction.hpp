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

#include <vector>

#include "qmeas/model.hpp"

namespace qmeas {

/// Hermitian, positive-semidefinite, unit-trace operator.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix matrix, double tol = tol::density);

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// Free evolution of the object between the measuring interaction and a
/// later observation: Hamiltonian, delay t' ≥ 0 and the value of ħ.
class EvolutionSpec {
 public:
  EvolutionSpec(ComplexMatrix hamiltonian, double delay, double hbar = 1.0,
                double tol_herm = tol::hermitian);

  /// No evolution: H = 0, delay 0.
  static EvolutionSpec trivial(Eigen::Index dim);

  const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
  double delay() const { return delay_; }
  double hbar() const { return hbar_; }

 private:
  ComplexMatrix hamiltonian_;
  double delay_;
  double hbar_;
};

/// e^{iHt'/ħ} E e^{−iHt'/ħ}, computed through the spectral decomposition
/// of H (exact at these dimensions, no series truncation).
ComplexMatrix evolved_projector(const ComplexMatrix& projector,
                                const EvolutionSpec& evo);

/// One outcome's completely positive branch map, as a Kraus set together
/// with the Choi matrix it was factored from.
struct InstrumentBranch {
  double value;
  std::vector<ComplexMatrix> kraus;
  ComplexMatrix choi;
};

/// Outcome-indexed family of CP maps extracted from a measuring process;
/// summed over outcomes the family is trace-preserving.
struct Instrument {
  Eigen::Index dim;
  std::vector<InstrumentBranch> branches;
};

/// Σ_m K ρ K† for one branch (unnormalized output; its trace is the
/// outcome probability).
ComplexMatrix apply_branch(const InstrumentBranch& branch,
                           const ComplexMatrix& rho);

struct BayesEntry {
  double probe_value;
  double x_value;
  double conditional_from_joint;
  double from_posterior;
};

/// Per-outcome comparison of the two routes to the conditional
/// distribution of a later measurement: the joint-probability formula
/// versus the trace formula with the posterior state.
struct BayesReport {
  bool pass;
  double max_discrepancy;
  double tolerance;
  std::vector<BayesEntry> entries;
};

/// Non-selective object state just after the interaction:
/// Tr_A[U|ψ⊗ξ⟩⟨ψ⊗ξ|U†].
DensityOperator prior_state(const MeasuringProcess& mp, const Ket& psi);

/// Object state conditional on outcome `a`:
/// Tr_A[(I⊗E^B(a)) U|ψ⊗ξ⟩⟨ψ⊗ξ|U† (I⊗E^B(a))] / probability.
/// Throws SpectrumError for a value outside the probe spectrum and
/// ZeroProbabilityOutcome when the probability is ≤ tol::probability
/// (conditioning on a null outcome is refused rather than given an
/// arbitrary state).
DensityOperator posterior_state(const MeasuringProcess& mp, const Ket& psi,
                                double a);

/// Pr{outcome = a, later X-measurement = x} with the object evolving
/// under `evo` between interaction and X-measurement:
/// ⟨ψ⊗ξ| U†( e^{iHt'/ħ}E^X(x)e^{−iHt'/ħ} ⊗ E^B(a) )U |ψ⊗ξ⟩.
double joint_probability(const MeasuringProcess& mp, const Ket& psi,
                         const EvolutionSpec& evo, const Observable& x_obs,
                         double a, double x);

/// joint_probability(..., a, x) / Pr{outcome = a}; throws
/// ZeroProbabilityOutcome when the denominator is ≤ tol::probability.
double conditional_probability(const MeasuringProcess& mp, const Ket& psi,
                               const EvolutionSpec& evo,
                               const Observable& x_obs, double x, double a);

/// Checks that conditioning through the joint-probability formula and
/// predicting with the posterior state agree for every outcome pair.
BayesReport bayes_check(const MeasuringProcess& mp, const Ket& psi,
                        const EvolutionSpec& evo, const Observable& x_obs,
                        double tol = tol::bayes);

/// The instrument of the process: per outcome, the Choi matrix of
/// ρ ↦ Tr_A[(I⊗E^B(a)) U(ρ⊗|ξ⟩⟨ξ|)U† (I⊗E^B(a))] and a Kraus set from
/// its eigendecomposition (eigenvalues ≤ tol::psd dropped). The result
/// satisfies Choi PSD and Σ K†K = I; branch outputs reproduce
/// posterior_state after normalization.
Instrument extract_instrument(const MeasuringProcess& mp);

struct JointOutcome {
  double first;
  double second;
  double probability;
};

/// Joint distribution over ordered outcome pairs.
struct JointDistribution {
  std::vector<JointOutcome> outcomes;

  double probability_of(double first, double second, double value_tol) const;
  double total() const;
};

/// Joint outcome distribution of two consecutive measuring processes on
/// the same object: the second interaction acts after the first, before
/// either probe is read. Computed on H_S ⊗ H_A1 ⊗ H_A2 as the
/// expectation of I ⊗ E^{B1}(a) ⊗ E^{B2}(b) in
/// (U2 on S,A2)(U1 on S,A1)|ψ⊗ξ1⊗ξ2⟩.
JointDistribution consecutive_joint(const MeasuringProcess& mp1,
                                    const MeasuringProcess& mp2,
                                    const Ket& psi);

}  // namespace qmeas
