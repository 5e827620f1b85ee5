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

/// Default numerical tolerances used across the library.
///
/// Every operation that depends on one of these values takes it as a
/// parameter with the default below; nothing is hard-coded elsewhere.
namespace qmeas::tol {

/// Ket normalization defect |‖ψ‖₂ − 1|.
inline constexpr double norm = 1e-9;

/// Hermiticity defect, max abs entry of M − M†.
inline constexpr double hermitian = 1e-9;

/// Unitarity defect ‖U†U − I‖_F.
inline constexpr double unitary = 1e-9;

/// Eigenvalue floor for positive-semidefiniteness checks and for
/// dropping numerically-zero Kraus modes.
inline constexpr double psd = 1e-9;

/// Projector-family checks (idempotence, orthogonality, completeness,
/// spectral reconstruction).
inline constexpr double observable = 1e-8;

/// Relative eigenvalue clustering: two raw eigenvalues merge when closer
/// than cluster * max(1, ‖h‖_F).
inline constexpr double cluster = 1e-8;

/// Transduction verdict threshold on noise_norm and pvm_distance.
inline constexpr double transduce = 1e-8;

/// Probabilities below this are treated as zero (conditioning refused);
/// negative probabilities above -probability are clamped to 0.
inline constexpr double probability = 1e-12;

/// Maximum discrepancy accepted by the Bayes-consistency check.
inline constexpr double bayes = 1e-8;

/// Density-operator invariants (Hermiticity, PSD floor, unit trace).
inline constexpr double density = 1e-9;

/// Outcome distributions must sum to 1 within this.
inline constexpr double distribution = 1e-9;

/// Hyperscalar coefficients below this magnitude are pruned.
inline constexpr double prune = 1e-15;

}  // namespace qmeas::tol
