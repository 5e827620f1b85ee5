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

#include <string>
#include <vector>

#include "qmeas/model.hpp"

namespace qmeas {

/// Qubit model with A = σz, ξ = |0⟩, U = CNOT (object control, apparatus
/// target) and B = σz. Transduces exactly and satisfies the projection
/// postulate.
MeasuringProcess cnot_model();

/// d-outcome generalization: A = Σ aₖ|k⟩⟨k| on the object,
/// U = Σₖ |k⟩⟨k| ⊗ Sᵏ with the cyclic shift S on the apparatus,
/// ξ = |0⟩, B = Σ aₖ|k⟩⟨k| on the apparatus. Transduces exactly.
MeasuringProcess shift_model(Eigen::Index d,
                             const std::vector<double>& eigenvalues);

/// Eigenvalues d−1−2k for k = 0..d−1, so d = 2 gives (+1, −1).
std::vector<double> default_shift_eigenvalues(Eigen::Index d);

/// The CNOT model followed by an extra unitary `r` on the object:
/// U = (r ⊗ I)·CNOT. Still transduces (the extra rotation commutes with
/// the probe under Heisenberg conjugation), but the posterior states are
/// r·(σz eigenstate), so the projection postulate fails for r ≠ I.
MeasuringProcess non_projective_model(const ComplexMatrix& r);

/// Looks up "cnot", "shift:<d>" (default eigenvalues) or
/// "nonproj:hadamard" / "nonproj:identity". Throws ValidationError for
/// anything else.
MeasuringProcess model_by_name(const std::string& name);

bool is_catalog_name(const std::string& name);

}  // namespace qmeas
