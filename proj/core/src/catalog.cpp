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

#include "qmeas/catalog.hpp"

#include <cmath>
#include <set>

namespace qmeas {

namespace {

Observable sigma_z_observable() {
  ComplexMatrix z(2, 2);
  z << 1, 0, 0, -1;
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1;
  ComplexMatrix p1 = ComplexMatrix::Zero(2, 2);
  p1(1, 1) = 1;
  return Observable(z, {{1.0, p0}, {-1.0, p1}});
}

ComplexMatrix cnot_matrix() {
  // Object-major basis |s a⟩; the apparatus bit flips when s = 1.
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = 1;
  u(1, 1) = 1;
  u(2, 3) = 1;
  u(3, 2) = 1;
  return u;
}

Ket basis_ket(Eigen::Index dim, Eigen::Index k) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1;
  return Ket(std::move(v));
}

}  // namespace

MeasuringProcess cnot_model() {
  return MeasuringProcess(sigma_z_observable(), basis_ket(2, 0), cnot_matrix(),
                          sigma_z_observable());
}

std::vector<double> default_shift_eigenvalues(Eigen::Index d) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    values.push_back(static_cast<double>(d - 1 - 2 * k));
  }
  return values;
}

MeasuringProcess shift_model(Eigen::Index d,
                             const std::vector<double>& eigenvalues) {
  if (d < 2) {
    throw ValidationError("shift_model: need at least two outcomes");
  }
  if (eigenvalues.size() != static_cast<std::size_t>(d)) {
    throw ValidationError("shift_model: eigenvalue list length must equal d");
  }
  if (std::set<double>(eigenvalues.begin(), eigenvalues.end()).size() !=
      eigenvalues.size()) {
    throw ValidationError("shift_model: eigenvalues must be distinct");
  }

  ComplexMatrix diag = ComplexMatrix::Zero(d, d);
  std::vector<SpectralOutcome> outcomes;
  for (Eigen::Index k = 0; k < d; ++k) {
    diag(k, k) = eigenvalues[static_cast<std::size_t>(k)];
    ComplexMatrix projector = ComplexMatrix::Zero(d, d);
    projector(k, k) = 1;
    outcomes.push_back({eigenvalues[static_cast<std::size_t>(k)], projector});
  }
  Observable observable(diag, outcomes);

  // U = Σ_k |k⟩⟨k| ⊗ S^k: the apparatus pointer advances by the measured
  // basis index.
  ComplexMatrix u = ComplexMatrix::Zero(d * d, d * d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index a = 0; a < d; ++a) {
      u(k * d + (a + k) % d, k * d + a) = 1;
    }
  }
  return MeasuringProcess(observable, basis_ket(d, 0), std::move(u),
                          observable);
}

MeasuringProcess non_projective_model(const ComplexMatrix& r) {
  if (r.rows() != 2 || r.cols() != 2) {
    throw DimensionError("non_projective_model: rotation must be 2x2");
  }
  if (!is_unitary(r)) {
    throw ValidationError("non_projective_model: rotation is not unitary");
  }
  return MeasuringProcess(sigma_z_observable(), basis_ket(2, 0),
                          tensor(r, identity(2)) * cnot_matrix(),
                          sigma_z_observable());
}

namespace {

MeasuringProcess parse_model_name(const std::string& name) {
  if (name == "cnot") {
    return cnot_model();
  }
  if (name.rfind("shift:", 0) == 0) {
    const std::string arg = name.substr(6);
    std::size_t used = 0;
    long d = 0;
    try {
      d = std::stol(arg, &used);
    } catch (const std::exception&) {
      throw ValidationError("catalog: bad outcome count in '" + name + "'");
    }
    if (used != arg.size() || d < 2) {
      throw ValidationError("catalog: bad outcome count in '" + name + "'");
    }
    return shift_model(d, default_shift_eigenvalues(d));
  }
  if (name.rfind("nonproj:", 0) == 0) {
    const std::string arg = name.substr(8);
    if (arg == "hadamard") {
      ComplexMatrix h(2, 2);
      const double s = 1.0 / std::sqrt(2.0);
      h << s, s, s, -s;
      return non_projective_model(h);
    }
    if (arg == "identity") {
      return non_projective_model(identity(2));
    }
    throw ValidationError("catalog: unknown rotation '" + arg +
                          "' (expected hadamard or identity)");
  }
  throw ValidationError("catalog: unknown model '" + name +
                        "' (expected cnot, shift:<d>, nonproj:hadamard or "
                        "nonproj:identity)");
}

}  // namespace

MeasuringProcess model_by_name(const std::string& name) {
  return parse_model_name(name);
}

bool is_catalog_name(const std::string& name) {
  return name == "cnot" || name.rfind("shift:", 0) == 0 ||
         name.rfind("nonproj:", 0) == 0;
}

}  // namespace qmeas
