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

#include <Eigen/Dense>

#include "qmeas/errors.hpp"
#include "qmeas/tolerances.hpp"

namespace qmeas {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Unit vector on a finite-dimensional Hilbert space.
///
/// The composite-index convention used throughout the library is
/// object-major: for a state on H_S ⊗ H_A the composite index is
/// s * dim_a + a.
class Ket {
 public:
  /// Wraps `amplitudes`; throws ValidationError unless ‖amplitudes‖₂ = 1
  /// within `tol_norm`.
  explicit Ket(ComplexVector amplitudes, double tol_norm = tol::norm);

  /// Rescales `amplitudes` to unit norm; throws ValidationError on the
  /// zero vector.
  static Ket normalized(ComplexVector amplitudes);

  Eigen::Index dim() const { return vec_.size(); }
  const ComplexVector& vec() const { return vec_; }

 private:
  ComplexVector vec_;
};

/// One point of a discrete spectrum: an eigenvalue and its spectral
/// projector.
struct SpectralOutcome {
  double value;
  ComplexMatrix projector;
};

/// Hermitian matrix together with its clustered spectral decomposition
/// {(a, E(a))}, ordered by descending eigenvalue.
class Observable {
 public:
  /// Validates and stores the decomposition. Requirements, each within
  /// `tol_family` (Frobenius) unless noted:
  ///   - `matrix` Hermitian within `tol_herm` (max abs entry of M − M†),
  ///   - projectors Hermitian, idempotent, mutually orthogonal,
  ///   - projectors sum to the identity,
  ///   - Σ a·E(a) reconstructs `matrix`,
  ///   - eigenvalues pairwise separated by more than
  ///     `tol_cluster * max(1, ‖matrix‖_F)`.
  Observable(ComplexMatrix matrix, std::vector<SpectralOutcome> outcomes,
             double tol_herm = tol::hermitian,
             double tol_family = tol::observable,
             double tol_cluster = tol::cluster);

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<SpectralOutcome>& outcomes() const { return outcomes_; }

  /// Absolute tolerance used to match outcome values against this
  /// spectrum: `tol_cluster * max(1, ‖matrix‖_F)` from construction.
  double value_match_tolerance() const { return match_tol_; }

  /// The outcome whose value is nearest `value` if within the match
  /// tolerance, else nullptr.
  const SpectralOutcome* find_outcome(double value) const;

 private:
  ComplexMatrix matrix_;
  std::vector<SpectralOutcome> outcomes_;
  double match_tol_;
};

ComplexMatrix identity(Eigen::Index n);

/// Kronecker product; (m1 ⊗ m2)(u ⊗ v) = (m1 u) ⊗ (m2 v).
ComplexMatrix tensor(const ComplexMatrix& m1, const ComplexMatrix& m2);
ComplexVector tensor(const ComplexVector& u, const ComplexVector& v);
Ket tensor(const Ket& u, const Ket& v);

/// Partial trace over the apparatus factor of an operator on
/// H_S ⊗ H_A (object-major indices): out(i,j) = Σ_k m(i·dim_a+k, j·dim_a+k).
ComplexMatrix partial_trace_apparatus(const ComplexMatrix& m,
                                      Eigen::Index dim_s, Eigen::Index dim_a);

/// Spectral decomposition of a Hermitian matrix with relative eigenvalue
/// clustering: raw eigenvalues closer than tol_cluster * max(1, ‖h‖_F)
/// merge into one outcome whose projector spans the merged eigenvectors.
Observable spectral_decompose(const ComplexMatrix& h,
                              double tol_cluster = tol::cluster);

/// xy − yx. Summation over the contraction index is performed in
/// ascending order so results are reproducible term for term by the
/// hyperoperator commutator.
ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y);

bool is_hermitian(const ComplexMatrix& m, double tol = tol::hermitian);
bool is_unitary(const ComplexMatrix& m, double tol = tol::unitary);
bool is_psd(const ComplexMatrix& m, double tol_psd = tol::psd,
            double tol_herm = tol::hermitian);

/// Frobenius norm of m1 − m2.
double operator_distance(const ComplexMatrix& m1, const ComplexMatrix& m2);

}  // namespace qmeas
