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

#include "qmeas/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmeas {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": matrix is " << m.rows() << "x" << m.cols()
       << ", expected square";
    throw DimensionError(os.str());
  }
}

double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

Ket::Ket(ComplexVector amplitudes, double tol_norm) : vec_(std::move(amplitudes)) {
  if (vec_.size() == 0) {
    throw ValidationError("Ket: empty amplitude vector");
  }
  const double n = vec_.norm();
  if (std::abs(n - 1.0) > tol_norm) {
    std::ostringstream os;
    os << "Ket: norm " << n << " deviates from 1 by more than " << tol_norm;
    throw ValidationError(os.str());
  }
}

Ket Ket::normalized(ComplexVector amplitudes) {
  const double n = amplitudes.norm();
  if (n == 0.0) {
    throw ValidationError("Ket: cannot normalize the zero vector");
  }
  return Ket(amplitudes / n);
}

Observable::Observable(ComplexMatrix matrix, std::vector<SpectralOutcome> outcomes,
                       double tol_herm, double tol_family, double tol_cluster)
    : matrix_(std::move(matrix)), outcomes_(std::move(outcomes)) {
  require_square(matrix_, "Observable");
  const Eigen::Index n = matrix_.rows();
  if (hermiticity_defect(matrix_) > tol_herm) {
    throw ValidationError("Observable: matrix is not Hermitian");
  }
  if (outcomes_.empty()) {
    throw ValidationError("Observable: empty spectrum");
  }

  ComplexMatrix sum_proj = ComplexMatrix::Zero(n, n);
  ComplexMatrix reconstruction = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    const ComplexMatrix& e = outcomes_[i].projector;
    if (e.rows() != n || e.cols() != n) {
      throw DimensionError("Observable: projector dimension mismatch");
    }
    if (hermiticity_defect(e) > tol_family ||
        (e * e - e).norm() > tol_family) {
      throw ValidationError("Observable: projector is not an orthogonal projector");
    }
    for (std::size_t j = i + 1; j < outcomes_.size(); ++j) {
      if ((e * outcomes_[j].projector).norm() > tol_family) {
        throw ValidationError("Observable: projectors are not mutually orthogonal");
      }
    }
    sum_proj += e;
    reconstruction += outcomes_[i].value * e;
  }
  if ((sum_proj - ComplexMatrix::Identity(n, n)).norm() > tol_family) {
    throw ValidationError("Observable: projectors do not sum to the identity");
  }
  if ((reconstruction - matrix_).norm() > tol_family) {
    throw ValidationError("Observable: spectral reconstruction does not match matrix");
  }

  match_tol_ = tol_cluster * std::max(1.0, matrix_.norm());
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    for (std::size_t j = i + 1; j < outcomes_.size(); ++j) {
      if (std::abs(outcomes_[i].value - outcomes_[j].value) <= match_tol_) {
        throw ValidationError("Observable: eigenvalues are not separated beyond the clustering tolerance");
      }
    }
  }
  std::sort(outcomes_.begin(), outcomes_.end(),
            [](const SpectralOutcome& a, const SpectralOutcome& b) {
              return a.value > b.value;
            });
}

const SpectralOutcome* Observable::find_outcome(double value) const {
  const SpectralOutcome* best = nullptr;
  double best_dist = match_tol_;
  for (const auto& o : outcomes_) {
    const double d = std::abs(o.value - value);
    if (d <= best_dist) {
      best_dist = d;
      best = &o;
    }
  }
  return best;
}

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix tensor(const ComplexMatrix& m1, const ComplexMatrix& m2) {
  ComplexMatrix out(m1.rows() * m2.rows(), m1.cols() * m2.cols());
  for (Eigen::Index i = 0; i < m1.rows(); ++i) {
    for (Eigen::Index j = 0; j < m1.cols(); ++j) {
      out.block(i * m2.rows(), j * m2.cols(), m2.rows(), m2.cols()) =
          m1(i, j) * m2;
    }
  }
  return out;
}

ComplexVector tensor(const ComplexVector& u, const ComplexVector& v) {
  ComplexVector out(u.size() * v.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    out.segment(i * v.size(), v.size()) = u(i) * v;
  }
  return out;
}

Ket tensor(const Ket& u, const Ket& v) {
  return Ket(tensor(u.vec(), v.vec()));
}

ComplexMatrix partial_trace_apparatus(const ComplexMatrix& m,
                                      Eigen::Index dim_s, Eigen::Index dim_a) {
  if (m.rows() != dim_s * dim_a || m.cols() != dim_s * dim_a) {
    std::ostringstream os;
    os << "partial_trace_apparatus: matrix is " << m.rows() << "x" << m.cols()
       << ", expected " << dim_s * dim_a << "x" << dim_s * dim_a;
    throw DimensionError(os.str());
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_s, dim_s);
  for (Eigen::Index i = 0; i < dim_s; ++i) {
    for (Eigen::Index j = 0; j < dim_s; ++j) {
      Complex acc(0.0, 0.0);
      for (Eigen::Index k = 0; k < dim_a; ++k) {
        acc += m(i * dim_a + k, j * dim_a + k);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

Observable spectral_decompose(const ComplexMatrix& h, double tol_cluster) {
  require_square(h, "spectral_decompose");
  if (hermiticity_defect(h) > tol::hermitian) {
    throw ValidationError("spectral_decompose: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("spectral_decompose: eigensolver failed");
  }
  const Eigen::VectorXd values = solver.eigenvalues();  // ascending
  const ComplexMatrix& vectors = solver.eigenvectors();
  const Eigen::Index n = h.rows();
  const double merge_dist = tol_cluster * std::max(1.0, h.norm());

  std::vector<SpectralOutcome> outcomes;
  Eigen::Index begin = 0;
  while (begin < n) {
    Eigen::Index end = begin + 1;
    while (end < n && values(end) - values(end - 1) <= merge_dist) {
      ++end;
    }
    ComplexMatrix projector = ComplexMatrix::Zero(n, n);
    double value = 0.0;
    for (Eigen::Index k = begin; k < end; ++k) {
      projector += vectors.col(k) * vectors.col(k).adjoint();
      value += values(k);
    }
    value /= static_cast<double>(end - begin);
    outcomes.push_back({value, std::move(projector)});
    begin = end;
  }
  return Observable(h, std::move(outcomes), tol::hermitian, tol::observable,
                    tol_cluster);
}

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_square(x, "commutator");
  require_square(y, "commutator");
  if (x.rows() != y.rows()) {
    throw DimensionError("commutator: operands have different dimensions");
  }
  const Eigen::Index n = x.rows();
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Complex xy(0.0, 0.0);
      Complex yx(0.0, 0.0);
      for (Eigen::Index k = 0; k < n; ++k) {
        xy += x(i, k) * y(k, j);
      }
      for (Eigen::Index k = 0; k < n; ++k) {
        yx += y(i, k) * x(k, j);
      }
      out(i, j) = xy - yx;
    }
  }
  return out;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  require_square(m, "is_hermitian");
  return hermiticity_defect(m) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  require_square(m, "is_unitary");
  const Eigen::Index n = m.rows();
  return (m.adjoint() * m - ComplexMatrix::Identity(n, n)).norm() <= tol;
}

bool is_psd(const ComplexMatrix& m, double tol_psd, double tol_herm) {
  require_square(m, "is_psd");
  if (hermiticity_defect(m) > tol_herm) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.info() == Eigen::Success &&
         solver.eigenvalues().minCoeff() >= -tol_psd;
}

double operator_distance(const ComplexMatrix& m1, const ComplexMatrix& m2) {
  if (m1.rows() != m2.rows() || m1.cols() != m2.cols()) {
    throw DimensionError("operator_distance: shape mismatch");
  }
  return (m1 - m2).norm();
}

}  // namespace qmeas
