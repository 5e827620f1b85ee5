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

#include "qmeas/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmeas {

DensityOperator::DensityOperator(ComplexMatrix matrix, double tol)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw DimensionError("DensityOperator: matrix is not square");
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw ValidationError("DensityOperator: matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace().real() - 1.0) > tol ||
      std::abs(matrix_.trace().imag()) > tol) {
    throw ValidationError("DensityOperator: trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success ||
      solver.eigenvalues().minCoeff() < -tol) {
    throw ValidationError("DensityOperator: matrix is not positive semidefinite");
  }
}

EvolutionSpec::EvolutionSpec(ComplexMatrix hamiltonian, double delay,
                             double hbar, double tol_herm)
    : hamiltonian_(std::move(hamiltonian)), delay_(delay), hbar_(hbar) {
  if (hamiltonian_.rows() != hamiltonian_.cols()) {
    throw DimensionError("EvolutionSpec: Hamiltonian is not square");
  }
  if (!is_hermitian(hamiltonian_, tol_herm)) {
    throw ValidationError("EvolutionSpec: Hamiltonian is not Hermitian");
  }
  if (delay_ < 0.0) {
    throw ValidationError("EvolutionSpec: delay must be nonnegative");
  }
  if (!(hbar_ > 0.0)) {
    throw ValidationError("EvolutionSpec: hbar must be positive");
  }
}

EvolutionSpec EvolutionSpec::trivial(Eigen::Index dim) {
  return EvolutionSpec(ComplexMatrix::Zero(dim, dim), 0.0);
}

ComplexMatrix evolved_projector(const ComplexMatrix& projector,
                                const EvolutionSpec& evo) {
  if (projector.rows() != evo.hamiltonian().rows()) {
    throw DimensionError("evolved_projector: dimension mismatch");
  }
  if (evo.delay() == 0.0) {
    return projector;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(evo.hamiltonian());
  if (solver.info() != Eigen::Success) {
    throw ValidationError("evolved_projector: eigensolver failed");
  }
  const Eigen::Index n = projector.rows();
  ComplexMatrix forward = ComplexMatrix::Zero(n, n);
  const double theta = evo.delay() / evo.hbar();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex phase = std::exp(Complex(0.0, solver.eigenvalues()(k) * theta));
    forward += phase * (solver.eigenvectors().col(k) *
                        solver.eigenvectors().col(k).adjoint());
  }
  return forward * projector * forward.adjoint();
}

DensityOperator prior_state(const MeasuringProcess& mp, const Ket& psi) {
  if (psi.dim() != mp.dim_s()) {
    throw DimensionError("prior_state: state dimension mismatch");
  }
  const ComplexVector evolved =
      mp.interaction() * tensor(psi.vec(), mp.preparation().vec());
  return DensityOperator(partial_trace_apparatus(
      evolved * evolved.adjoint(), mp.dim_s(), mp.dim_a()));
}

DensityOperator posterior_state(const MeasuringProcess& mp, const Ket& psi,
                                double a) {
  if (psi.dim() != mp.dim_s()) {
    throw DimensionError("posterior_state: state dimension mismatch");
  }
  const SpectralOutcome* outcome = mp.probe().find_outcome(a);
  if (outcome == nullptr) {
    std::ostringstream os;
    os << "posterior_state: value " << a << " is not in the probe spectrum";
    throw SpectrumError(os.str());
  }
  const ComplexVector evolved =
      mp.interaction() * tensor(psi.vec(), mp.preparation().vec());
  const ComplexVector selected =
      tensor(identity(mp.dim_s()), outcome->projector) * evolved;
  const double probability = selected.squaredNorm();
  if (probability <= tol::probability) {
    std::ostringstream os;
    os << "posterior_state: outcome " << a << " has zero probability";
    throw ZeroProbabilityOutcome(os.str());
  }
  return DensityOperator(partial_trace_apparatus(selected * selected.adjoint(),
                                                 mp.dim_s(), mp.dim_a()) /
                         probability);
}

double joint_probability(const MeasuringProcess& mp, const Ket& psi,
                         const EvolutionSpec& evo, const Observable& x_obs,
                         double a, double x) {
  if (psi.dim() != mp.dim_s() || x_obs.dim() != mp.dim_s() ||
      evo.hamiltonian().rows() != mp.dim_s()) {
    throw DimensionError("joint_probability: object dimension mismatch");
  }
  const SpectralOutcome* probe_outcome = mp.probe().find_outcome(a);
  if (probe_outcome == nullptr) {
    std::ostringstream os;
    os << "joint_probability: value " << a << " is not in the probe spectrum";
    throw SpectrumError(os.str());
  }
  const SpectralOutcome* x_outcome = x_obs.find_outcome(x);
  if (x_outcome == nullptr) {
    std::ostringstream os;
    os << "joint_probability: value " << x << " is not in the X spectrum";
    throw SpectrumError(os.str());
  }
  const ComplexMatrix lifted =
      tensor(evolved_projector(x_outcome->projector, evo),
             probe_outcome->projector);
  const ComplexVector evolved =
      mp.interaction() * tensor(psi.vec(), mp.preparation().vec());
  double p = (evolved.adjoint() * lifted * evolved).value().real();
  if (p < -tol::probability) {
    throw ValidationError("joint_probability: probability below zero");
  }
  return std::clamp(p, 0.0, 1.0);
}

double conditional_probability(const MeasuringProcess& mp, const Ket& psi,
                               const EvolutionSpec& evo,
                               const Observable& x_obs, double x, double a) {
  const double marginal =
      outcome_distribution(mp, psi)
          .probability_of(a, mp.probe().value_match_tolerance());
  if (marginal <= tol::probability) {
    std::ostringstream os;
    os << "conditional_probability: outcome " << a << " has zero probability";
    throw ZeroProbabilityOutcome(os.str());
  }
  return std::clamp(joint_probability(mp, psi, evo, x_obs, a, x) / marginal,
                    0.0, 1.0);
}

BayesReport bayes_check(const MeasuringProcess& mp, const Ket& psi,
                        const EvolutionSpec& evo, const Observable& x_obs,
                        double tol) {
  BayesReport report;
  report.tolerance = tol;
  report.max_discrepancy = 0.0;
  const OutcomeDistribution dist = outcome_distribution(mp, psi);
  for (const auto& [a, pa] : dist.outcomes) {
    if (pa <= tol::probability) {
      continue;
    }
    const DensityOperator posterior = posterior_state(mp, psi, a);
    for (const auto& xo : x_obs.outcomes()) {
      const double lhs =
          conditional_probability(mp, psi, evo, x_obs, xo.value, a);
      const double rhs = (evolved_projector(xo.projector, evo) *
                          posterior.matrix())
                             .trace()
                             .real();
      report.entries.push_back({a, xo.value, lhs, rhs});
      report.max_discrepancy =
          std::max(report.max_discrepancy, std::abs(lhs - rhs));
    }
  }
  report.pass = report.max_discrepancy <= tol;
  return report;
}

ComplexMatrix apply_branch(const InstrumentBranch& branch,
                           const ComplexMatrix& rho) {
  if (branch.kraus.empty()) {
    return ComplexMatrix::Zero(rho.rows(), rho.cols());
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : branch.kraus) {
    if (k.cols() != rho.rows()) {
      throw DimensionError("apply_branch: Kraus operator dimension mismatch");
    }
    out += k * rho * k.adjoint();
  }
  return out;
}

Instrument extract_instrument(const MeasuringProcess& mp) {
  const Eigen::Index ds = mp.dim_s();
  const Eigen::Index da = mp.dim_a();
  // Columns of the interaction embedding: U(e_s ⊗ ξ).
  const ComplexMatrix embedded = mp.interaction() * preparation_embedding(mp);

  Instrument instrument;
  instrument.dim = ds;
  ComplexMatrix completeness = ComplexMatrix::Zero(ds, ds);
  for (const auto& o : mp.probe().outcomes()) {
    const ComplexMatrix selected =
        tensor(identity(ds), o.projector) * embedded;
    // Choi matrix of ρ ↦ Tr_A[selected ρ selected†], reference index major:
    // block (i,j) holds the branch map applied to |i⟩⟨j|.
    ComplexMatrix choi(ds * ds, ds * ds);
    for (Eigen::Index i = 0; i < ds; ++i) {
      for (Eigen::Index j = 0; j < ds; ++j) {
        choi.block(i * ds, j * ds, ds, ds) = partial_trace_apparatus(
            selected.col(i) * selected.col(j).adjoint(), ds, da);
      }
    }
    choi = ((choi + choi.adjoint()) / 2.0).eval();

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(choi);
    if (solver.info() != Eigen::Success) {
      throw ValidationError("extract_instrument: Choi eigendecomposition failed");
    }
    if (solver.eigenvalues().minCoeff() < -tol::psd) {
      throw ValidationError("extract_instrument: Choi matrix is not PSD");
    }
    InstrumentBranch branch{o.value, {}, choi};
    for (Eigen::Index m = ds * ds - 1; m >= 0; --m) {
      const double lambda = solver.eigenvalues()(m);
      if (lambda <= tol::psd) {
        break;  // ascending order: everything below is a zero mode
      }
      const ComplexVector v = solver.eigenvectors().col(m);
      ComplexMatrix kraus(ds, ds);
      for (Eigen::Index i = 0; i < ds; ++i) {
        for (Eigen::Index k = 0; k < ds; ++k) {
          kraus(k, i) = std::sqrt(lambda) * v(i * ds + k);
        }
      }
      branch.kraus.push_back(std::move(kraus));
    }
    for (const auto& k : branch.kraus) {
      completeness += k.adjoint() * k;
    }
    instrument.branches.push_back(std::move(branch));
  }
  if ((completeness - identity(ds)).norm() > tol::observable) {
    throw ValidationError(
        "extract_instrument: Kraus sets do not satisfy the completeness relation");
  }
  return instrument;
}

double JointDistribution::probability_of(double first, double second,
                                         double value_tol) const {
  const JointOutcome* best = nullptr;
  double best_dist = value_tol;
  for (const auto& o : outcomes) {
    const double d =
        std::max(std::abs(o.first - first), std::abs(o.second - second));
    if (d <= best_dist) {
      best_dist = d;
      best = &o;
    }
  }
  if (best == nullptr) {
    std::ostringstream os;
    os << "outcome pair (" << first << ", " << second
       << ") not found in joint distribution";
    throw SpectrumError(os.str());
  }
  return best->probability;
}

double JointDistribution::total() const {
  double t = 0.0;
  for (const auto& o : outcomes) {
    t += o.probability;
  }
  return t;
}

namespace {

// Lifts an operator on H_S ⊗ H_A2 to H_S ⊗ H_A1 ⊗ H_A2 (object-major
// composite index (s·d1 + a1)·d2 + a2), acting as the identity on A1.
ComplexMatrix lift_skipping_first_apparatus(const ComplexMatrix& m,
                                            Eigen::Index ds, Eigen::Index d1,
                                            Eigen::Index d2) {
  const Eigen::Index total = ds * d1 * d2;
  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  for (Eigen::Index s = 0; s < ds; ++s) {
    for (Eigen::Index sp = 0; sp < ds; ++sp) {
      for (Eigen::Index a1 = 0; a1 < d1; ++a1) {
        for (Eigen::Index a2 = 0; a2 < d2; ++a2) {
          for (Eigen::Index a2p = 0; a2p < d2; ++a2p) {
            out((s * d1 + a1) * d2 + a2, (sp * d1 + a1) * d2 + a2p) =
                m(s * d2 + a2, sp * d2 + a2p);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

JointDistribution consecutive_joint(const MeasuringProcess& mp1,
                                    const MeasuringProcess& mp2,
                                    const Ket& psi) {
  if (mp1.dim_s() != mp2.dim_s()) {
    throw DimensionError("consecutive_joint: processes measure different objects");
  }
  if (psi.dim() != mp1.dim_s()) {
    throw DimensionError("consecutive_joint: state dimension mismatch");
  }
  const Eigen::Index ds = mp1.dim_s();
  const Eigen::Index d1 = mp1.dim_a();
  const Eigen::Index d2 = mp2.dim_a();

  const ComplexMatrix u1_full = tensor(mp1.interaction(), identity(d2));
  const ComplexMatrix u2_full =
      lift_skipping_first_apparatus(mp2.interaction(), ds, d1, d2);
  const ComplexVector state =
      u2_full * (u1_full *
                 tensor(tensor(psi.vec(), mp1.preparation().vec()),
                        mp2.preparation().vec()));

  JointDistribution joint;
  for (const auto& o1 : mp1.probe().outcomes()) {
    const ComplexMatrix head = tensor(identity(ds), o1.projector);
    for (const auto& o2 : mp2.probe().outcomes()) {
      const ComplexMatrix full = tensor(head, o2.projector);
      double p = (state.adjoint() * full * state).value().real();
      if (p < -tol::probability) {
        throw ValidationError("consecutive_joint: probability below zero");
      }
      joint.outcomes.push_back({o1.value, o2.value, std::clamp(p, 0.0, 1.0)});
    }
  }
  return joint;
}

}  // namespace qmeas
