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

#include "qmeas/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmeas {

MeasuringProcess::MeasuringProcess(Observable measured, Ket preparation,
                                   ComplexMatrix interaction, Observable probe,
                                   double tol_unitary)
    : measured_(std::move(measured)),
      preparation_(std::move(preparation)),
      interaction_(std::move(interaction)),
      probe_(std::move(probe)) {
  if (probe_.dim() != preparation_.dim()) {
    throw DimensionError("MeasuringProcess: probe does not act on the apparatus space");
  }
  const Eigen::Index total = dim_s() * dim_a();
  if (interaction_.rows() != total || interaction_.cols() != total) {
    std::ostringstream os;
    os << "MeasuringProcess: interaction is " << interaction_.rows() << "x"
       << interaction_.cols() << ", expected " << total << "x" << total;
    throw DimensionError(os.str());
  }
  if (!is_unitary(interaction_, tol_unitary)) {
    throw ValidationError("MeasuringProcess: interaction is not unitary");
  }
}

double OutcomeDistribution::probability_of(double value, double value_tol) const {
  const Outcome* best = nullptr;
  double best_dist = value_tol;
  for (const auto& o : outcomes) {
    const double d = std::abs(o.value - value);
    if (d <= best_dist) {
      best_dist = d;
      best = &o;
    }
  }
  if (best == nullptr) {
    std::ostringstream os;
    os << "outcome value " << value << " not found in distribution";
    throw SpectrumError(os.str());
  }
  return best->probability;
}

double OutcomeDistribution::total() const {
  double t = 0.0;
  for (const auto& o : outcomes) {
    t += o.probability;
  }
  return t;
}

ComplexMatrix heisenberg_probe(const MeasuringProcess& mp) {
  const ComplexMatrix lifted = tensor(identity(mp.dim_s()), mp.probe().matrix());
  return mp.interaction().adjoint() * lifted * mp.interaction();
}

ComplexMatrix noise_operator(const MeasuringProcess& mp) {
  return heisenberg_probe(mp) -
         tensor(mp.measured().matrix(), identity(mp.dim_a()));
}

ComplexMatrix preparation_embedding(const MeasuringProcess& mp) {
  const Eigen::Index ds = mp.dim_s();
  const Eigen::Index da = mp.dim_a();
  ComplexMatrix embed = ComplexMatrix::Zero(ds * da, ds);
  for (Eigen::Index s = 0; s < ds; ++s) {
    embed.block(s * da, s, da, 1) = mp.preparation().vec();
  }
  return embed;
}

namespace {

// Object-side operator induced by one probe projector:
// Tr_A[(I⊗|ξ⟩⟨ξ|) U†(I⊗E)U (I⊗|ξ⟩⟨ξ|)]. The projector is conjugated
// with U†(·)U like every Heisenberg operator here; the partial trace is
// cyclic for apparatus-local factors, so sandwiching with the
// preparation projector changes nothing mathematically but keeps the
// result Hermitian to machine precision.
ComplexMatrix induced_operator(const MeasuringProcess& mp,
                               const ComplexMatrix& probe_projector) {
  const Eigen::Index ds = mp.dim_s();
  const Eigen::Index da = mp.dim_a();
  const ComplexVector& xi = mp.preparation().vec();
  const ComplexMatrix prep = tensor(identity(ds), xi * xi.adjoint());
  const ComplexMatrix heisenberg = mp.interaction().adjoint() *
                                   tensor(identity(ds), probe_projector) *
                                   mp.interaction();
  return partial_trace_apparatus(prep * heisenberg * prep, ds, da);
}

std::vector<ComplexMatrix> induced_family(const MeasuringProcess& mp) {
  std::vector<ComplexMatrix> out;
  out.reserve(mp.probe().outcomes().size());
  for (const auto& o : mp.probe().outcomes()) {
    out.push_back(induced_operator(mp, o.projector));
  }
  return out;
}

}  // namespace

TransductionReport check_transduction(const MeasuringProcess& mp, double tol) {
  TransductionReport report;
  report.tolerance = tol;
  report.noise_norm = (noise_operator(mp) * preparation_embedding(mp)).norm();

  const auto& a_outcomes = mp.measured().outcomes();
  const auto& b_outcomes = mp.probe().outcomes();
  const std::vector<ComplexMatrix> induced = induced_family(mp);

  // Values are paired within the coarser of the two spectra's matching
  // tolerances; a value present on one side only is compared against the
  // zero operator.
  const double match_tol = std::max(mp.measured().value_match_tolerance(),
                                    mp.probe().value_match_tolerance());
  std::vector<bool> b_used(b_outcomes.size(), false);
  double pvm_distance = 0.0;
  for (const auto& ao : a_outcomes) {
    OutcomeMatch match{ao.value, std::nullopt};
    std::size_t best = b_outcomes.size();
    double best_dist = match_tol;
    for (std::size_t j = 0; j < b_outcomes.size(); ++j) {
      const double d = std::abs(b_outcomes[j].value - ao.value);
      if (!b_used[j] && d <= best_dist) {
        best_dist = d;
        best = j;
      }
    }
    double dist;
    if (best < b_outcomes.size()) {
      b_used[best] = true;
      match.probe_value = b_outcomes[best].value;
      dist = (ao.projector - induced[best]).norm();
    } else {
      dist = ao.projector.norm();
    }
    pvm_distance = std::max(pvm_distance, dist);
    report.outcome_matching.push_back(match);
  }
  for (std::size_t j = 0; j < b_outcomes.size(); ++j) {
    if (!b_used[j]) {
      pvm_distance = std::max(pvm_distance, induced[j].norm());
    }
  }
  report.pvm_distance = pvm_distance;
  report.holds = report.noise_norm <= tol && report.pvm_distance <= tol;
  return report;
}

ComplexMatrix induced_pvm(const MeasuringProcess& mp, double probe_value) {
  const SpectralOutcome* outcome = mp.probe().find_outcome(probe_value);
  if (outcome == nullptr) {
    std::ostringstream os;
    os << "induced_pvm: value " << probe_value << " is not in the probe spectrum";
    throw SpectrumError(os.str());
  }
  return induced_operator(mp, outcome->projector);
}

OutcomeDistribution outcome_distribution(const MeasuringProcess& mp,
                                         const Ket& psi) {
  if (psi.dim() != mp.dim_s()) {
    throw DimensionError("outcome_distribution: state dimension mismatch");
  }
  const ComplexVector evolved =
      mp.interaction() * tensor(psi.vec(), mp.preparation().vec());
  OutcomeDistribution dist;
  for (const auto& o : mp.probe().outcomes()) {
    const ComplexMatrix lifted = tensor(identity(mp.dim_s()), o.projector);
    double p = (evolved.adjoint() * lifted * evolved).value().real();
    if (p < -tol::probability) {
      throw ValidationError("outcome_distribution: probability below zero");
    }
    p = std::clamp(p, 0.0, 1.0);
    dist.outcomes.push_back({o.value, p});
  }
  return dist;
}

}  // namespace qmeas
