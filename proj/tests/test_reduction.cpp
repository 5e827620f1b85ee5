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

#include <doctest.h>

#include "qmeas/catalog.hpp"
#include "test_helpers.hpp"

using namespace qmeas;
using namespace qmeas::testing;

namespace {

ComplexMatrix projector_on(const ComplexVector& v) {
  return v * v.adjoint() / v.squaredNorm();
}

// Test-local partial trace, written against the index-sum definition.
ComplexMatrix trace_out_apparatus(const ComplexMatrix& m, Eigen::Index ds,
                                  Eigen::Index da) {
  ComplexMatrix out = ComplexMatrix::Zero(ds, ds);
  for (Eigen::Index i = 0; i < ds; ++i) {
    for (Eigen::Index j = 0; j < ds; ++j) {
      for (Eigen::Index k = 0; k < da; ++k) {
        out(i, j) += m(i * da + k, j * da + k);
      }
    }
  }
  return out;
}

MeasuringProcess swap_model() {
  ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
  return MeasuringProcess(spectral_decompose(sigma_z()), basis_ket(2, 0), swap,
                          spectral_decompose(sigma_z()));
}

MeasuringProcess random_process(std::mt19937_64& rng, Eigen::Index ds,
                                Eigen::Index da) {
  return MeasuringProcess(spectral_decompose(random_hermitian(rng, ds)),
                          random_ket(rng, da), random_unitary(rng, ds * da),
                          spectral_decompose(random_hermitian(rng, da)));
}

}  // namespace

TEST_CASE("density operators are validated") {
  CHECK_THROWS_AS(DensityOperator{sigma_x()}, ValidationError);  // trace 0
  CHECK_THROWS_AS(DensityOperator(2.0 * identity(2)), ValidationError);
  ComplexMatrix not_psd(2, 2);
  not_psd << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(DensityOperator{not_psd}, ValidationError);
  CHECK_NOTHROW(DensityOperator(identity(2) / 2.0));
}

TEST_CASE("evolution specs are validated") {
  CHECK_THROWS_AS(EvolutionSpec(sigma_z(), -1.0), ValidationError);
  CHECK_THROWS_AS(EvolutionSpec(sigma_z(), 1.0, 0.0), ValidationError);
  ComplexMatrix not_herm(2, 2);
  not_herm << 0, 1, 0, 0;
  CHECK_THROWS_AS(EvolutionSpec(not_herm, 1.0), ValidationError);
}

TEST_CASE("evolved projectors stay projectors and match a series oracle") {
  std::mt19937_64 rng(51);
  const ComplexMatrix h = random_hermitian(rng, 3);
  const Observable x = spectral_decompose(random_hermitian(rng, 3));
  const EvolutionSpec evo(h, 0.7, 1.3);
  const ComplexMatrix& e = x.outcomes()[0].projector;

  CHECK((evolved_projector(e, EvolutionSpec(h, 0.0)) - e).norm() == 0.0);

  const ComplexMatrix evolved = evolved_projector(e, evo);
  CHECK((evolved * evolved - evolved).norm() < 1e-10);
  CHECK(std::abs(evolved.trace().real() - e.trace().real()) < 1e-10);

  // Taylor-series oracle for the forward unitary.
  const Complex itheta(0.0, 0.7 / 1.3);
  ComplexMatrix series = ComplexMatrix::Zero(3, 3);
  ComplexMatrix power = identity(3);
  double factorial = 1.0;
  for (int k = 0; k < 40; ++k) {
    series += power / factorial;
    power = (power * (itheta * h)).eval();
    factorial *= static_cast<double>(k + 1);
  }
  CHECK((evolved - series * e * series.adjoint()).norm() < 1e-10);
}

TEST_CASE("prior state of the CNOT model decoheres superpositions") {
  const DensityOperator rho = prior_state(cnot_model(), plus_ket());
  CHECK((rho.matrix() - identity(2) / 2.0).norm() < 1e-12);
}

TEST_CASE("prior state keeps eigenstates pure") {
  const DensityOperator rho = prior_state(cnot_model(), basis_ket(2, 0));
  CHECK((rho.matrix() - projector_on(basis_ket(2, 0).vec())).norm() < 1e-12);
}

TEST_CASE("without interaction the prior is the input projector") {
  std::mt19937_64 rng(52);
  const MeasuringProcess mp(spectral_decompose(sigma_z()), basis_ket(2, 0),
                            identity(4), spectral_decompose(sigma_z()));
  for (int trial = 0; trial < 5; ++trial) {
    const Ket psi = random_ket(rng, 2);
    CHECK((prior_state(mp, psi).matrix() - projector_on(psi.vec())).norm() <
          1e-12);
  }
}

TEST_CASE("posterior states of the CNOT model follow the projection rule") {
  const MeasuringProcess mp = cnot_model();
  const DensityOperator up = posterior_state(mp, plus_ket(), 1.0);
  CHECK((up.matrix() - projector_on(basis_ket(2, 0).vec())).norm() < 1e-12);
  const DensityOperator down = posterior_state(mp, plus_ket(), -1.0);
  CHECK((down.matrix() - projector_on(basis_ket(2, 1).vec())).norm() < 1e-12);
}

TEST_CASE("the non-projective model rotates its posteriors") {
  const MeasuringProcess mp = non_projective_model(hadamard());
  const DensityOperator rho = posterior_state(mp, plus_ket(), 1.0);
  CHECK((rho.matrix() - projector_on(ComplexVector(hadamard() * basis_ket(2, 0).vec())))
            .norm() < 1e-12);
  // Far from the projection-postulate prediction |0><0|.
  CHECK((rho.matrix() - projector_on(basis_ket(2, 0).vec())).norm() > 0.5);
}

TEST_CASE("conditioning on a null outcome is refused") {
  CHECK_THROWS_AS(posterior_state(cnot_model(), basis_ket(2, 0), -1.0),
                  ZeroProbabilityOutcome);
  CHECK_THROWS_AS(posterior_state(cnot_model(), basis_ket(2, 0), 0.25),
                  SpectrumError);
}

TEST_CASE("posteriors mix back into the prior") {
  std::mt19937_64 rng(53);
  const MeasuringProcess models[] = {cnot_model(),
                                     shift_model(3, default_shift_eigenvalues(3)),
                                     non_projective_model(hadamard())};
  for (const auto& mp : models) {
    for (int trial = 0; trial < 10; ++trial) {
      const Ket psi = random_ket(rng, mp.dim_s());
      const OutcomeDistribution dist = outcome_distribution(mp, psi);
      ComplexMatrix mixed =
          ComplexMatrix::Zero(mp.dim_s(), mp.dim_s());
      for (const auto& o : dist.outcomes) {
        if (o.probability > tol::probability) {
          mixed += o.probability * posterior_state(mp, psi, o.value).matrix();
        }
      }
      CHECK((mixed - prior_state(mp, psi).matrix()).norm() < 1e-9);
    }
  }
}

TEST_CASE("joint probability of the CNOT model with a later sigma_x reading") {
  const MeasuringProcess mp = cnot_model();
  const EvolutionSpec evo = EvolutionSpec::trivial(2);
  const Observable x = spectral_decompose(sigma_x());
  const double p = joint_probability(mp, plus_ket(), evo, x, 1.0, 1.0);
  CHECK(p == doctest::Approx(0.25).epsilon(1e-12));

  // Composite matrix-element oracle.
  const ComplexVector big = mp.interaction() *
                            tensor(plus_ket(), basis_ket(2, 0)).vec();
  const ComplexMatrix op = tensor(x.outcomes()[0].projector,
                                  mp.probe().outcomes()[0].projector);
  CHECK(p == doctest::Approx((big.adjoint() * op * big).value().real())
                 .epsilon(1e-12));
}

TEST_CASE("a trivial later observable marginalizes the joint") {
  std::mt19937_64 rng(54);
  const Observable trivial_x(identity(2), {{1.0, identity(2)}});
  const MeasuringProcess mp = non_projective_model(hadamard());
  const EvolutionSpec evo = EvolutionSpec::trivial(2);
  for (int trial = 0; trial < 5; ++trial) {
    const Ket psi = random_ket(rng, 2);
    const OutcomeDistribution dist = outcome_distribution(mp, psi);
    for (const auto& o : dist.outcomes) {
      CHECK(joint_probability(mp, psi, evo, trivial_x, o.value, 1.0) ==
            doctest::Approx(o.probability).epsilon(1e-10));
    }
  }
}

TEST_CASE("an eigenstate repeats deterministically") {
  const MeasuringProcess mp = cnot_model();
  const EvolutionSpec evo = EvolutionSpec::trivial(2);
  const Observable x = spectral_decompose(sigma_z());
  CHECK(joint_probability(mp, basis_ket(2, 0), evo, x, 1.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(joint_probability(mp, basis_ket(2, 0), evo, x, 0.3, 1.0),
                  SpectrumError);
  CHECK_THROWS_AS(joint_probability(mp, basis_ket(2, 0), evo, x, 1.0, 0.3),
                  SpectrumError);
}

TEST_CASE("conditional probabilities from the joint formula") {
  const MeasuringProcess mp = cnot_model();
  const EvolutionSpec evo = EvolutionSpec::trivial(2);
  CHECK(conditional_probability(mp, plus_ket(), evo,
                                spectral_decompose(sigma_x()), 1.0, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  const Observable trivial_x(identity(2), {{1.0, identity(2)}});
  CHECK(conditional_probability(mp, plus_ket(), evo, trivial_x, 1.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(conditional_probability(mp, plus_ket(), evo,
                                spectral_decompose(sigma_z()), 1.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(conditional_probability(mp, basis_ket(2, 0), evo,
                                          spectral_decompose(sigma_z()), 1.0,
                                          -1.0),
                  ZeroProbabilityOutcome);
}

TEST_CASE("conditional distributions sum to one") {
  std::mt19937_64 rng(55);
  const MeasuringProcess mp = shift_model(3, default_shift_eigenvalues(3));
  const Observable x = spectral_decompose(random_hermitian(rng, 3));
  const EvolutionSpec evo(random_hermitian(rng, 3), 0.3);
  const Ket psi = random_ket(rng, 3);
  for (const auto& o : outcome_distribution(mp, psi).outcomes) {
    if (o.probability <= tol::probability) {
      continue;
    }
    double sum = 0.0;
    for (const auto& xo : x.outcomes()) {
      sum += conditional_probability(mp, psi, evo, x, xo.value, o.value);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("both conditional routes agree for the CNOT model") {
  std::mt19937_64 rng(56);
  for (int trial = 0; trial < 10; ++trial) {
    const BayesReport report =
        bayes_check(cnot_model(), random_ket(rng, 2),
                    EvolutionSpec::trivial(2), spectral_decompose(sigma_x()));
    CHECK(report.pass);
    CHECK(report.max_discrepancy <= 1e-9);
  }
}

TEST_CASE("both conditional routes agree under free evolution") {
  std::mt19937_64 rng(57);
  const MeasuringProcess models[] = {cnot_model(),
                                     shift_model(3, default_shift_eigenvalues(3)),
                                     non_projective_model(hadamard())};
  for (const auto& mp : models) {
    for (double delay : {0.0, 0.3, 1.7}) {
      const EvolutionSpec evo(random_hermitian(rng, mp.dim_s()), delay);
      const Observable x =
          spectral_decompose(random_hermitian(rng, mp.dim_s()));
      const BayesReport report =
          bayes_check(mp, random_ket(rng, mp.dim_s()), evo, x);
      CHECK(report.pass);
      CHECK(report.max_discrepancy <= 1e-8);
    }
  }
}

TEST_CASE("a trivial later observable gives certainty on both routes") {
  const Observable trivial_x(identity(2), {{1.0, identity(2)}});
  const BayesReport report =
      bayes_check(cnot_model(), plus_ket(), EvolutionSpec::trivial(2),
                  trivial_x);
  CHECK(report.pass);
  for (const auto& e : report.entries) {
    CHECK(e.conditional_from_joint == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.from_posterior == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("the CNOT instrument is the projective instrument") {
  const Instrument instrument = extract_instrument(cnot_model());
  REQUIRE(instrument.branches.size() == 2);
  const ComplexMatrix p0 = projector_on(basis_ket(2, 0).vec());
  const ComplexMatrix p1 = projector_on(basis_ket(2, 1).vec());
  REQUIRE(instrument.branches[0].kraus.size() == 1);
  REQUIRE(instrument.branches[1].kraus.size() == 1);
  // Phase-free comparison through K†K and the branch action.
  CHECK((instrument.branches[0].kraus[0].adjoint() *
             instrument.branches[0].kraus[0] - p0).norm() < 1e-10);
  CHECK((instrument.branches[1].kraus[0].adjoint() *
             instrument.branches[1].kraus[0] - p1).norm() < 1e-10);
  CHECK((apply_branch(instrument.branches[0], identity(2) / 2.0) - p0 / 2.0)
            .norm() < 1e-10);
}

TEST_CASE("the non-projective instrument rotates its Kraus operators") {
  const Instrument instrument =
      extract_instrument(non_projective_model(hadamard()));
  const ComplexMatrix& k = instrument.branches[0].kraus[0];
  CHECK((k.adjoint() * k - projector_on(basis_ket(2, 0).vec())).norm() < 1e-10);
  CHECK((k * k.adjoint() -
         projector_on(ComplexVector(hadamard() * basis_ket(2, 0).vec())))
            .norm() < 1e-10);
}

TEST_CASE("a swap interaction gives a measure-and-prepare instrument") {
  const MeasuringProcess mp = swap_model();
  const Instrument instrument = extract_instrument(mp);

  // Brute-force Choi from basis matrix units, full composite route.
  for (const auto& branch : instrument.branches) {
    const SpectralOutcome* outcome = mp.probe().find_outcome(branch.value);
    REQUIRE(outcome != nullptr);
    const ComplexMatrix lifted = tensor(identity(2), outcome->projector);
    const ComplexVector xi = mp.preparation().vec();
    ComplexMatrix choi = ComplexMatrix::Zero(4, 4);
    for (Eigen::Index i = 0; i < 2; ++i) {
      for (Eigen::Index j = 0; j < 2; ++j) {
        ComplexMatrix unit = ComplexMatrix::Zero(2, 2);
        unit(i, j) = 1;
        const ComplexMatrix big = lifted * mp.interaction() *
                                  tensor(unit, ComplexMatrix(xi * xi.adjoint())) *
                                  mp.interaction().adjoint() * lifted;
        choi.block(2 * i, 2 * j, 2, 2) = trace_out_apparatus(big, 2, 2);
      }
    }
    CHECK((choi - branch.choi).norm() < 1e-12);
    CHECK(is_psd(branch.choi, 1e-9, 1e-9));
  }

  // Measure in the z basis, prepare |0>.
  std::mt19937_64 rng(58);
  const Ket psi = random_ket(rng, 2);
  const ComplexMatrix rho = projector_on(psi.vec());
  const double p_up = std::norm(psi.vec()(0));
  CHECK((apply_branch(instrument.branches[0], rho) -
         p_up * projector_on(basis_ket(2, 0).vec()))
            .norm() < 1e-10);
}

TEST_CASE("instruments reproduce probabilities and posteriors") {
  std::mt19937_64 rng(59);
  const MeasuringProcess models[] = {cnot_model(),
                                     shift_model(3, default_shift_eigenvalues(3)),
                                     non_projective_model(hadamard()),
                                     random_process(rng, 2, 3),
                                     random_process(rng, 3, 2)};
  for (const auto& mp : models) {
    const Instrument instrument = extract_instrument(mp);
    ComplexMatrix completeness = ComplexMatrix::Zero(mp.dim_s(), mp.dim_s());
    for (const auto& branch : instrument.branches) {
      CHECK(is_psd(branch.choi, 1e-9, 1e-8));
      for (const auto& k : branch.kraus) {
        completeness += k.adjoint() * k;
      }
    }
    CHECK((completeness - identity(mp.dim_s())).norm() < 1e-8);

    for (int trial = 0; trial < 5; ++trial) {
      const Ket psi = random_ket(rng, mp.dim_s());
      const ComplexMatrix rho = projector_on(psi.vec());
      const OutcomeDistribution dist = outcome_distribution(mp, psi);
      for (const auto& branch : instrument.branches) {
        const ComplexMatrix out = apply_branch(branch, rho);
        const double p = out.trace().real();
        CHECK(std::abs(p - dist.probability_of(branch.value, 1e-6)) < 1e-9);
        if (p > tol::probability) {
          CHECK((out / p - posterior_state(mp, psi, branch.value).matrix())
                    .norm() < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("consecutive identical CNOT measurements repeat their outcome") {
  const JointDistribution joint =
      consecutive_joint(cnot_model(), cnot_model(), plus_ket());
  CHECK(joint.probability_of(1.0, 1.0, 1e-6) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(joint.probability_of(-1.0, -1.0, 1e-6) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(joint.probability_of(1.0, -1.0, 1e-6) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(joint.total() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a rotated first measurement decorrelates the second") {
  const JointDistribution joint = consecutive_joint(
      non_projective_model(hadamard()), cnot_model(), plus_ket());
  CHECK(joint.probability_of(1.0, 1.0, 1e-6) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("a trivial second process marginalizes to the first distribution") {
  const Observable trivial(identity(2), {{1.0, identity(2)}});
  const MeasuringProcess inert(trivial, basis_ket(2, 0), identity(4), trivial);
  std::mt19937_64 rng(60);
  const Ket psi = random_ket(rng, 2);
  const JointDistribution joint = consecutive_joint(cnot_model(), inert, psi);
  const OutcomeDistribution dist = outcome_distribution(cnot_model(), psi);
  for (const auto& o : dist.outcomes) {
    CHECK(joint.probability_of(o.value, 1.0, 1e-6) ==
          doctest::Approx(o.probability).epsilon(1e-10));
  }
}

TEST_CASE("the three-system route factors through the reduction pipeline") {
  std::mt19937_64 rng(61);
  const MeasuringProcess first = non_projective_model(hadamard());
  const MeasuringProcess second = cnot_model();
  const Instrument second_instrument = extract_instrument(second);
  for (int trial = 0; trial < 5; ++trial) {
    const Ket psi = random_ket(rng, 2);
    const JointDistribution joint = consecutive_joint(first, second, psi);
    const OutcomeDistribution first_dist = outcome_distribution(first, psi);
    for (const auto& a : first_dist.outcomes) {
      for (const auto& branch : second_instrument.branches) {
        const double expected =
            a.probability <= tol::probability
                ? 0.0
                : a.probability *
                      apply_branch(branch,
                                   posterior_state(first, psi, a.value).matrix())
                          .trace()
                          .real();
        CHECK(std::abs(joint.probability_of(a.value, branch.value, 1e-6) -
                       expected) < 1e-8);
      }
    }
  }
}

TEST_CASE("consecutive measurements need a shared object") {
  CHECK_THROWS_AS(consecutive_joint(cnot_model(),
                                    shift_model(3, default_shift_eigenvalues(3)),
                                    plus_ket()),
                  DimensionError);
}
