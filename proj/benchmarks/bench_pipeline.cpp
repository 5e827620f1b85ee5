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

#include <benchmark/benchmark.h>

#include "qmeas/amplifier.hpp"
#include "qmeas/catalog.hpp"
#include "qmeas/reduction.hpp"

namespace {

using namespace qmeas;

Ket uniform_ket(Eigen::Index d) {
  return Ket::normalized(ComplexVector::Ones(d));
}

void BM_check_transduction(benchmark::State& state) {
  const Eigen::Index d = state.range(0);
  const MeasuringProcess mp = shift_model(d, default_shift_eigenvalues(d));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_transduction(mp));
  }
}
BENCHMARK(BM_check_transduction)->Arg(2)->Arg(4)->Arg(8);

void BM_posterior_state(benchmark::State& state) {
  const Eigen::Index d = state.range(0);
  const MeasuringProcess mp = shift_model(d, default_shift_eigenvalues(d));
  const Ket psi = uniform_ket(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        posterior_state(mp, psi, static_cast<double>(d - 1)));
  }
}
BENCHMARK(BM_posterior_state)->Arg(2)->Arg(4)->Arg(8);

void BM_extract_instrument(benchmark::State& state) {
  const Eigen::Index d = state.range(0);
  const MeasuringProcess mp = shift_model(d, default_shift_eigenvalues(d));
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_instrument(mp));
  }
}
BENCHMARK(BM_extract_instrument)->Arg(2)->Arg(4);

void BM_consecutive_joint(benchmark::State& state) {
  const Eigen::Index d = state.range(0);
  const MeasuringProcess mp = shift_model(d, default_shift_eigenvalues(d));
  const Ket psi = uniform_ket(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(consecutive_joint(mp, mp, psi));
  }
}
BENCHMARK(BM_consecutive_joint)->Arg(2)->Arg(3)->Arg(4);

void BM_hyper_commutator(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  const SymbolContextPtr ctx = make_context({"G", "G'"});
  ComplexMatrix b = ComplexMatrix::Zero(n, n);
  ComplexMatrix bp = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    b(i, i) = static_cast<double>(i);
    bp(i, (i + 1) % n) = 1.0;
  }
  const HyperOperator x =
      invert(HyperScalar::symbol(ctx, "G")) * HyperOperator::lift(ctx, b);
  const HyperOperator y =
      invert(HyperScalar::symbol(ctx, "G'")) * HyperOperator::lift(ctx, bp);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hyper_commutator(x, y));
  }
}
BENCHMARK(BM_hyper_commutator)->Arg(4)->Arg(8);

}  // namespace
