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

#include <random>

#include <benchmark/benchmark.h>

#include "qmeas/linalg.hpp"

namespace {

using namespace qmeas;

ComplexMatrix random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return m;
}

void BM_tensor(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Eigen::Index n = state.range(0);
  const ComplexMatrix a = random_matrix(rng, n);
  const ComplexMatrix b = random_matrix(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tensor(a, b));
  }
}
BENCHMARK(BM_tensor)->Arg(4)->Arg(8);

void BM_partial_trace(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Eigen::Index d = state.range(0);
  const ComplexMatrix m = random_matrix(rng, d * d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_trace_apparatus(m, d, d));
  }
}
BENCHMARK(BM_partial_trace)->Arg(4)->Arg(8);

void BM_spectral_decompose(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const Eigen::Index n = state.range(0);
  const ComplexMatrix m = random_matrix(rng, n);
  const ComplexMatrix h = (m + m.adjoint()) / 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_decompose(h));
  }
}
BENCHMARK(BM_spectral_decompose)->Arg(4)->Arg(16);

void BM_commutator(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const Eigen::Index n = state.range(0);
  const ComplexMatrix a = random_matrix(rng, n);
  const ComplexMatrix b = random_matrix(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(commutator(a, b));
  }
}
BENCHMARK(BM_commutator)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
