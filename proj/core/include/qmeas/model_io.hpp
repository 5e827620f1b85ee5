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

#include <optional>
#include <string>

#include "qmeas/model.hpp"

namespace qmeas {

/// Gain symbol names for the amplification stage.
struct AmplifierBlock {
  std::string gain = "G";
  std::string conjugate_gain = "G'";
};

/// Object Hamiltonian and readout delay for joint/conditional queries.
struct EvolutionBlock {
  ComplexMatrix hamiltonian;
  double delay = 0.0;
  double hbar = 1.0;
};

/// On-disk description of a measuring process. The JSON schema is
///
///   {
///     "dim_s": 2, "dim_a": 2,
///     "measured":     [[[re,im], ...], ...],   (dim_s x dim_s, row-major)
///     "probe":        ...,                     (dim_a x dim_a)
///     "preparation":  [[re,im], ...],          (dim_a entries)
///     "interaction":  ...,                     (dim_s*dim_a square)
///     "amplifier":    {"gain": "G", "conjugate_gain": "G'"},   (optional)
///     "evolution":    {"hamiltonian": ..., "delay": t, "hbar": h}  (optional)
///   }
///
/// with every scalar a [re, im] pair of decimals. Loading validates
/// shapes and value constraints and anchors every complaint with the
/// file name plus a line:column (syntax) or JSON path (content).
struct ModelFile {
  Eigen::Index dim_s = 0;
  Eigen::Index dim_a = 0;
  ComplexMatrix measured;
  ComplexMatrix probe;
  ComplexVector preparation;
  ComplexMatrix interaction;
  std::optional<AmplifierBlock> amplifier;
  std::optional<EvolutionBlock> evolution;
  /// Where this description came from, for error anchoring.
  std::string origin = "<memory>";
};

ModelFile parse_model_json(const std::string& text, const std::string& origin);
ModelFile load_model_file(const std::string& path);

/// Stable serialization: fixed key order, two-space indent, shortest
/// round-tripping number form. Reloading reproduces the matrices bit for
/// bit.
std::string model_file_to_json(const ModelFile& mf);
void save_model_file(const ModelFile& mf, const std::string& path);

/// Builds the validated process (observables via spectral decomposition
/// of the stored Hermitian matrices). Value problems are reported as
/// ModelParseError anchored to the offending field.
MeasuringProcess to_measuring_process(const ModelFile& mf,
                                      double tol_cluster = tol::cluster);

ModelFile from_measuring_process(const MeasuringProcess& mp);

/// Parses an object state: a named state (zero, one, plus, uniform) or a
/// comma-separated amplitude list, either dim real tokens or 2*dim
/// re,im tokens. The vector is normalized; when the supplied norm
/// deviates from 1 by more than 1e-6 a note is appended to *warning.
Ket parse_state(const std::string& text, Eigen::Index dim,
                std::string* warning = nullptr);

/// Named observable for CLI queries: sigmax | sigmay | sigmaz | identity
/// | diag:v1,v2,... (Pauli names require dim 2; diag needs dim values).
Observable named_observable(const std::string& name, Eigen::Index dim);

}  // namespace qmeas
