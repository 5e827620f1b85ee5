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

#include "qmeas/model_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qmeas {

namespace {

using nlohmann::ordered_json;

constexpr Eigen::Index kMaxCompositeDim = 4096;
constexpr double kStateNormSlack = 1e-6;

[[noreturn]] void fail(const std::string& origin, const std::string& where,
                       const std::string& message) {
  throw ModelParseError(origin + ": " + where + ": " + message);
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  std::ostringstream os;
  os << line << ":" << column;
  return os.str();
}

Complex entry_from_json(const ordered_json& j, const std::string& origin,
                        const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    fail(origin, where, "entry must be a [re, im] pair of numbers");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

ComplexVector vector_from_json(const ordered_json& j, Eigen::Index dim,
                               const std::string& origin,
                               const std::string& where) {
  if (!j.is_array()) {
    fail(origin, where, "expected an array of [re, im] pairs");
  }
  if (static_cast<Eigen::Index>(j.size()) != dim) {
    std::ostringstream os;
    os << "expected " << dim << " entries, got " << j.size();
    fail(origin, where, os.str());
  }
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    v(i) = entry_from_json(j[static_cast<std::size_t>(i)], origin,
                           where + "/" + std::to_string(i));
  }
  return v;
}

ComplexMatrix matrix_from_json(const ordered_json& j, Eigen::Index rows,
                               Eigen::Index cols, const std::string& origin,
                               const std::string& where) {
  if (!j.is_array()) {
    fail(origin, where, "expected an array of rows");
  }
  if (static_cast<Eigen::Index>(j.size()) != rows) {
    std::ostringstream os;
    os << "expected " << rows << " rows, got " << j.size();
    fail(origin, where, os.str());
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    const std::string row_where = where + "/" + std::to_string(i);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      std::ostringstream os;
      os << "expected a row of " << cols << " entries";
      fail(origin, row_where, os.str());
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(i, k) = entry_from_json(row[static_cast<std::size_t>(k)], origin,
                                row_where + "/" + std::to_string(k));
    }
  }
  return m;
}

ordered_json entry_to_json(Complex c) {
  return ordered_json::array({c.real(), c.imag()});
}

ordered_json vector_to_json(const ComplexVector& v) {
  ordered_json j = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    j.push_back(entry_to_json(v(i)));
  }
  return j;
}

ordered_json matrix_to_json(const ComplexMatrix& m) {
  ordered_json j = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(entry_to_json(m(i, k)));
    }
    j.push_back(std::move(row));
  }
  return j;
}

Eigen::Index dim_from_json(const ordered_json& j, const std::string& key,
                           const std::string& origin) {
  if (!j.contains(key)) {
    fail(origin, "/" + key, "missing required field");
  }
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long>() < 1) {
    fail(origin, "/" + key, "must be a positive integer");
  }
  return static_cast<Eigen::Index>(v.get<long>());
}

const ordered_json& require_field(const ordered_json& j, const std::string& key,
                                  const std::string& origin) {
  if (!j.contains(key)) {
    fail(origin, "/" + key, "missing required field");
  }
  return j.at(key);
}

}  // namespace

ModelFile parse_model_json(const std::string& text, const std::string& origin) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ModelParseError(origin + ":" + line_column(text, e.byte) +
                          ": " + e.what());
  }
  if (!j.is_object()) {
    fail(origin, "/", "top level must be an object");
  }

  ModelFile mf;
  mf.origin = origin;
  mf.dim_s = dim_from_json(j, "dim_s", origin);
  mf.dim_a = dim_from_json(j, "dim_a", origin);
  if (mf.dim_s * mf.dim_a > kMaxCompositeDim) {
    fail(origin, "/dim_s", "composite dimension exceeds the supported limit");
  }
  mf.measured = matrix_from_json(require_field(j, "measured", origin), mf.dim_s,
                                 mf.dim_s, origin, "/measured");
  mf.probe = matrix_from_json(require_field(j, "probe", origin), mf.dim_a,
                              mf.dim_a, origin, "/probe");
  mf.preparation = vector_from_json(require_field(j, "preparation", origin),
                                    mf.dim_a, origin, "/preparation");
  mf.interaction =
      matrix_from_json(require_field(j, "interaction", origin),
                       mf.dim_s * mf.dim_a, mf.dim_s * mf.dim_a, origin,
                       "/interaction");

  if (j.contains("amplifier")) {
    const auto& a = j.at("amplifier");
    if (!a.is_object()) {
      fail(origin, "/amplifier", "expected an object");
    }
    AmplifierBlock block;
    if (a.contains("gain")) {
      if (!a.at("gain").is_string()) {
        fail(origin, "/amplifier/gain", "expected a string");
      }
      block.gain = a.at("gain").get<std::string>();
    }
    if (a.contains("conjugate_gain")) {
      if (!a.at("conjugate_gain").is_string()) {
        fail(origin, "/amplifier/conjugate_gain", "expected a string");
      }
      block.conjugate_gain = a.at("conjugate_gain").get<std::string>();
    }
    if (block.gain.empty() || block.gain == block.conjugate_gain) {
      fail(origin, "/amplifier", "gain symbols must be distinct and nonempty");
    }
    mf.amplifier = std::move(block);
  }

  if (j.contains("evolution")) {
    const auto& e = j.at("evolution");
    if (!e.is_object()) {
      fail(origin, "/evolution", "expected an object");
    }
    EvolutionBlock block;
    block.hamiltonian =
        matrix_from_json(require_field(e, "hamiltonian", origin), mf.dim_s,
                         mf.dim_s, origin, "/evolution/hamiltonian");
    if (e.contains("delay")) {
      if (!e.at("delay").is_number() || e.at("delay").get<double>() < 0.0) {
        fail(origin, "/evolution/delay", "must be a nonnegative number");
      }
      block.delay = e.at("delay").get<double>();
    }
    if (e.contains("hbar")) {
      if (!e.at("hbar").is_number() || !(e.at("hbar").get<double>() > 0.0)) {
        fail(origin, "/evolution/hbar", "must be a positive number");
      }
      block.hbar = e.at("hbar").get<double>();
    }
    mf.evolution = std::move(block);
  }
  return mf;
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ModelParseError(path + ": cannot open file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model_json(buffer.str(), path);
}

std::string model_file_to_json(const ModelFile& mf) {
  ordered_json j;
  j["dim_s"] = mf.dim_s;
  j["dim_a"] = mf.dim_a;
  j["measured"] = matrix_to_json(mf.measured);
  j["probe"] = matrix_to_json(mf.probe);
  j["preparation"] = vector_to_json(mf.preparation);
  j["interaction"] = matrix_to_json(mf.interaction);
  if (mf.amplifier) {
    j["amplifier"] = {{"gain", mf.amplifier->gain},
                      {"conjugate_gain", mf.amplifier->conjugate_gain}};
  }
  if (mf.evolution) {
    j["evolution"] = {{"hamiltonian", matrix_to_json(mf.evolution->hamiltonian)},
                      {"delay", mf.evolution->delay},
                      {"hbar", mf.evolution->hbar}};
  }
  return j.dump(2) + "\n";
}

void save_model_file(const ModelFile& mf, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ModelParseError(path + ": cannot open file for writing");
  }
  out << model_file_to_json(mf);
}

MeasuringProcess to_measuring_process(const ModelFile& mf, double tol_cluster) {
  if (!is_hermitian(mf.measured)) {
    fail(mf.origin, "/measured", "matrix is not Hermitian");
  }
  if (!is_hermitian(mf.probe)) {
    fail(mf.origin, "/probe", "matrix is not Hermitian");
  }
  if (!is_unitary(mf.interaction)) {
    fail(mf.origin, "/interaction", "interaction not unitary");
  }
  const double prep_norm = mf.preparation.norm();
  if (std::abs(prep_norm - 1.0) > kStateNormSlack) {
    fail(mf.origin, "/preparation", "vector is not normalized");
  }
  if (mf.evolution && !is_hermitian(mf.evolution->hamiltonian)) {
    fail(mf.origin, "/evolution/hamiltonian", "matrix is not Hermitian");
  }
  try {
    return MeasuringProcess(spectral_decompose(mf.measured, tol_cluster),
                            Ket(mf.preparation / prep_norm),
                            mf.interaction,
                            spectral_decompose(mf.probe, tol_cluster));
  } catch (const Error& e) {
    throw ModelParseError(mf.origin + ": " + e.what());
  }
}

ModelFile from_measuring_process(const MeasuringProcess& mp) {
  ModelFile mf;
  mf.dim_s = mp.dim_s();
  mf.dim_a = mp.dim_a();
  mf.measured = mp.measured().matrix();
  mf.probe = mp.probe().matrix();
  mf.preparation = mp.preparation().vec();
  mf.interaction = mp.interaction();
  return mf;
}

Ket parse_state(const std::string& text, Eigen::Index dim,
                std::string* warning) {
  if (dim < 1) {
    throw DimensionError("parse_state: dimension must be positive");
  }
  ComplexVector v = ComplexVector::Zero(dim);
  if (text == "zero") {
    v(0) = 1;
    return Ket(std::move(v));
  }
  if (text == "one") {
    if (dim < 2) {
      throw ValidationError("parse_state: state 'one' needs dimension >= 2");
    }
    v(1) = 1;
    return Ket(std::move(v));
  }
  if (text == "plus") {
    if (dim < 2) {
      throw ValidationError("parse_state: state 'plus' needs dimension >= 2");
    }
    v(0) = v(1) = 1.0 / std::sqrt(2.0);
    return Ket(std::move(v));
  }
  if (text == "uniform") {
    v.setConstant(1.0 / std::sqrt(static_cast<double>(dim)));
    return Ket(std::move(v));
  }

  std::vector<double> tokens;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    try {
      std::size_t used = 0;
      tokens.push_back(std::stod(piece, &used));
      while (used < piece.size() && std::isspace(static_cast<unsigned char>(piece[used]))) {
        ++used;
      }
      if (used != piece.size()) {
        throw std::invalid_argument(piece);
      }
    } catch (const std::exception&) {
      throw ValidationError("parse_state: bad amplitude token '" + piece + "'");
    }
  }
  if (static_cast<Eigen::Index>(tokens.size()) == dim) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      v(i) = tokens[static_cast<std::size_t>(i)];
    }
  } else if (static_cast<Eigen::Index>(tokens.size()) == 2 * dim) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      v(i) = Complex(tokens[static_cast<std::size_t>(2 * i)],
                     tokens[static_cast<std::size_t>(2 * i + 1)]);
    }
  } else {
    std::ostringstream os;
    os << "parse_state: expected " << dim << " real or " << 2 * dim
       << " re,im tokens, got " << tokens.size();
    throw ValidationError(os.str());
  }
  const double n = v.norm();
  if (n == 0.0) {
    throw ValidationError("parse_state: zero state vector");
  }
  if (warning != nullptr && std::abs(n - 1.0) > kStateNormSlack) {
    std::ostringstream os;
    os << "state vector norm " << n << " renormalized to 1";
    *warning = os.str();
  }
  return Ket(v / n);
}

Observable named_observable(const std::string& name, Eigen::Index dim) {
  if (name == "identity") {
    return Observable(identity(dim), {{1.0, identity(dim)}});
  }
  if (name == "sigmax" || name == "sigmay" || name == "sigmaz") {
    if (dim != 2) {
      throw ValidationError("named_observable: Pauli names need dimension 2");
    }
    ComplexMatrix m(2, 2);
    if (name == "sigmax") {
      m << 0, 1, 1, 0;
    } else if (name == "sigmay") {
      m << 0, Complex(0, -1), Complex(0, 1), 0;
    } else {
      m << 1, 0, 0, -1;
    }
    return spectral_decompose(m);
  }
  if (name.rfind("diag:", 0) == 0) {
    const std::string list = name.substr(5);
    std::vector<double> values;
    std::stringstream ss(list);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      try {
        values.push_back(std::stod(piece));
      } catch (const std::exception&) {
        throw ValidationError("named_observable: bad diagonal value '" + piece + "'");
      }
    }
    if (static_cast<Eigen::Index>(values.size()) != dim) {
      std::ostringstream os;
      os << "named_observable: diag needs " << dim << " values, got "
         << values.size();
      throw ValidationError(os.str());
    }
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      m(i, i) = values[static_cast<std::size_t>(i)];
    }
    return spectral_decompose(m);
  }
  throw ValidationError(
      "named_observable: unknown observable '" + name +
      "' (expected sigmax, sigmay, sigmaz, identity or diag:v1,v2,...)");
}

}  // namespace qmeas
