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

#include <stdexcept>
#include <string>

namespace qmeas {

/// Base class for all qmeasure exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A domain-type invariant is violated (non-Hermitian observable,
/// non-unitary interaction, broken projector family, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A requested outcome value is not in the relevant spectrum.
class SpectrumError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on an outcome whose probability is numerically zero.
class ZeroProbabilityOutcome : public Error {
 public:
  using Error::Error;
};

/// Hyperscalar operands belong to different symbol contexts.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

/// A model file failed to parse or validate; the message carries the
/// file name and a location anchor (line:column or JSON path).
class ModelParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmeas
