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

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qmeas/linalg.hpp"

namespace qmeas {

/// A named formal gain, standing for a positive infinite scalar.
struct GainSymbol {
  std::string name;
};

/// Ordered set of gain symbols a computation works over. Contexts compare
/// by content, so independently built contexts with the same names
/// interoperate.
class SymbolContext {
 public:
  /// Throws ValidationError on empty or duplicate names.
  explicit SymbolContext(std::vector<std::string> names);

  std::size_t arity() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  /// Index of `name`; throws ValidationError if absent.
  std::size_t index_of(std::string_view name) const;

  friend bool operator==(const SymbolContext&, const SymbolContext&) = default;

 private:
  std::vector<std::string> names_;
};

using SymbolContextPtr = std::shared_ptr<const SymbolContext>;

SymbolContextPtr make_context(std::vector<std::string> names);

class HyperOperator;

/// Finite formal Laurent sum in the context's gain symbols: a map from
/// exponent vectors (one signed integer per symbol) to complex
/// coefficients. Models infinite, finite and infinitesimal c-numbers:
/// the total degree of a term is the sum of its exponents, an element is
/// infinite when some term has positive total degree and infinitesimal
/// when every term has negative total degree.
///
/// Coefficients of magnitude below tol::prune are never stored, and
/// pruning happens only when an operation returns, so chained arithmetic
/// on monomial operands is exact term for term.
class HyperScalar {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, Complex>;

  /// Zero element of `ctx`.
  explicit HyperScalar(SymbolContextPtr ctx);

  static HyperScalar constant(SymbolContextPtr ctx, Complex value);
  static HyperScalar monomial(SymbolContextPtr ctx, Complex coeff,
                              Exponents exponents);
  /// The gain symbol itself (coefficient 1, exponent 1).
  static HyperScalar symbol(SymbolContextPtr ctx, std::string_view name);

  const SymbolContextPtr& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  HyperScalar operator+(const HyperScalar& rhs) const;
  HyperScalar operator-() const;
  HyperScalar operator-(const HyperScalar& rhs) const;
  HyperScalar operator*(const HyperScalar& rhs) const;

  /// Exact comparison of term maps (contexts must agree by content).
  bool operator==(const HyperScalar& rhs) const;

  std::string to_string() const;

 private:
  friend class HyperOperator;
  friend HyperOperator hyper_commutator(const HyperOperator& x,
                                        const HyperOperator& y);
  friend HyperScalar invert(const HyperScalar& x);
  friend Complex standard_part(const HyperScalar& x);
  friend bool is_infinitesimal(const HyperScalar& x);
  friend bool is_infinite(const HyperScalar& x);

  SymbolContextPtr ctx_;
  TermMap terms_;
};

/// Reciprocal of a monomial: inverse coefficient, negated exponents.
/// Throws ValidationError for zero or multi-term input; general Laurent
/// inversion is unsupported.
HyperScalar invert(const HyperScalar& x);

/// The coefficient of the constant term (0 if absent), discarding
/// infinitesimals. Throws ValidationError when `x` is infinite.
Complex standard_part(const HyperScalar& x);

/// Every term has negative total degree (true for zero).
bool is_infinitesimal(const HyperScalar& x);

/// Some term has positive total degree.
bool is_infinite(const HyperScalar& x);

inline bool is_finite(const HyperScalar& x) { return !is_infinite(x); }

/// Rectangular matrix of HyperScalars sharing one symbol context.
class HyperOperator {
 public:
  HyperOperator(SymbolContextPtr ctx, Eigen::Index rows, Eigen::Index cols);

  /// Embeds a complex matrix as constant entries.
  static HyperOperator lift(SymbolContextPtr ctx, const ComplexMatrix& m);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  const SymbolContextPtr& context() const { return ctx_; }

  const HyperScalar& at(Eigen::Index i, Eigen::Index j) const;
  HyperScalar& at(Eigen::Index i, Eigen::Index j);

  HyperOperator operator+(const HyperOperator& rhs) const;
  HyperOperator operator-(const HyperOperator& rhs) const;
  HyperOperator operator*(const HyperOperator& rhs) const;
  bool operator==(const HyperOperator& rhs) const;

  /// Entrywise standard part. Throws if any entry is infinite.
  ComplexMatrix standard_part() const;

  bool all_entries_infinitesimal() const;
  bool all_nonzero_entries_infinite() const;

 private:
  friend HyperOperator operator*(const HyperScalar& s, const HyperOperator& m);
  friend HyperOperator hyper_commutator(const HyperOperator& x,
                                        const HyperOperator& y);

  SymbolContextPtr ctx_;
  Eigen::Index rows_;
  Eigen::Index cols_;
  std::vector<HyperScalar> entries_;  // row-major
};

/// Scales every entry by `s`.
HyperOperator operator*(const HyperScalar& s, const HyperOperator& m);

/// xy − yx over hyperscalar arithmetic. Contractions accumulate in
/// ascending index order with a single final pruning pass, so for
/// monomial-scaled operands the result matches the scalar-scaled
/// commutator of the underlying complex matrices exactly:
/// hyper_commutator(s·M, t·N) == (s·t)·lift(commutator(M, N)).
HyperOperator hyper_commutator(const HyperOperator& x, const HyperOperator& y);

}  // namespace qmeas
