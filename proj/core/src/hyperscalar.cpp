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

#include "qmeas/hyperscalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

namespace qmeas {

namespace {

using TermMap = HyperScalar::TermMap;
using Exponents = HyperScalar::Exponents;

void require_context(const SymbolContextPtr& a, const SymbolContextPtr& b) {
  if (!a || !b || !(*a == *b)) {
    throw ContextMismatch("hyperscalar operands use different symbol contexts");
  }
}

int total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

// Raw term-map arithmetic. No pruning here; public operations prune once
// on their final result so intermediate cancellation is never disturbed.

void raw_add_into(TermMap& acc, const TermMap& x) {
  for (const auto& [e, c] : x) {
    acc[e] += c;
  }
}

void raw_sub_into(TermMap& acc, const TermMap& x) {
  for (const auto& [e, c] : x) {
    acc[e] -= c;
  }
}

void raw_mul_into(TermMap& acc, const TermMap& x, const TermMap& y) {
  Exponents e(x.empty() ? 0 : x.begin()->first.size());
  for (const auto& [ex, cx] : x) {
    for (const auto& [ey, cy] : y) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = ex[i] + ey[i];
      }
      acc[e] += cx * cy;
    }
  }
}

TermMap pruned(TermMap m) {
  for (auto it = m.begin(); it != m.end();) {
    if (std::abs(it->second) < tol::prune) {
      it = m.erase(it);
    } else {
      ++it;
    }
  }
  return m;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_coefficient(Complex c) {
  if (c.imag() == 0.0) {
    return format_real(c.real());
  }
  if (c.real() == 0.0) {
    return format_real(c.imag()) + "i";
  }
  std::string s = "(" + format_real(c.real());
  if (!(c.imag() < 0.0)) {
    s += "+";
  }
  s += format_real(c.imag()) + "i)";
  return s;
}

}  // namespace

SymbolContext::SymbolContext(std::vector<std::string> names)
    : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) {
      throw ValidationError("SymbolContext: empty symbol name");
    }
    if (!seen.insert(n).second) {
      throw ValidationError("SymbolContext: duplicate symbol name '" + n + "'");
    }
  }
}

std::size_t SymbolContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) {
      return i;
    }
  }
  throw ValidationError("SymbolContext: unknown symbol '" + std::string(name) + "'");
}

SymbolContextPtr make_context(std::vector<std::string> names) {
  return std::make_shared<const SymbolContext>(std::move(names));
}

HyperScalar::HyperScalar(SymbolContextPtr ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) {
    throw ValidationError("HyperScalar: null symbol context");
  }
}

HyperScalar HyperScalar::constant(SymbolContextPtr ctx, Complex value) {
  if (!ctx) {
    throw ValidationError("HyperScalar: null symbol context");
  }
  Exponents zero(ctx->arity(), 0);
  return monomial(std::move(ctx), value, std::move(zero));
}

HyperScalar HyperScalar::monomial(SymbolContextPtr ctx, Complex coeff,
                                  Exponents exponents) {
  HyperScalar out(std::move(ctx));
  if (exponents.size() != out.ctx_->arity()) {
    throw DimensionError("HyperScalar: exponent vector arity mismatch");
  }
  if (std::abs(coeff) >= tol::prune) {
    out.terms_.emplace(std::move(exponents), coeff);
  }
  return out;
}

HyperScalar HyperScalar::symbol(SymbolContextPtr ctx, std::string_view name) {
  Exponents e(ctx->arity(), 0);
  e[ctx->index_of(name)] = 1;
  return monomial(std::move(ctx), Complex(1.0, 0.0), std::move(e));
}

HyperScalar HyperScalar::operator+(const HyperScalar& rhs) const {
  require_context(ctx_, rhs.ctx_);
  TermMap acc = terms_;
  raw_add_into(acc, rhs.terms_);
  HyperScalar out(ctx_);
  out.terms_ = pruned(std::move(acc));
  return out;
}

HyperScalar HyperScalar::operator-() const {
  HyperScalar out(ctx_);
  for (const auto& [e, c] : terms_) {
    out.terms_.emplace(e, -c);
  }
  return out;
}

HyperScalar HyperScalar::operator-(const HyperScalar& rhs) const {
  require_context(ctx_, rhs.ctx_);
  TermMap acc = terms_;
  raw_sub_into(acc, rhs.terms_);
  HyperScalar out(ctx_);
  out.terms_ = pruned(std::move(acc));
  return out;
}

HyperScalar HyperScalar::operator*(const HyperScalar& rhs) const {
  require_context(ctx_, rhs.ctx_);
  TermMap acc;
  raw_mul_into(acc, terms_, rhs.terms_);
  HyperScalar out(ctx_);
  out.terms_ = pruned(std::move(acc));
  return out;
}

bool HyperScalar::operator==(const HyperScalar& rhs) const {
  return *ctx_ == *rhs.ctx_ && terms_ == rhs.terms_;
}

std::string HyperScalar::to_string() const {
  if (terms_.empty()) {
    return "0";
  }
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) {
      os << " + ";
    }
    first = false;
    os << format_coefficient(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) {
        continue;
      }
      os << " " << ctx_->names()[i];
      if (e[i] != 1) {
        os << "^" << e[i];
      }
    }
  }
  return os.str();
}

HyperScalar invert(const HyperScalar& x) {
  if (x.terms_.size() != 1) {
    throw ValidationError(
        "invert: only monomial hyperscalars are invertible, got " +
        x.to_string());
  }
  const auto& [e, c] = *x.terms_.begin();
  Exponents neg(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    neg[i] = -e[i];
  }
  return HyperScalar::monomial(x.ctx_, Complex(1.0, 0.0) / c, std::move(neg));
}

Complex standard_part(const HyperScalar& x) {
  if (is_infinite(x)) {
    throw ValidationError("standard_part: element is infinite: " + x.to_string());
  }
  const Exponents zero(x.ctx_->arity(), 0);
  const auto it = x.terms_.find(zero);
  return it == x.terms_.end() ? Complex(0.0, 0.0) : it->second;
}

bool is_infinitesimal(const HyperScalar& x) {
  for (const auto& [e, c] : x.terms_) {
    if (total_degree(e) >= 0) {
      return false;
    }
  }
  return true;
}

bool is_infinite(const HyperScalar& x) {
  for (const auto& [e, c] : x.terms_) {
    if (total_degree(e) > 0) {
      return true;
    }
  }
  return false;
}

HyperOperator::HyperOperator(SymbolContextPtr ctx, Eigen::Index rows,
                             Eigen::Index cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols) {
  if (!ctx_) {
    throw ValidationError("HyperOperator: null symbol context");
  }
  if (rows_ < 0 || cols_ < 0) {
    throw DimensionError("HyperOperator: negative dimensions");
  }
  entries_.assign(static_cast<std::size_t>(rows_ * cols_), HyperScalar(ctx_));
}

HyperOperator HyperOperator::lift(SymbolContextPtr ctx, const ComplexMatrix& m) {
  HyperOperator out(std::move(ctx), m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out.at(i, j) = HyperScalar::constant(out.ctx_, m(i, j));
    }
  }
  return out;
}

const HyperScalar& HyperOperator::at(Eigen::Index i, Eigen::Index j) const {
  return entries_[static_cast<std::size_t>(i * cols_ + j)];
}

HyperScalar& HyperOperator::at(Eigen::Index i, Eigen::Index j) {
  return entries_[static_cast<std::size_t>(i * cols_ + j)];
}

HyperOperator HyperOperator::operator+(const HyperOperator& rhs) const {
  require_context(ctx_, rhs.ctx_);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DimensionError("HyperOperator: shape mismatch in addition");
  }
  HyperOperator out(ctx_, rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    out.entries_[k] = entries_[k] + rhs.entries_[k];
  }
  return out;
}

HyperOperator HyperOperator::operator-(const HyperOperator& rhs) const {
  require_context(ctx_, rhs.ctx_);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw DimensionError("HyperOperator: shape mismatch in subtraction");
  }
  HyperOperator out(ctx_, rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    out.entries_[k] = entries_[k] - rhs.entries_[k];
  }
  return out;
}

HyperOperator HyperOperator::operator*(const HyperOperator& rhs) const {
  require_context(ctx_, rhs.ctx_);
  if (cols_ != rhs.rows_) {
    throw DimensionError("HyperOperator: shape mismatch in product");
  }
  HyperOperator out(ctx_, rows_, rhs.cols_);
  for (Eigen::Index i = 0; i < rows_; ++i) {
    for (Eigen::Index j = 0; j < rhs.cols_; ++j) {
      TermMap acc;
      for (Eigen::Index k = 0; k < cols_; ++k) {
        raw_mul_into(acc, at(i, k).terms_, rhs.at(k, j).terms_);
      }
      out.at(i, j).terms_ = pruned(std::move(acc));
    }
  }
  return out;
}

bool HyperOperator::operator==(const HyperOperator& rhs) const {
  if (!(*ctx_ == *rhs.ctx_) || rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    return false;
  }
  return entries_ == rhs.entries_;
}

ComplexMatrix HyperOperator::standard_part() const {
  ComplexMatrix out(rows_, cols_);
  for (Eigen::Index i = 0; i < rows_; ++i) {
    for (Eigen::Index j = 0; j < cols_; ++j) {
      out(i, j) = qmeas::standard_part(at(i, j));
    }
  }
  return out;
}

bool HyperOperator::all_entries_infinitesimal() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const HyperScalar& s) { return is_infinitesimal(s); });
}

bool HyperOperator::all_nonzero_entries_infinite() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const HyperScalar& s) {
    return s.is_zero() || is_infinite(s);
  });
}

HyperOperator operator*(const HyperScalar& s, const HyperOperator& m) {
  require_context(s.context(), m.context());
  HyperOperator out(m.context(), m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out.at(i, j) = s * m.at(i, j);
    }
  }
  return out;
}

HyperOperator hyper_commutator(const HyperOperator& x, const HyperOperator& y) {
  require_context(x.context(), y.context());
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
    throw DimensionError("hyper_commutator: operands must be square with equal dims");
  }
  const Eigen::Index n = x.rows();
  HyperOperator out(x.context(), n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // Same contraction order as linalg's commutator, one final prune.
      TermMap xy;
      for (Eigen::Index k = 0; k < n; ++k) {
        raw_mul_into(xy, x.at(i, k).terms_, y.at(k, j).terms_);
      }
      TermMap yx;
      for (Eigen::Index k = 0; k < n; ++k) {
        raw_mul_into(yx, y.at(i, k).terms_, x.at(k, j).terms_);
      }
      raw_sub_into(xy, yx);
      out.at(i, j).terms_ = pruned(std::move(xy));
    }
  }
  return out;
}

}  // namespace qmeas
