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

#include <doctest.h>

#include <random>

#include "test_helpers.hpp"

using namespace qmeas;
using namespace qmeas::testing;

namespace {

const SymbolContextPtr ctx = make_context({"G", "G'"});

HyperScalar gain() { return HyperScalar::symbol(ctx, "G"); }
HyperScalar conjugate_gain() { return HyperScalar::symbol(ctx, "G'"); }
HyperScalar constant(Complex c) { return HyperScalar::constant(ctx, c); }

// Random element with up to `max_terms` terms and exponents drawn from
// [lo, hi] per symbol.
HyperScalar random_element(std::mt19937_64& rng, int max_terms, int lo, int hi) {
  std::uniform_int_distribution<int> term_count(1, max_terms);
  std::uniform_int_distribution<int> exponent(lo, hi);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  HyperScalar out(ctx);
  const int terms = term_count(rng);
  for (int t = 0; t < terms; ++t) {
    out = out + HyperScalar::monomial(ctx, Complex(coeff(rng), coeff(rng)),
                                      {exponent(rng), exponent(rng)});
  }
  return out;
}

bool coefficients_close(const HyperScalar& a, const HyperScalar& b, double tol) {
  const HyperScalar d = a - b;
  for (const auto& [e, c] : d.terms()) {
    if (std::abs(c) > tol) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("a gain times its inverse is one") {
  const HyperScalar product = gain() * invert(gain());
  CHECK(product == constant(1.0));
}

TEST_CASE("addition cancels matching coefficients") {
  const HyperScalar x =
      constant(3.0) + HyperScalar::monomial(ctx, 2.0, {-1, 0});
  const HyperScalar sum = x + constant(-3.0);
  CHECK(sum == HyperScalar::monomial(ctx, 2.0, {-1, 0}));
}

TEST_CASE("products expand like polynomials in the inverse gain") {
  const Complex a(1.5, 0.0), b(2.0, 0.0), c(-0.5, 0.0), d(3.0, 0.0);
  const HyperScalar x = constant(a) + HyperScalar::monomial(ctx, b, {-1, 0});
  const HyperScalar y = constant(c) + HyperScalar::monomial(ctx, d, {-1, 0});
  HyperScalar expected = constant(a * c);
  expected = expected + HyperScalar::monomial(ctx, a * d + b * c, {-1, 0});
  expected = expected + HyperScalar::monomial(ctx, b * d, {-2, 0});
  CHECK(x * y == expected);
}

TEST_CASE("inversion handles monomials only") {
  CHECK(invert(constant(2.0) * gain()) ==
        HyperScalar::monomial(ctx, 0.5, {-1, 0}));
  CHECK(invert(gain() * conjugate_gain()) ==
        HyperScalar::monomial(ctx, 1.0, {-1, -1}));
  CHECK_THROWS_AS(invert(constant(1.0) + invert(gain())), ValidationError);
  CHECK_THROWS_AS(invert(HyperScalar(ctx)), ValidationError);
}

TEST_CASE("standard part drops infinitesimals") {
  const HyperScalar x = constant(3.0) + HyperScalar::monomial(ctx, 2.0, {-1, 0});
  CHECK(standard_part(x) == Complex(3.0, 0.0));
  CHECK(standard_part(HyperScalar::monomial(ctx, 1.0, {-1, -1})) ==
        Complex(0.0, 0.0));
  CHECK_THROWS_AS(standard_part(gain() + constant(1.0)), ValidationError);
}

TEST_CASE("infinite and infinitesimal classification") {
  CHECK(is_infinitesimal(HyperScalar::monomial(ctx, 1.0, {-1, -1})));
  CHECK_FALSE(is_infinitesimal(constant(5.0)));
  CHECK(is_infinitesimal(HyperScalar(ctx)));  // zero
  CHECK(is_infinite(gain()));
  CHECK_FALSE(is_infinite(invert(gain())));
  // Mixed-sign exponents classify by total degree.
  const HyperScalar mixed = HyperScalar::monomial(ctx, 1.0, {1, -1});
  CHECK_FALSE(is_infinite(mixed));
  CHECK_FALSE(is_infinitesimal(mixed));
  CHECK(is_infinitesimal(HyperScalar::monomial(ctx, 1.0, {1, -2})));
}

TEST_CASE("ring axioms hold on random elements") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const HyperScalar x = random_element(rng, 4, -2, 2);
    const HyperScalar y = random_element(rng, 4, -2, 2);
    const HyperScalar z = random_element(rng, 4, -2, 2);
    CHECK(coefficients_close(x + y, y + x, 1e-12));
    CHECK(coefficients_close((x + y) + z, x + (y + z), 1e-12));
    CHECK(coefficients_close(x * y, y * x, 1e-12));
    CHECK(coefficients_close((x * y) * z, x * (y * z), 1e-12));
    CHECK(coefficients_close(x * (y + z), x * y + x * z, 1e-12));
    CHECK(coefficients_close(x + (-x), HyperScalar(ctx), 1e-12));
    CHECK(coefficients_close(x * constant(1.0), x, 1e-12));
  }
}

TEST_CASE("standard part is a homomorphism on finite elements") {
  // Finite elements here: constants plus genuinely infinitesimal terms
  // (all exponents <= 0), the only finite shapes the gain algebra is
  // used with.
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const HyperScalar x = random_element(rng, 4, -2, 0);
    const HyperScalar y = random_element(rng, 4, -2, 0);
    REQUIRE(is_finite(x));
    REQUIRE(is_finite(y));
    CHECK(std::abs(standard_part(x + y) - (standard_part(x) + standard_part(y))) <
          1e-12);
    CHECK(std::abs(standard_part(x * y) - standard_part(x) * standard_part(y)) <
          1e-12);
  }
}

TEST_CASE("infinitesimal times finite stays infinitesimal") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    HyperScalar eps(ctx);
    std::uniform_int_distribution<int> exponent(-3, -1);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int t = 0; t < 3; ++t) {
      int e1 = exponent(rng);
      eps = eps + HyperScalar::monomial(ctx, coeff(rng), {e1, exponent(rng) - e1});
    }
    const HyperScalar fin = random_element(rng, 3, -2, 0);
    REQUIRE(is_infinitesimal(eps));
    REQUIRE(is_finite(fin));
    CHECK(is_infinitesimal(eps * fin));
  }
}

TEST_CASE("hyperoperator commutator scales like the plain commutator") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix b = random_matrix(rng, 3, 3);
    const ComplexMatrix bp = random_matrix(rng, 3, 3);
    const HyperOperator scaled_b = invert(gain()) * HyperOperator::lift(ctx, b);
    const HyperOperator scaled_bp =
        invert(conjugate_gain()) * HyperOperator::lift(ctx, bp);
    const HyperOperator lhs = hyper_commutator(scaled_b, scaled_bp);
    const HyperOperator rhs = (invert(gain()) * invert(conjugate_gain())) *
                              HyperOperator::lift(ctx, commutator(b, bp));
    CHECK(lhs == rhs);  // exact, not approximate
  }
}

TEST_CASE("hyperoperator commutes with itself") {
  std::mt19937_64 rng(25);
  const HyperOperator m =
      invert(gain()) * HyperOperator::lift(ctx, random_matrix(rng, 3, 3));
  const HyperOperator zero(ctx, 3, 3);
  CHECK(hyper_commutator(m, m) == zero);
}

TEST_CASE("canonical commutator input yields an infinitesimal commutator") {
  // With [B, B'] = -i hbar I supplied as exact input, the scaled pair
  // has commutator -i hbar G^-1 G'^-1 I, infinitesimal in every entry.
  const double hbar = 1.0;
  const ComplexMatrix k = Complex(0.0, -hbar) * identity(3);
  const HyperOperator scaled =
      (invert(gain()) * invert(conjugate_gain())) * HyperOperator::lift(ctx, k);
  CHECK(scaled.all_entries_infinitesimal());
  for (Eigen::Index i = 0; i < 3; ++i) {
    CHECK(scaled.at(i, i) ==
          HyperScalar::monomial(ctx, Complex(0.0, -hbar), {-1, -1}));
  }
}

TEST_CASE("operator arithmetic checks contexts and shapes") {
  const SymbolContextPtr other = make_context({"H"});
  CHECK_THROWS_AS(HyperScalar::symbol(ctx, "G") +
                      HyperScalar::symbol(other, "H"),
                  ContextMismatch);
  CHECK_THROWS_AS(HyperOperator(ctx, 2, 2) + HyperOperator(ctx, 3, 3),
                  DimensionError);
  CHECK_THROWS_AS(hyper_commutator(HyperOperator(ctx, 2, 3),
                                   HyperOperator(ctx, 3, 2)),
                  DimensionError);
}

TEST_CASE("standard part of a lifted matrix returns the matrix") {
  std::mt19937_64 rng(26);
  const ComplexMatrix m = random_matrix(rng, 2, 4);
  CHECK(max_abs_diff(HyperOperator::lift(ctx, m).standard_part(), m) == 0.0);
}
