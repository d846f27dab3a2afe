// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "basis.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace hs;

namespace {

// Mirror a half rule onto the symmetric domain, negative nodes first.
void symmetric_rule(const QuadratureRule& half, Vector& x, Vector& w) {
  const std::size_t q = half.size();
  x.assign(2 * q, 0.0);
  w.assign(2 * q, 0.0);
  for (std::size_t i = 0; i < q; ++i) {
    x[q - 1 - i] = -half.nodes[i];
    w[q - 1 - i] = half.weights[i];
    x[q + i] = half.nodes[i];
    w[q + i] = half.weights[i];
  }
}

double gram_error(const Matrix& v, const Vector& w) {
  double worst = 0.0;
  for (std::size_t a = 0; a < v.cols(); ++a)
    for (std::size_t b = 0; b < v.cols(); ++b) {
      double s = 0.0;
      for (std::size_t q = 0; q < v.rows(); ++q) s += w[q] * v(q, a) * v(q, b);
      worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

struct Family {
  BasisFamily basis;
  Vector x, w;
};

Family legendre(std::size_t n) {
  const QuadratureRule half = gauss_legendre(2 * (n + 1) + 8, 0.0, 1.0);
  Family f{build_halfspace_family(n, half), {}, {}};
  symmetric_rule(half, f.x, f.w);
  return f;
}

Family half_hermite(std::size_t n) {
  const QuadratureRule half = gauss_weighted(2 * (n + 1) + 8, Measure::GaussianHalf);
  Family f{build_halfspace_family(n, half), {}, {}};
  symmetric_rule(half, f.x, f.w);
  return f;
}

}  // namespace

TEST_SUITE("basis") {

TEST_CASE("first half-domain Legendre polynomials") {
  const Family f = legendre(4);
  for (double mu : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    const Vector p = orthonormal_values(f.basis.recurrence, 2, mu);
    CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(p[1] - std::sqrt(3.0) * (2.0 * mu - 1.0)) <= 1e-13);
  }
  CHECK(std::abs(orthonormal_values(f.basis.recurrence, 2, 0.5)[1]) <= 1e-14);
}

TEST_CASE("extended functions have the stated parity") {
  const Family f = legendre(6);
  const Vector plus = f.basis.evaluate(0.3);
  const Vector minus = f.basis.evaluate(-0.3);
  REQUIRE(plus.size() == 13);
  for (std::size_t j = 0; j < plus.size(); ++j) {
    if (f.basis.is_even(j))
      CHECK(plus[j] == minus[j]);
    else
      CHECK(plus[j] == -minus[j]);
  }
  // Ordering O, E, O, E, ..., O.
  CHECK_FALSE(f.basis.is_even(0));
  CHECK(f.basis.is_even(1));
  CHECK_FALSE(f.basis.is_even(12));
}

TEST_CASE("extended families are orthonormal on the symmetric domain") {
  for (std::size_t n = 1; n <= 32; ++n) {
    const Family f = legendre(n);
    CHECK(gram_error(f.basis.evaluate(f.x), f.w) <= 1e-12);
  }
  for (std::size_t n = 1; n <= 20; ++n) {
    const Family f = half_hermite(n);
    CHECK(gram_error(f.basis.evaluate(f.x), f.w) <= 1e-12);
  }
}

// mu times an odd function is even and vice versa, so mu never couples two
// functions of the same parity. mu times the extension of p_k involves p_{k+1}
// at most: index j+1 for even functions and j+3 for odd ones.
TEST_CASE("multiplication by mu couples opposite parities only") {
  for (const Family& f : {legendre(16), half_hermite(15)}) {
    const Matrix v = f.basis.evaluate(f.x);
    const std::size_t c = v.cols();
    double same_parity = 0.0, outside_span = 0.0;
    for (std::size_t a = 0; a < c; ++a)
      for (std::size_t b = 0; b < c; ++b) {
        double s = 0.0;
        for (std::size_t q = 0; q < v.rows(); ++q) s += f.w[q] * f.x[q] * v(q, a) * v(q, b);
        if (f.basis.is_even(a) == f.basis.is_even(b)) same_parity = std::max(same_parity, std::abs(s));
        if (b > a + (f.basis.is_even(a) ? 1 : 3)) outside_span = std::max(outside_span, std::abs(s));
      }
    CHECK(same_parity <= 1e-12);
    CHECK(outside_span <= 1e-12);
  }
}

TEST_CASE("full-line Hermite family") {
  const QuadratureRule rule = gauss_weighted(2 * 8 + 8, Measure::GaussianFull);
  const BasisFamily f = build_full_family(8, rule);
  const Matrix v = f.evaluate(rule.nodes);
  double norm0 = 0.0, cross = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    norm0 += rule.weights[q] * v(q, 0) * v(q, 0);
    cross += rule.weights[q] * v(q, 0) * v(q, 1);
  }
  CHECK(std::abs(norm0 - 1.0) <= 1e-13);
  CHECK(std::abs(cross) <= 1e-13);
  CHECK(v(0, 0) == doctest::Approx(std::pow(2.0 * M_PI, -0.25)).epsilon(1e-12));
  CHECK(gram_error(v, rule.weights) <= 1e-12);
}

TEST_CASE("single point, single function") {
  const QuadratureRule rule = gauss_weighted(4, Measure::GaussianFull);
  const BasisFamily f = build_full_family(1, rule);
  const Matrix v = f.evaluate(Vector{0.7});
  REQUIRE(v.rows() == 1);
  REQUIRE(v.cols() == 1);
  CHECK(v(0, 0) == doctest::Approx(std::pow(2.0 * M_PI, -0.25)).epsilon(1e-12));
}

TEST_CASE("tensor index layout") {
  TensorBasis one{1, 1, 1};
  CHECK(one.flat(0, 0, 0) == 0);

  TensorBasis rte{2, 1, 9};
  std::size_t expected = 0;
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t i = 0; i < 9; ++i) {
      const std::size_t k = rte.flat(s, 0, i);
      CHECK(k == expected++);
      std::size_t s2, t2, i2;
      rte.unflat(k, s2, t2, i2);
      CHECK(s2 == s);
      CHECK(t2 == 0);
      CHECK(i2 == i);
    }

  TensorBasis bgk{1, 8, 17};
  CHECK(bgk.dimension() == 136);
  CHECK(bgk.flat(0, 1, 0) == 17);
  CHECK(HS_ERROR_KIND(bgk.flat(0, 8, 0)) == ErrorKind::OutOfRange);
  std::size_t s, t, i;
  CHECK(HS_ERROR_KIND(bgk.unflat(136, s, t, i)) == ErrorKind::OutOfRange);
}

}  // TEST_SUITE
