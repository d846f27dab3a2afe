// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "linalg.hpp"
#include "support.hpp"

using namespace hs;
using hs::test::Rng;

TEST_SUITE("linalg") {

TEST_CASE("cholesky of the identity is the identity") {
  CHECK(test::max_diff(cholesky(Matrix::identity(3)), Matrix::identity(3)) == 0.0);
}

TEST_CASE("cholesky of a 2x2 SPD matrix") {
  const Matrix l = cholesky(Matrix::from_rows({{4, 2}, {2, 5}}));
  CHECK(l(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(l(0, 1) == 0.0);
  CHECK(l(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(l(1, 1) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("cholesky reports the failing pivot of an indefinite matrix") {
  try {
    cholesky(Matrix::from_rows({{1, 2}, {2, 1}}));
    FAIL("indefinite matrix accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositiveDefinite);
    CHECK(e.index() == 1);
  }
}

TEST_CASE("cholesky reconstructs random SPD matrices") {
  Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(50);
    const Matrix a = test::random_spd(rng, n);
    const Matrix l = cholesky(a);
    const Matrix back = multiply(l, transpose(l));
    CHECK(test::max_diff(back, a) <= 1e-10 * max_abs(a));
  }
}

TEST_CASE("sym_eig of a diagonal matrix sorts and permutes") {
  Matrix d(3, 3);
  d(0, 0) = 3;
  d(1, 1) = 1;
  d(2, 2) = 2;
  const EigenDecomposition e = sym_eig(d);
  CHECK(test::max_diff(e.values, Vector{1, 2, 3}) <= 1e-14);
  CHECK(std::abs(e.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors(2, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors(0, 2)) == doctest::Approx(1.0));
}

TEST_CASE("sym_eig of the 2x2 swap matrix") {
  const EigenDecomposition e = sym_eig(Matrix::from_rows({{0, 1}, {1, 0}}));
  CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  const double r = 1.0 / std::sqrt(2.0);
  // Eigenvectors are unique up to sign.
  CHECK(std::abs(e.vectors(0, 0) * e.vectors(1, 0) + 0.5) <= 1e-14);
  CHECK(std::abs(std::abs(e.vectors(0, 0)) - r) <= 1e-14);
  CHECK(std::abs(e.vectors(0, 1) - r) <= 1e-14);
  CHECK(std::abs(e.vectors(1, 1) - r) <= 1e-14);
}

TEST_CASE("sym_eig residual on a random symmetric matrix") {
  Rng rng(7);
  const Matrix a = test::random_symmetric(rng, 5);
  const EigenDecomposition e = sym_eig(a);
  Matrix vl(e.vectors);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) vl(i, j) *= e.values[j];
  CHECK(test::max_diff(multiply(a, e.vectors), vl) <= 1e-10);
}

// Negative eigenvalue count by Sylvester's law of inertia: the pivots of an
// unpivoted LDLᵀ of a generic symmetric matrix carry its inertia.
static std::size_t negative_pivots(Matrix a) {
  const std::size_t n = a.rows();
  std::size_t neg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = a(k, k);
    if (d < 0) ++neg;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / d;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return neg;
}

TEST_CASE("sym_eig trace and inertia on random symmetric matrices") {
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.below(30);
    const Matrix a = test::random_symmetric(rng, n);
    const EigenDecomposition e = sym_eig(a);
    double trace = 0.0, sum = 0.0, scale = 0.0;
    std::size_t neg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      trace += a(i, i);
      sum += e.values[i];
      scale += std::abs(e.values[i]);
      if (e.values[i] < 0) ++neg;
    }
    CHECK(std::abs(trace - sum) <= 1e-10 * scale);
    CHECK(neg == negative_pivots(a));
  }
}

TEST_CASE("solve: identity, diagonal and Hilbert systems") {
  CHECK(test::max_diff(solve(Matrix::identity(3), Vector{1, -2, 3}), Vector{1, -2, 3}) == 0.0);
  CHECK(test::max_diff(solve(Matrix::from_rows({{2, 0}, {0, 4}}), Vector{2, 8}), Vector{1, 2}) <=
        1e-15);
  Matrix h(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) h(i, j) = 1.0 / static_cast<double>(i + j + 1);
  const Vector ones(4, 1.0);
  CHECK(test::max_diff(solve(h, multiply(h, ones)), ones) <= 1e-8);
}

TEST_CASE("solve after matvec is the identity on well-conditioned systems") {
  Rng rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    Matrix a = test::random_matrix(rng, n, n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += static_cast<double>(n);
    const Vector x = test::random_vector(rng, n);
    CHECK(test::max_diff(solve(a, multiply(a, x)), x) <= 1e-9);
  }
}

TEST_CASE("solve rejects a singular matrix") {
  CHECK(HS_ERROR_KIND(solve(Matrix::from_rows({{1, 2}, {2, 4}}), Vector{1, 1})) ==
        ErrorKind::Singular);
}

TEST_CASE("least squares: one parameter fit") {
  const LeastSquaresResult r = least_squares(Matrix::from_rows({{1}, {1}}), Vector{0, 2});
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.residual == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("least squares agrees with solve on square systems") {
  Rng rng(9);
  Matrix a = test::random_matrix(rng, 6, 6);
  for (std::size_t i = 0; i < 6; ++i) a(i, i) += 6.0;
  const Vector b = test::random_vector(rng, 6);
  CHECK(test::max_diff(least_squares(a, b).x, solve(a, b)) <= 1e-9);
}

TEST_CASE("least squares on a consistent overdetermined system") {
  Rng rng(10);
  const Matrix a = test::random_matrix(rng, 12, 4);
  const Vector x = test::random_vector(rng, 4);
  const LeastSquaresResult r = least_squares(a, multiply(a, x));
  CHECK(r.residual <= 1e-10);
  CHECK(test::max_diff(r.x, x) <= 1e-10);
}

TEST_CASE("least squares flags rank deficiency") {
  CHECK(HS_ERROR_KIND(least_squares(Matrix::from_rows({{1, 2}, {2, 4}, {3, 6}}), Vector{1, 1, 1})) ==
        ErrorKind::RankDeficient);
}

}  // TEST_SUITE
