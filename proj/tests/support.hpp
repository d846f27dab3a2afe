// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "errors.hpp"
#include "linalg.hpp"

namespace hs::test {

// splitmix64: small, seedable and independent of the library's generators.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform on [lo, hi).
  double uniform(double lo = -1.0, double hi = 1.0) {
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

 private:
  std::uint64_t state_;
};

inline Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (double& x : m.data()) x = rng.uniform();
  return m;
}

inline Matrix random_symmetric(Rng& rng, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = rng.uniform();
  return m;
}

// GᵀG + n·I is comfortably SPD.
inline Matrix random_spd(Rng& rng, std::size_t n) {
  const Matrix g = random_matrix(rng, n, n);
  Matrix a = multiply_tn(g, g);
  for (std::size_t i = 0; i < n; ++i) a(i, i) += static_cast<double>(n);
  return a;
}

inline Vector random_vector(Rng& rng, std::size_t n) {
  Vector v(n);
  for (double& x : v) x = rng.uniform();
  return v;
}

inline double max_diff(const Vector& a, const Vector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_diff(const Matrix& a, const Matrix& b) { return max_diff(a.data(), b.data()); }

}  // namespace hs::test

// Runs expr and returns the ErrorKind it throws; fails the check if nothing
// or something other than hs::Error escapes.
#define HS_ERROR_KIND(expr)                              \
  ([&]() -> ::hs::ErrorKind {                            \
    try {                                                \
      (void)(expr);                                      \
    } catch (const ::hs::Error& e) {                     \
      return e.kind();                                   \
    }                                                    \
    FAIL("expected hs::Error from " #expr);              \
    return ::hs::ErrorKind::InvalidArgument;             \
  }())
