// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "linalg.hpp"
#include "quadrature.hpp"

namespace hs {

enum class BasisKind { HalfspaceExtended, FullLine };

// Orthonormal polynomial family. For the half-space kind the stored
// recurrence is orthonormal on the half domain, and function j of the
// extended family is
//   j even: odd extension of p_{j/2},      scaled by 1/sqrt(2)
//   j odd:  even extension of p_{(j-1)/2}, scaled by 1/sqrt(2)
// giving the order O, E, O, E, ..., O with 2N+1 functions.
struct BasisFamily {
  BasisKind kind = BasisKind::FullLine;
  Measure domain = Measure::Lebesgue;
  Recurrence recurrence;
  std::size_t count = 0;

  bool is_even(std::size_t j) const { return kind == BasisKind::HalfspaceExtended && j % 2 == 1; }
  Vector evaluate(double x) const;
  Matrix evaluate(const Vector& points) const;
};

// Values p_0..p_{n-1}(x) of the orthonormal family with recurrence rec.
Vector orthonormal_values(const Recurrence& rec, std::size_t n, double x);

BasisFamily build_halfspace_family(std::size_t n, const QuadratureRule& half_rule);
BasisFamily build_full_family(std::size_t k, const QuadratureRule& full_rule);

// Flat index = (species * transverse + t) * mu + i: species-major, then the
// transverse index, with the mu index fastest. All indices 0-based.
struct TensorBasis {
  std::size_t species = 1;
  std::size_t transverse = 1;
  std::size_t mu = 1;

  std::size_t dimension() const { return species * transverse * mu; }
  std::size_t flat(std::size_t s, std::size_t t, std::size_t i) const;
  void unflat(std::size_t flat_index, std::size_t& s, std::size_t& t, std::size_t& i) const;
};

}  // namespace hs
