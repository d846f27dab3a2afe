// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>

#include "linalg.hpp"

namespace hs {

enum class Measure { Lebesgue, GaussianHalf, GaussianFull, Trapezoid };

const char* measure_name(Measure m);

struct QuadratureRule {
  Vector nodes;    // strictly increasing
  Vector weights;  // positive
  Measure measure = Measure::Lebesgue;
  double lower = 0.0;
  double upper = 0.0;

  std::size_t size() const { return nodes.size(); }
  double total() const;
};

// Three-term recurrence of an orthonormal family:
//   sqrt(beta[k+1]) p_{k+1} = (x - alpha[k]) p_k - sqrt(beta[k]) p_{k-1},
// with beta[0] the total mass and p_0 = 1/sqrt(beta[0]).
struct Recurrence {
  Vector alpha;
  Vector beta;
  std::size_t size() const { return alpha.size(); }
};

// Discretized Stieltjes procedure on the discrete measure (x, w).
Recurrence stieltjes(const Vector& x, const Vector& w, std::size_t n);

// Gauss rule with n nodes from the first n recurrence terms.
QuadratureRule golub_welsch(const Recurrence& rec, std::size_t n, Measure measure,
                            double lower, double upper);

QuadratureRule gauss_legendre(std::size_t n, double a, double b);

// Gauss rule for exp(-x^2/2) on [0, cutoff] (half) or [-cutoff, cutoff] (full).
QuadratureRule gauss_weighted(std::size_t n, Measure weight, double cutoff = 12.0,
                              std::size_t panels = 80);

// Composite Gauss-Legendre discretization of the Gaussian weight, the fine
// measure that gauss_weighted orthogonalizes against.
QuadratureRule gaussian_discretization(Measure weight, double cutoff, std::size_t panels);

QuadratureRule trapezoid(std::size_t n, double a, double b);

}  // namespace hs
