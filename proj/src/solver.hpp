// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "basis.hpp"
#include "boundary.hpp"
#include "linalg.hpp"
#include "models.hpp"

namespace hs {

// Galerkin space on a model's velocity grid. Basis function (s, t, i) has
// nodal values psi_i(mu) phi_t(second) / sqrt(c_s) on species s.
struct Discretization {
  BasisFamily mu_family;
  BasisFamily transverse_family;
  TensorBasis tensor;
  Matrix values;     // nodes x dim
  Matrix weighted;   // dim x nodes, values^T W

  std::size_t dimension() const { return tensor.dimension(); }
  Vector project(const Vector& nodal) const { return multiply(weighted, nodal); }
  Vector synthesize(const Vector& coeffs) const { return multiply(values, coeffs); }
  bool even_in_mu(std::size_t flat) const;
  // Values of every basis function at an arbitrary velocity point.
  Vector evaluate(double mu, double second, std::size_t species, const VelocityGrid& g) const;
};

Discretization discretize(const Model& model, std::size_t n, std::size_t k);

struct SpectralSystem {
  Matrix a;
  Matrix b;
  double alpha_requested = 0.0;
  double alpha = 0.0;
  int halvings = 0;
  std::vector<Vector> damping;  // Galerkin vectors V^T W (mu Y)
  Matrix factor;                // lower Cholesky factor of -B

  Vector theta;                 // ascending eigenvalues of L^{-1} A L^{-T}
  std::vector<std::string> classification;
  Vector lambda;                // pencil eigenvalue per theta (inf when degenerate)
  Vector decaying_lambda;
  Matrix decaying;              // dim x n_decaying, -B-orthonormal columns
  std::size_t n_pos = 0, n_neg = 0, n_zero = 0;
  double pencil_residual = 0.0;

  double lambda_max() const;  // slowest decaying rate (closest to 0)
};

// Assembles and, when needed, halves alpha until -B factors (at most 6 times).
SpectralSystem assemble(const Model& model, const NullSpaceInfo& nsi, const Discretization& disc,
                        double alpha);
void decaying_modes(SpectralSystem& sys, std::size_t expected_per_sign,
                    std::size_t expected_zero);

struct BoundarySystem {
  Matrix rows;        // scaled bc rows over flat coefficients
  Vector row_scale;
  Matrix rhs_map;     // scaled, maps (I+K̄)^{-1} h at positive nodes to rhs
  Matrix system;      // rows * decaying modes
  std::optional<LuFactorization> lu;
};

BoundarySystem assemble_bc(const Model& model, const Discretization& disc,
                           const SpectralSystem& sys, const HalfRangeOperators& ops);

struct DampedSolution {
  Vector coeffs;         // mode coefficients
  double residual = 0.0; // boundary solve residual relative to ‖rhs‖
  Vector galerkin(const SpectralSystem& sys, double x) const;
};

DampedSolution solve_damped(const SpectralSystem& sys, const BoundarySystem& bc,
                            const HalfRangeOperators& ops, const Vector& h);

struct RecoveredSolution {
  DampedSolution f;
  std::vector<DampedSolution> g;
  std::vector<std::string> labels;   // end-state mode labels, e.g. "null:1"
  std::vector<Vector> modes;         // nodal X_j paired with labels
  Vector coefficients;               // recovery constants c_j
  Vector end_state;                  // nodal, sum c_j X_j
  Vector end_galerkin;               // V^T W end_state
  double residual = 0.0;
  double residual_bound = 0.0;

  Vector damped(const SpectralSystem& sys, double x) const { return f.galerkin(sys, x); }
  // Galerkin coefficients of eta (the end state enters through its projection).
  Vector eta(const SpectralSystem& sys, double x) const;
  // Nodal eta: the decaying part synthesized from coefficients plus the exact
  // nodal end state.
  Vector eta_nodal(const Discretization& disc, const SpectralSystem& sys, double x) const;
};

// Galerkin vectors for the averaging functionals, in the order
// X+, X-, X0, L^{-1}(mu X0).
std::vector<Vector> average_functionals(const Model& model, const NullSpaceInfo& nsi,
                                        const Discretization& disc);

RecoveredSolution recover(const Model& model, const NullSpaceInfo& nsi,
                          const Discretization& disc, const SpectralSystem& sys,
                          const BoundarySystem& bc, const HalfRangeOperators& ops,
                          const DampedSolution& f);

}  // namespace hs
