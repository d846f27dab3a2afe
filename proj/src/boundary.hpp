// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "models.hpp"

namespace hs {

// Incoming boundary data h on mu > 0.
struct IncomingSpec {
  enum class Kind { Zero, Null, Plus, Minus, Polynomial, Shifted, Table };
  Kind kind = Kind::Zero;
  Kind shifted_of = Kind::Null;  // which mode family a Shifted spec refers to
  std::size_t index = 0;         // 0-based mode index
  // Coefficients in mu (constant first) per species; a single entry applies
  // to every species.
  std::vector<Vector> polynomial;
  struct TableRow {
    double mu = 0.0;
    double second = 0.0;
    std::size_t species = 0;
    double value = 0.0;
  };
  std::vector<TableRow> table;

  std::string describe() const;
};

struct BoundarySpec {
  double alpha_d = 0.0;
  double alpha_s = 0.0;
  IncomingSpec incoming;

  double alpha_r() const { return alpha_d + alpha_s; }
  void validate() const;
};

// Operators acting on nodal values at the positive-mu nodes, in the order of
// VelocityGrid::positive.
struct HalfRangeOperators {
  Matrix diffuse;    // K̄_d
  Matrix bar_k;      // α_d K̄_d + α_s I
  Matrix inv_i_plus; // (I + K̄)^{-1}, closed form
  Matrix combo;      // (I + K̄)^{-1}(I - K̄), closed form
  double inverse_check = 0.0;  // max deviation from the direct inverse
};

HalfRangeOperators build_half_range(const Model& model, const BoundarySpec& spec);

// Values of f at the reflected (negative-mu) nodes, laid out as positive nodes.
Vector reflect_to_positive(const VelocityGrid& g, const Vector& nodal);
Vector restrict_to_positive(const VelocityGrid& g, const Vector& nodal);

// Operator norm of a half-range operator in the mu 1_{mu>0} dσ weighted norm.
double weighted_norm(const VelocityGrid& g, const Matrix& op);
// Weighted inner product ⟨mu f, g⟩ over positive nodes.
double positive_flux_inner(const VelocityGrid& g, const Vector& f, const Vector& h);

// h at positive nodes.
Vector incoming_values(const Model& model, const NullSpaceInfo& nsi,
                       const HalfRangeOperators& ops, const IncomingSpec& spec);

// h = X - K(X restricted to mu < 0) for a nodal function X.
Vector shifted_data(const VelocityGrid& g, const HalfRangeOperators& ops, const Vector& x);

struct PkReport {
  double worst_margin = 0.0;  // max of (outgoing - incoming) energy; <= tol passes
  std::size_t trials = 0;
};

// Checks the reflection energy inequality on random functions for the
// diffuse kernel, pure specular reflection and the configured mixture.
PkReport pk_check(const Model& model, const BoundarySpec& spec, std::size_t trials,
                  std::uint64_t seed);

struct Beta1Report {
  double beta1 = 0.0;
  double worst_margin = 0.0;  // min over trials of ⟨μf,combo f⟩ - β1⟨μf,f⟩
};

Beta1Report beta1_check(const Model& model, const HalfRangeOperators& ops,
                        const BoundarySpec& spec, std::size_t trials, std::uint64_t seed);

}  // namespace hs
