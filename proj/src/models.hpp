// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "quadrature.hpp"

namespace hs {

enum class ModelKind { Rte2, Bgk2d, Phonon };

const char* model_name(ModelKind kind);
ModelKind parse_model_name(const std::string& name);

// Discrete velocity grid. Node n = (s * T + t) * M + q where s is the species,
// t the transverse node, and q runs over the symmetric mu rule (mirrored half
// rule, negative nodes first, so node q and M - 1 - q are mirror images).
struct VelocityGrid {
  QuadratureRule half_rule;
  QuadratureRule transverse_rule;  // single node of weight 1 when d = 1
  Vector species_weight;           // c_s
  Vector species_coordinate;       // omega for the phonon model, otherwise 0
  Vector mu_sym;
  Vector w_sym;

  Vector mu;       // per node
  Vector second;   // v_y or omega per node, 0 otherwise
  Vector weight;   // c_s * w_t * w_q
  std::vector<std::size_t> species_of;
  std::vector<std::size_t> transverse_of;
  std::vector<std::size_t> mu_index_of;
  std::vector<std::size_t> positive;  // node indices with mu > 0, in node order

  std::size_t species() const { return species_weight.size(); }
  std::size_t transverse() const { return transverse_rule.size(); }
  std::size_t mu_count() const { return mu_sym.size(); }
  std::size_t size() const { return mu.size(); }
  std::size_t node(std::size_t s, std::size_t t, std::size_t q) const {
    return (s * transverse() + t) * mu_count() + q;
  }
  std::size_t mirror(std::size_t n) const;

  double inner(const Vector& f, const Vector& g) const;
  double norm(const Vector& f) const;
};

VelocityGrid make_grid(const QuadratureRule& half_rule, const QuadratureRule& transverse_rule,
                       const Vector& species_weight, const Vector& species_coordinate);

// Pointwise profile of omega: a named preset or linear interpolation of a table.
struct Profile {
  std::string preset;  // "example431" or empty for tabulated
  std::vector<std::pair<double, double>> table;
  double operator()(double omega, bool is_beta) const;
};

struct PhononParams {
  std::size_t n_omega = 8;
  double omega_min = 1.0;
  double omega_max = 8.0;
  Profile c_over_tau{"example431", {}};
  Profile beta{"example431", {}};
};

class Model {
 public:
  virtual ~Model() = default;

  ModelKind kind() const { return kind_; }
  const char* name() const { return model_name(kind_); }
  std::size_t species() const { return grid_.species(); }
  std::size_t velocity_dim() const { return dim_; }
  const VelocityGrid& grid() const { return grid_; }
  // Column label for the second velocity coordinate ("" when absent).
  virtual const char* second_label() const { return ""; }

  virtual Vector collide(const Vector& f) const = 0;
  virtual std::vector<Vector> declared_null() const = 0;
  virtual std::vector<std::string> declared_labels() const = 0;
  // The analytic preimage L^{-1}(mu x0) for a null mode x0 in H0.
  virtual Vector linv_mu(const Vector& x0) const = 0;
  // Diffuse reflection on positive nodes (grid().positive order).
  virtual Matrix diffuse_matrix() const = 0;

 protected:
  Model(ModelKind kind, std::size_t dim, VelocityGrid grid)
      : kind_(kind), dim_(dim), grid_(std::move(grid)) {}

  Vector mu_times(const Vector& f) const;

 private:
  ModelKind kind_;
  std::size_t dim_;
  VelocityGrid grid_;
};

// Half nodes per mu direction and transverse nodes (0 for d = 1).
struct GridSize {
  std::size_t half_mu = 0;
  std::size_t transverse = 0;
};

GridSize default_grid_size(ModelKind kind, std::size_t n, std::size_t k);

std::unique_ptr<Model> build_rte2(const GridSize& size);
std::unique_ptr<Model> build_bgk2d(const GridSize& size);
std::unique_ptr<Model> build_phonon(const GridSize& size, const PhononParams& params);

struct NullSpaceInfo {
  std::vector<Vector> zero, plus, minus;
  Vector zero_eigs, plus_eigs, minus_eigs;
  std::vector<Vector> linv_mu_zero;
  Vector p1_eigenvalues;  // ascending, in the orthonormalized declared span
  double max_residual = 0.0;
};

NullSpaceInfo null_space(const Model& model);

}  // namespace hs
