// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#include "models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace hs {

const char* model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Rte2: return "rte2";
    case ModelKind::Bgk2d: return "bgk2d";
    case ModelKind::Phonon: return "phonon";
  }
  return "unknown";
}

ModelKind parse_model_name(const std::string& name) {
  if (name == "rte2") return ModelKind::Rte2;
  if (name == "bgk2d") return ModelKind::Bgk2d;
  if (name == "phonon") return ModelKind::Phonon;
  throw Error(ErrorKind::Config, "unknown model '" + name + "'");
}

std::size_t VelocityGrid::mirror(std::size_t n) const {
  const std::size_t m = mu_count();
  const std::size_t q = n % m;
  return n - q + (m - 1 - q);
}

double VelocityGrid::inner(const Vector& f, const Vector& g) const {
  double s = 0.0;
  for (std::size_t n = 0; n < weight.size(); ++n) s += weight[n] * f[n] * g[n];
  return s;
}

double VelocityGrid::norm(const Vector& f) const { return std::sqrt(inner(f, f)); }

VelocityGrid make_grid(const QuadratureRule& half_rule, const QuadratureRule& transverse_rule,
                       const Vector& species_weight, const Vector& species_coordinate) {
  VelocityGrid g;
  g.half_rule = half_rule;
  g.transverse_rule = transverse_rule;
  g.species_weight = species_weight;
  g.species_coordinate = species_coordinate;
  const std::size_t q = half_rule.size();
  for (std::size_t i = 0; i < q; ++i) {
    g.mu_sym.push_back(-half_rule.nodes[q - 1 - i]);
    g.w_sym.push_back(half_rule.weights[q - 1 - i]);
  }
  for (std::size_t i = 0; i < q; ++i) {
    g.mu_sym.push_back(half_rule.nodes[i]);
    g.w_sym.push_back(half_rule.weights[i]);
  }
  const bool has_transverse = transverse_rule.measure != Measure::Lebesgue ||
                              transverse_rule.size() > 1;
  for (std::size_t s = 0; s < species_weight.size(); ++s)
    for (std::size_t t = 0; t < transverse_rule.size(); ++t)
      for (std::size_t k = 0; k < g.mu_sym.size(); ++k) {
        g.mu.push_back(g.mu_sym[k]);
        g.second.push_back(has_transverse ? transverse_rule.nodes[t] : species_coordinate[s]);
        g.weight.push_back(species_weight[s] * transverse_rule.weights[t] * g.w_sym[k]);
        g.species_of.push_back(s);
        g.transverse_of.push_back(t);
        g.mu_index_of.push_back(k);
        if (k >= q) g.positive.push_back(g.mu.size() - 1);
      }
  return g;
}

double Profile::operator()(double omega, bool is_beta) const {
  if (preset == "example431") return is_beta ? 1.0 / omega : omega * std::exp(-omega / 1000.0);
  if (!preset.empty()) throw Error(ErrorKind::Config, "unknown profile preset '" + preset + "'");
  if (table.size() < 2) throw Error(ErrorKind::Config, "tabulated profile needs two or more rows");
  if (omega < table.front().first - 1e-12 || omega > table.back().first + 1e-12)
    throw Error(ErrorKind::Config, "omega outside the tabulated profile range", omega);
  auto hi = std::upper_bound(table.begin(), table.end(), omega,
                             [](double x, const auto& row) { return x < row.first; });
  if (hi == table.end()) return table.back().second;
  if (hi == table.begin()) return table.front().second;
  auto lo = hi - 1;
  const double t = (omega - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

Vector Model::mu_times(const Vector& f) const {
  Vector out(f);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] *= grid_.mu[n];
  return out;
}

GridSize default_grid_size(ModelKind kind, std::size_t n, std::size_t k) {
  GridSize size;
  size.half_mu = 2 * (n + 1) + 8;
  size.transverse = kind == ModelKind::Bgk2d ? 2 * k + 8 : 0;
  return size;
}

namespace {

QuadratureRule single_node() {
  QuadratureRule r;
  r.nodes = {0.0};
  r.weights = {1.0};
  r.measure = Measure::Lebesgue;
  return r;
}

double p2(double mu) { return 1.5 * mu * mu - 0.5; }

// Orthonormalize with two passes of modified Gram-Schmidt.
std::vector<Vector> orthonormalize(const VelocityGrid& g, const std::vector<Vector>& in,
                                   double drop = 1e-10) {
  std::vector<Vector> out;
  for (const Vector& v : in) {
    Vector r(v);
    const double n0 = g.norm(r);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& e : out) {
        const double c = g.inner(e, r);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * e[i];
      }
    const double n1 = g.norm(r);
    if (n1 <= drop * std::max(n0, 1.0)) continue;
    for (double& x : r) x /= n1;
    out.push_back(std::move(r));
  }
  return out;
}

class Rte2 final : public Model {
 public:
  explicit Rte2(VelocityGrid grid) : Model(ModelKind::Rte2, 1, std::move(grid)) {
    const VelocityGrid& g = this->grid();
    const std::size_t n = g.size();
    kernel_ = Matrix(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const double pa = p2(g.mu[a]);
        const double pb = p2(g.mu[b]);
        double sigma = 0.0;
        const std::size_t sa = g.species_of[a];
        const std::size_t sb = g.species_of[b];
        if (sa == 0 && sb == 0) sigma = 0.5 * (1.0 + 0.5 * pa * pb);
        if (sa == 0 && sb == 1) sigma = -0.25 * pa * (1.0 - pb);
        if (sa == 1 && sb == 0) sigma = -0.25 * (1.0 - pa) * pb;
        if (sa == 1 && sb == 1) sigma = 0.25 * (1.0 - pa) * (1.0 - pb);
        kernel_(a, b) = sigma * g.w_sym[g.mu_index_of[b]];
      }
  }

  Vector collide(const Vector& f) const override {
    Vector out = multiply(kernel_, f);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] - out[i];
    return out;
  }

  std::vector<Vector> declared_null() const override {
    Vector x(grid().size(), 0.0);
    for (std::size_t n = 0; n < x.size(); ++n) x[n] = grid().species_of[n] == 0 ? 1.0 : 0.0;
    return {x};
  }

  std::vector<std::string> declared_labels() const override { return {"(1,0)"}; }

  Vector linv_mu(const Vector& x0) const override { return mu_times(x0); }

  Matrix diffuse_matrix() const override {
    const VelocityGrid& g = grid();
    const auto& pos = g.positive;
    Matrix d(pos.size(), pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (g.species_of[pos[i]] != 0) continue;
      for (std::size_t j = 0; j < pos.size(); ++j)
        if (g.species_of[pos[j]] == 0)
          d(i, j) = 2.0 * g.w_sym[g.mu_index_of[pos[j]]] * g.mu[pos[j]];
    }
    return d;
  }

 private:
  Matrix kernel_;
};

class Bgk2d final : public Model {
 public:
  explicit Bgk2d(VelocityGrid grid) : Model(ModelKind::Bgk2d, 2, std::move(grid)) {
    const VelocityGrid& g = this->grid();
    const std::size_t n = g.size();
    Vector one(n, 1.0), vx(g.mu), vy(g.second), e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = g.mu[i] * g.mu[i] + g.second[i] * g.second[i];
    collision_span_ = orthonormalize(g, {one, vx, vy, e});
  }

  const char* second_label() const override { return "v_y"; }

  Vector collide(const Vector& f) const override {
    Vector out(f);
    for (const Vector& e : collision_span_) {
      const double c = grid().inner(e, f);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] -= c * e[i];
    }
    return out;
  }

  std::vector<Vector> declared_null() const override {
    const VelocityGrid& g = grid();
    const std::size_t n = g.size();
    Vector a(n), b(n), c(n), d(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double v2 = g.mu[i] * g.mu[i] + g.second[i] * g.second[i];
      a[i] = v2 - 4.0;
      b[i] = g.second[i];
      c[i] = v2 + 2.0 * g.mu[i];
      d[i] = v2 - 2.0 * g.mu[i];
    }
    return {a, b, c, d};
  }

  std::vector<std::string> declared_labels() const override {
    return {"|v|^2-4", "v_y", "|v|^2+2mu", "|v|^2-2mu"};
  }

  Vector linv_mu(const Vector& x0) const override { return mu_times(x0); }

  Matrix diffuse_matrix() const override {
    const VelocityGrid& g = grid();
    const auto& pos = g.positive;
    const double scale = std::sqrt(2.0 * std::numbers::pi);
    Matrix d(pos.size(), pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i)
      for (std::size_t j = 0; j < pos.size(); ++j)
        d(i, j) = scale * g.weight[pos[j]] * g.mu[pos[j]];
    return d;
  }

  const std::vector<Vector>& collision_span() const { return collision_span_; }

 private:
  std::vector<Vector> collision_span_;
};

class Phonon final : public Model {
 public:
  Phonon(VelocityGrid grid, Vector beta)
      : Model(ModelKind::Phonon, 1, std::move(grid)), beta_(std::move(beta)) {}

  const char* second_label() const override { return "omega"; }

  Vector collide(const Vector& f) const override {
    const VelocityGrid& g = grid();
    double avg = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n)
      avg += g.weight[n] * f[n] / std::sqrt(beta_[g.species_of[n]]);
    Vector out(f.size());
    for (std::size_t n = 0; n < f.size(); ++n) {
      const double b = beta_[g.species_of[n]];
      out[n] = f[n] / b - avg / std::sqrt(b);
    }
    return out;
  }

  std::vector<Vector> declared_null() const override {
    Vector x(grid().size());
    for (std::size_t n = 0; n < x.size(); ++n) x[n] = std::sqrt(beta_[grid().species_of[n]]);
    return {x};
  }

  std::vector<std::string> declared_labels() const override { return {"sqrt(beta)"}; }

  Vector linv_mu(const Vector& x0) const override {
    Vector out = mu_times(x0);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] *= beta_[grid().species_of[n]];
    return out;
  }

  Matrix diffuse_matrix() const override {
    const VelocityGrid& g = grid();
    const auto& pos = g.positive;
    Matrix d(pos.size(), pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i)
      for (std::size_t j = 0; j < pos.size(); ++j)
        if (g.species_of[pos[i]] == g.species_of[pos[j]])
          d(i, j) = 2.0 * g.w_sym[g.mu_index_of[pos[j]]] * g.mu[pos[j]];
    return d;
  }

 private:
  Vector beta_;
};

}  // namespace

std::unique_ptr<Model> build_rte2(const GridSize& size) {
  const QuadratureRule half = gauss_legendre(size.half_mu, 0.0, 1.0);
  return std::make_unique<Rte2>(make_grid(half, single_node(), {1.0, 1.0}, {0.0, 0.0}));
}

std::unique_ptr<Model> build_bgk2d(const GridSize& size) {
  const QuadratureRule half = gauss_weighted(size.half_mu, Measure::GaussianHalf);
  const QuadratureRule full = gauss_weighted(size.transverse, Measure::GaussianFull);
  const double c = 1.0 / (2.0 * std::numbers::pi);
  return std::make_unique<Bgk2d>(make_grid(half, full, {c}, {0.0}));
}

std::unique_ptr<Model> build_phonon(const GridSize& size, const PhononParams& params) {
  if (params.n_omega < 2) throw Error(ErrorKind::Config, "phonon model needs n_omega >= 2");
  if (!(params.omega_min < params.omega_max))
    throw Error(ErrorKind::Config, "phonon omega range is empty");
  const QuadratureRule omega = trapezoid(params.n_omega, params.omega_min, params.omega_max);
  Vector raw(omega.size()), beta(omega.size());
  double theta0 = 0.0;
  for (std::size_t s = 0; s < omega.size(); ++s) {
    const double w = omega.nodes[s];
    beta[s] = params.beta(w, true);
    raw[s] = params.c_over_tau(w, false);
    if (!(beta[s] > 0.0))
      throw Error(ErrorKind::Config, "beta must be positive on the omega grid", beta[s],
                  static_cast<long>(s));
    if (!(raw[s] > 0.0))
      throw Error(ErrorKind::Config, "C/tau must be positive on the omega grid", raw[s],
                  static_cast<long>(s));
    theta0 += 2.0 * omega.weights[s] * raw[s];
  }
  Vector c(omega.size());
  for (std::size_t s = 0; s < omega.size(); ++s) c[s] = omega.weights[s] * raw[s] / theta0;
  const QuadratureRule half = gauss_legendre(size.half_mu, 0.0, 1.0);
  return std::make_unique<Phonon>(make_grid(half, single_node(), c, omega.nodes),
                                  std::move(beta));
}

NullSpaceInfo null_space(const Model& model) {
  const VelocityGrid& g = model.grid();
  const std::vector<Vector> declared = model.declared_null();
  const std::vector<Vector> basis = orthonormalize(g, declared);
  const std::size_t r = basis.size();
  Matrix p1(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      double s = 0.0;
      for (std::size_t n = 0; n < g.size(); ++n)
        s += g.weight[n] * basis[a][n] * g.mu[n] * basis[b][n];
      p1(a, b) = s;
    }
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < a; ++b) p1(a, b) = p1(b, a) = 0.5 * (p1(a, b) + p1(b, a));
  const EigenDecomposition eig = sym_eig(p1);

  NullSpaceInfo info;
  info.p1_eigenvalues = eig.values;

  // Each eigenspace gets the basis obtained by projecting the declared
  // functions onto it in order; this fixes signs and the H0 rotation.
  auto canonical = [&](auto select) {
    std::vector<Vector> space;
    for (std::size_t k = 0; k < r; ++k) {
      if (!select(eig.values[k])) continue;
      Vector v(g.size(), 0.0);
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t n = 0; n < g.size(); ++n) v[n] += eig.vectors(a, k) * basis[a][n];
      space.push_back(std::move(v));
    }
    std::vector<Vector> projected;
    for (const Vector& d : declared) {
      Vector p(g.size(), 0.0);
      for (const Vector& e : space) {
        const double c = g.inner(e, d);
        for (std::size_t n = 0; n < p.size(); ++n) p[n] += c * e[n];
      }
      projected.push_back(std::move(p));
    }
    std::vector<Vector> out = orthonormalize(g, projected, 1e-8);
    if (out.size() != space.size())
      throw Error(ErrorKind::NullSpaceResidual, "declared null functions do not span an eigenspace");
    return out;
  };
  const double tol = 1e-10;
  info.zero = canonical([&](double l) { return std::abs(l) < tol; });
  info.plus = canonical([&](double l) { return l >= tol; });
  info.minus = canonical([&](double l) { return l <= -tol; });

  auto rayleigh = [&](const Vector& x) {
    double s = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) s += g.weight[n] * g.mu[n] * x[n] * x[n];
    return s;
  };
  auto check = [&](double residual, const std::string& what, std::size_t index) {
    info.max_residual = std::max(info.max_residual, residual);
    if (!(residual <= 1e-8))
      throw Error(ErrorKind::NullSpaceResidual, what + " residual too large", residual,
                  static_cast<long>(index));
  };
  std::size_t index = 0;
  for (auto* group : {&info.zero, &info.plus, &info.minus})
    for (const Vector& x : *group) check(g.norm(model.collide(x)), "null mode", index++);
  for (const Vector& x : info.zero) info.zero_eigs.push_back(rayleigh(x));
  for (const Vector& x : info.plus) info.plus_eigs.push_back(rayleigh(x));
  for (const Vector& x : info.minus) info.minus_eigs.push_back(rayleigh(x));
  for (std::size_t i = 0; i < info.zero.size(); ++i)
    for (std::size_t j = 0; j < info.zero.size(); ++j) {
      double s = 0.0;
      for (std::size_t n = 0; n < g.size(); ++n)
        s += g.weight[n] * g.mu[n] * info.zero[i][n] * info.zero[j][n];
      check(std::abs(s), "H0 flux orthogonality", i);
    }
  for (std::size_t i = 0; i < info.zero.size(); ++i) {
    Vector y = model.linv_mu(info.zero[i]);
    Vector ly = model.collide(y);
    for (std::size_t n = 0; n < ly.size(); ++n) ly[n] -= g.mu[n] * info.zero[i][n];
    check(g.norm(ly), "L^{-1}(mu X0)", i);
    info.linv_mu_zero.push_back(std::move(y));
  }
  return info;
}

}  // namespace hs
