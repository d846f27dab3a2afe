// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace hs {

namespace {

QuadratureRule unit_node() {
  QuadratureRule r;
  r.nodes = {0.0};
  r.weights = {1.0};
  return r;
}

// Solves L X = B for lower-triangular L, one row of X at a time.
Matrix forward_substitute(const Matrix& l, const Matrix& b) {
  const std::size_t n = l.rows();
  Matrix x(b);
  for (std::size_t i = 0; i < n; ++i) {
    double* xi = x.row(i);
    const double* li = l.row(i);
    for (std::size_t k = 0; k < i; ++k) {
      const double lik = li[k];
      if (lik == 0.0) continue;
      const double* xk = x.row(k);
      for (std::size_t j = 0; j < x.cols(); ++j) xi[j] -= lik * xk[j];
    }
    for (std::size_t j = 0; j < x.cols(); ++j) xi[j] /= li[i];
  }
  return x;
}

}  // namespace

bool Discretization::even_in_mu(std::size_t flat) const {
  return mu_family.is_even(flat % tensor.mu);
}

Vector Discretization::evaluate(double mu, double second, std::size_t species,
                                const VelocityGrid& g) const {
  const Vector psi = mu_family.evaluate(mu);
  const Vector phi = tensor.transverse > 1 ? transverse_family.evaluate(second)
                                           : transverse_family.evaluate(0.0);
  Vector out(dimension(), 0.0);
  const double scale = 1.0 / std::sqrt(g.species_weight[species]);
  for (std::size_t t = 0; t < tensor.transverse; ++t)
    for (std::size_t i = 0; i < tensor.mu; ++i)
      out[tensor.flat(species, t, i)] = scale * phi[t] * psi[i];
  return out;
}

Discretization discretize(const Model& model, std::size_t n, std::size_t k) {
  const VelocityGrid& g = model.grid();
  Discretization d;
  d.mu_family = build_halfspace_family(n, g.half_rule);
  const bool has_transverse = model.velocity_dim() > 1;
  d.transverse_family = build_full_family(has_transverse ? k : 1,
                                          has_transverse ? g.transverse_rule : unit_node());
  d.tensor = TensorBasis{g.species(), d.transverse_family.count, d.mu_family.count};
  const Matrix psi = d.mu_family.evaluate(g.mu_sym);
  const Matrix phi = has_transverse ? d.transverse_family.evaluate(g.transverse_rule.nodes)
                                    : Matrix(1, 1, 1.0);
  d.values = Matrix(g.size(), d.dimension());
  for (std::size_t node = 0; node < g.size(); ++node) {
    const std::size_t s = g.species_of[node];
    const std::size_t tn = g.transverse_of[node];
    const std::size_t q = g.mu_index_of[node];
    const double scale = 1.0 / std::sqrt(g.species_weight[s]);
    for (std::size_t t = 0; t < d.tensor.transverse; ++t)
      for (std::size_t i = 0; i < d.tensor.mu; ++i)
        d.values(node, d.tensor.flat(s, t, i)) = scale * phi(tn, t) * psi(q, i);
  }
  d.weighted = transpose(d.values);
  for (std::size_t a = 0; a < d.weighted.rows(); ++a) {
    double* r = d.weighted.row(a);
    for (std::size_t node = 0; node < g.size(); ++node) r[node] *= g.weight[node];
  }
  return d;
}

double SpectralSystem::lambda_max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double l : decaying_lambda) m = std::max(m, l);
  return m;
}

std::vector<Vector> average_functionals(const Model& model, const NullSpaceInfo& nsi,
                                        const Discretization& disc) {
  const VelocityGrid& g = model.grid();
  std::vector<Vector> out;
  auto add = [&](const Vector& y) {
    Vector my(y);
    for (std::size_t n = 0; n < my.size(); ++n) my[n] *= g.mu[n];
    out.push_back(disc.project(my));
  };
  for (const Vector& x : nsi.plus) add(x);
  for (const Vector& x : nsi.minus) add(x);
  for (const Vector& x : nsi.zero) add(x);
  for (const Vector& y : nsi.linv_mu_zero) add(y);
  return out;
}

SpectralSystem assemble(const Model& model, const NullSpaceInfo& nsi, const Discretization& disc,
                        double alpha) {
  if (!(alpha >= 0.0)) throw Error(ErrorKind::InvalidArgument, "damping must be nonnegative");
  const VelocityGrid& g = model.grid();
  const std::size_t dim = disc.dimension();
  const TensorBasis& tb = disc.tensor;

  SpectralSystem sys;
  sys.alpha_requested = alpha;

  const Matrix psi = disc.mu_family.evaluate(g.mu_sym);
  Matrix amu(tb.mu, tb.mu);
  for (std::size_t i = 0; i < tb.mu; ++i)
    for (std::size_t j = 0; j < tb.mu; ++j) {
      if ((i % 2) == (j % 2)) continue;
      double s = 0.0;
      for (std::size_t q = 0; q < g.mu_count(); ++q) s += g.w_sym[q] * g.mu_sym[q] * psi(q, i) * psi(q, j);
      amu(i, j) = s;
    }
  for (std::size_t i = 0; i < tb.mu; ++i)
    for (std::size_t j = 0; j < i; ++j) amu(i, j) = amu(j, i) = 0.5 * (amu(i, j) + amu(j, i));
  sys.a = Matrix(dim, dim);
  for (std::size_t s = 0; s < tb.species; ++s)
    for (std::size_t t = 0; t < tb.transverse; ++t)
      for (std::size_t i = 0; i < tb.mu; ++i)
        for (std::size_t j = 0; j < tb.mu; ++j) sys.a(tb.flat(s, t, i), tb.flat(s, t, j)) = amu(i, j);

  Matrix lv(g.size(), dim);
  for (std::size_t j = 0; j < dim; ++j) lv.set_column(j, model.collide(disc.values.column(j)));
  Matrix c = multiply(disc.weighted, lv);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < i; ++j) c(i, j) = c(j, i) = 0.5 * (c(i, j) + c(j, i));

  sys.damping = average_functionals(model, nsi, disc);

  double a = alpha;
  for (int attempt = 0;; ++attempt) {
    Matrix neg_b(c);
    for (const Vector& u : sys.damping)
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) neg_b(i, j) += a * u[i] * u[j];
    try {
      sys.factor = cholesky(neg_b);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotPositiveDefinite) throw;
      if (attempt == 6)
        throw Error(ErrorKind::CoercivityFailure,
                    "damped operator is not coercive (Cholesky of -B failed at pivot " +
                        std::to_string(e.index()) + ")",
                    a, e.index());
      a *= 0.5;
      continue;
    }
    sys.alpha = a;
    sys.halvings = attempt;
    sys.b = neg_b;
    for (double& x : sys.b.data()) x = -x;
    break;
  }
  return sys;
}

void decaying_modes(SpectralSystem& sys, std::size_t expected_per_sign, std::size_t expected_zero) {
  const std::size_t dim = sys.a.rows();
  const Matrix& l = sys.factor;
  // T = L^{-1} A L^{-T}; A is symmetric so L^{-1}(L^{-1} A)^T = T.
  Matrix t = forward_substitute(l, transpose(forward_substitute(l, sys.a)));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < i; ++j) t(i, j) = t(j, i) = 0.5 * (t(i, j) + t(j, i));
  const EigenDecomposition eig = sym_eig(t);
  sys.theta = eig.values;
  const double tol = 1e-12 * max_abs(eig.values);
  sys.classification.clear();
  sys.lambda.clear();
  sys.decaying_lambda.clear();
  sys.n_pos = sys.n_neg = sys.n_zero = 0;
  std::vector<std::size_t> decaying;
  for (std::size_t k = 0; k < dim; ++k) {
    const double th = eig.values[k];
    if (th > tol) {
      sys.classification.push_back("decaying");
      sys.lambda.push_back(-1.0 / th);
      ++sys.n_neg;
      decaying.push_back(k);
    } else if (th < -tol) {
      sys.classification.push_back("growing");
      sys.lambda.push_back(-1.0 / th);
      ++sys.n_pos;
    } else {
      sys.classification.push_back("degenerate");
      sys.lambda.push_back(std::numeric_limits<double>::infinity());
      ++sys.n_zero;
    }
  }
  auto mismatch = [](const char* what, std::size_t found, std::size_t expected) {
    throw Error(ErrorKind::CountMismatch,
                std::string(what) + " mode count " + std::to_string(found) + " differs from " +
                    std::to_string(expected),
                static_cast<double>(expected), static_cast<long>(found));
  };
  if (sys.n_neg != expected_per_sign) mismatch("decaying", sys.n_neg, expected_per_sign);
  if (sys.n_pos != expected_per_sign) mismatch("growing", sys.n_pos, expected_per_sign);
  if (sys.n_zero != expected_zero) mismatch("degenerate", sys.n_zero, expected_zero);

  sys.decaying = Matrix(dim, decaying.size());
  sys.pencil_residual = 0.0;
  for (std::size_t j = 0; j < decaying.size(); ++j) {
    const std::size_t k = decaying[j];
    const Vector v = backward_substitute_transposed(l, eig.vectors.column(k));
    sys.decaying.set_column(j, v);
    const double lam = sys.lambda[k];
    sys.decaying_lambda.push_back(lam);
    Vector bv = multiply(sys.b, v);
    const Vector av = multiply(sys.a, v);
    const double nb = norm2(bv);
    for (std::size_t i = 0; i < dim; ++i) bv[i] -= lam * av[i];
    sys.pencil_residual = std::max(sys.pencil_residual, norm2(bv) / nb);
  }
}

BoundarySystem assemble_bc(const Model& model, const Discretization& disc,
                           const SpectralSystem& sys, const HalfRangeOperators& ops) {
  const VelocityGrid& g = model.grid();
  const std::size_t dim = disc.dimension();
  const std::size_t p = g.positive.size();
  std::vector<std::size_t> even;
  for (std::size_t a = 0; a < dim; ++a)
    if (disc.even_in_mu(a)) even.push_back(a);
  const std::size_t ne = even.size();

  Matrix gmat(ne, p);
  for (std::size_t r = 0; r < ne; ++r)
    for (std::size_t i = 0; i < p; ++i) {
      const std::size_t n = g.positive[i];
      gmat(r, i) = 2.0 * g.weight[n] * g.mu[n] * disc.values(n, even[r]);
    }
  Matrix vp(p, ne);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t c = 0; c < ne; ++c) vp(i, c) = disc.values(g.positive[i], even[c]);
  const Matrix reflected = multiply(multiply(gmat, ops.combo), vp);

  BoundarySystem bc;
  bc.rows = Matrix(ne, dim);
  bc.row_scale = Vector(ne);
  bc.rhs_map = gmat;
  for (std::size_t r = 0; r < ne; ++r) {
    double* row = bc.rows.row(r);
    std::copy(sys.a.row(even[r]), sys.a.row(even[r]) + dim, row);
    for (std::size_t c = 0; c < ne; ++c) row[even[c]] += reflected(r, c);
    double m = 0.0;
    for (std::size_t j = 0; j < dim; ++j) m = std::max(m, std::abs(row[j]));
    const double scale = m > 0.0 ? 1.0 / m : 1.0;
    bc.row_scale[r] = scale;
    for (std::size_t j = 0; j < dim; ++j) row[j] *= scale;
    double* rr = bc.rhs_map.row(r);
    for (std::size_t i = 0; i < p; ++i) rr[i] *= scale;
  }
  if (ne != sys.decaying.cols())
    throw Error(ErrorKind::CountMismatch, "boundary rows do not match decaying modes",
                static_cast<double>(sys.decaying.cols()), static_cast<long>(ne));
  bc.system = multiply(bc.rows, sys.decaying);
  bc.lu.emplace(bc.system);
  return bc;
}

Vector DampedSolution::galerkin(const SpectralSystem& sys, double x) const {
  Vector w(coeffs.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = coeffs[j] * std::exp(sys.decaying_lambda[j] * x);
  return multiply(sys.decaying, w);
}

DampedSolution solve_damped(const SpectralSystem& sys, const BoundarySystem& bc,
                            const HalfRangeOperators& ops, const Vector& h) {
  (void)sys;
  const Vector rhs = multiply(bc.rhs_map, multiply(ops.inv_i_plus, h));
  DampedSolution out;
  out.coeffs = bc.lu->solve(rhs);
  Vector r = multiply(bc.system, out.coeffs);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= rhs[i];
  const double nr = norm2(rhs);
  out.residual = nr > 0.0 ? norm2(r) / nr : norm2(r);
  return out;
}

Vector RecoveredSolution::eta(const SpectralSystem& sys, double x) const {
  Vector out = f.galerkin(sys, x);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const Vector gj = g[j].galerkin(sys, x);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= coefficients[j] * gj[i];
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += end_galerkin[i];
  return out;
}

Vector RecoveredSolution::eta_nodal(const Discretization& disc, const SpectralSystem& sys,
                                   double x) const {
  Vector coeffs = f.galerkin(sys, x);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const Vector gj = g[j].galerkin(sys, x);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= coefficients[j] * gj[i];
  }
  Vector out = disc.synthesize(coeffs);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] += end_state[n];
  return out;
}

RecoveredSolution recover(const Model& model, const NullSpaceInfo& nsi,
                          const Discretization& disc, const SpectralSystem& sys,
                          const BoundarySystem& bc, const HalfRangeOperators& ops,
                          const DampedSolution& f) {
  const VelocityGrid& g = model.grid();
  RecoveredSolution out;
  out.f = f;
  for (std::size_t i = 0; i < nsi.zero.size(); ++i) {
    out.labels.push_back("null:" + std::to_string(i + 1));
    out.modes.push_back(nsi.zero[i]);
  }
  for (std::size_t j = 0; j < nsi.plus.size(); ++j) {
    out.labels.push_back("plus:" + std::to_string(j + 1));
    out.modes.push_back(nsi.plus[j]);
  }
  for (const Vector& x : out.modes)
    out.g.push_back(solve_damped(sys, bc, ops, shifted_data(g, ops, x)));

  const std::vector<Vector> avg = average_functionals(model, nsi, disc);
  const Vector af = f.galerkin(sys, 0.0);
  Vector uf(avg.size());
  for (std::size_t r = 0; r < avg.size(); ++r) uf[r] = dot(avg[r], af);
  out.end_state = Vector(g.size(), 0.0);
  out.coefficients = Vector(out.modes.size(), 0.0);
  if (!out.modes.empty()) {
    Matrix cm(avg.size(), out.modes.size());
    for (std::size_t j = 0; j < out.modes.size(); ++j) {
      const Vector ag = out.g[j].galerkin(sys, 0.0);
      for (std::size_t r = 0; r < avg.size(); ++r) cm(r, j) = dot(avg[r], ag);
    }
    const LeastSquaresResult ls = least_squares(cm, uf);
    out.coefficients = ls.x;
    out.residual = ls.residual;
  }
  out.residual_bound = 1e-8 * (1.0 + norm2(uf));
  if (!(out.residual <= out.residual_bound))
    throw Error(ErrorKind::RecoveryResidual, "recovery constraints are inconsistent",
                out.residual);
  for (std::size_t j = 0; j < out.modes.size(); ++j)
    for (std::size_t n = 0; n < g.size(); ++n) out.end_state[n] += out.coefficients[j] * out.modes[j][n];
  out.end_galerkin = disc.project(out.end_state);
  return out;
}

}  // namespace hs
