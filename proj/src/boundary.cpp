// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#include "boundary.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "errors.hpp"

namespace hs {

std::string IncomingSpec::describe() const {
  auto family = [](Kind k) {
    switch (k) {
      case Kind::Null: return std::string("null");
      case Kind::Plus: return std::string("plus");
      case Kind::Minus: return std::string("minus");
      default: return std::string("?");
    }
  };
  switch (kind) {
    case Kind::Zero: return "zero";
    case Kind::Null:
    case Kind::Plus:
    case Kind::Minus: return family(kind) + ":" + std::to_string(index + 1);
    case Kind::Polynomial: return "polynomial";
    case Kind::Shifted: return "shifted:" + family(shifted_of) + ":" + std::to_string(index + 1);
    case Kind::Table: return "table";
  }
  return "?";
}

void BoundarySpec::validate() const {
  if (!(alpha_d >= 0.0) || !(alpha_s >= 0.0))
    throw Error(ErrorKind::Config, "accommodation coefficients must be nonnegative");
  if (!(alpha_d + alpha_s < 1.0))
    throw Error(ErrorKind::Config, "alpha_d + alpha_s must be below 1", alpha_d + alpha_s);
}

Vector restrict_to_positive(const VelocityGrid& g, const Vector& nodal) {
  Vector out(g.positive.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = nodal[g.positive[i]];
  return out;
}

Vector reflect_to_positive(const VelocityGrid& g, const Vector& nodal) {
  Vector out(g.positive.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = nodal[g.mirror(g.positive[i])];
  return out;
}

double positive_flux_inner(const VelocityGrid& g, const Vector& f, const Vector& h) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.positive.size(); ++i) {
    const std::size_t n = g.positive[i];
    s += g.weight[n] * g.mu[n] * f[i] * h[i];
  }
  return s;
}

double weighted_norm(const VelocityGrid& g, const Matrix& op) {
  const std::size_t p = g.positive.size();
  Vector d(p);
  for (std::size_t i = 0; i < p; ++i) d[i] = std::sqrt(g.weight[g.positive[i]] * g.mu[g.positive[i]]);
  Matrix m(op);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) m(i, j) *= d[i] / d[j];
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  Vector v(p);
  for (double& x : v) x = u(rng);
  double estimate = 0.0;
  for (int it = 0; it < 2000; ++it) {
    const double nv = norm2(v);
    if (nv == 0.0) return 0.0;
    for (double& x : v) x /= nv;
    Vector w = multiply_tn(m, multiply(m, v));
    const double next = std::sqrt(norm2(w));
    const bool done = std::abs(next - estimate) <= 1e-15 * std::max(next, 1e-300);
    estimate = next;
    v.swap(w);
    if (done) break;
  }
  return estimate;
}

HalfRangeOperators build_half_range(const Model& model, const BoundarySpec& spec) {
  spec.validate();
  const VelocityGrid& g = model.grid();
  const std::size_t p = g.positive.size();
  HalfRangeOperators ops;
  ops.diffuse = model.diffuse_matrix();
  const double ad = spec.alpha_d;
  const double as = spec.alpha_s;
  const double gamma = ad / (1.0 + ad + as);
  const double combo_scale = (1.0 - as) / (1.0 + as);
  const double combo_d = 2.0 * ad / ((1.0 - as) * (1.0 + ad + as));
  ops.bar_k = Matrix(p, p);
  ops.inv_i_plus = Matrix(p, p);
  ops.combo = Matrix(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      const double kd = ops.diffuse(i, j);
      const double id = i == j ? 1.0 : 0.0;
      ops.bar_k(i, j) = ad * kd + as * id;
      ops.inv_i_plus(i, j) = (id - gamma * kd) / (1.0 + as);
      ops.combo(i, j) = combo_scale * (id - combo_d * kd);
    }

  Matrix i_plus(ops.bar_k);
  Matrix i_minus(ops.bar_k);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      i_plus(i, j) = (i == j ? 1.0 : 0.0) + ops.bar_k(i, j);
      i_minus(i, j) = (i == j ? 1.0 : 0.0) - ops.bar_k(i, j);
    }
  double dev = 0.0;
  if (p <= 800) {
    const LuFactorization lu(i_plus);
    for (std::size_t j = 0; j < p; ++j) {
      Vector e(p, 0.0);
      e[j] = 1.0;
      const Vector col = lu.solve(e);
      const Vector ccol = lu.solve(i_minus.column(j));
      for (std::size_t i = 0; i < p; ++i) {
        dev = std::max(dev, std::abs(col[i] - ops.inv_i_plus(i, j)));
        dev = std::max(dev, std::abs(ccol[i] - ops.combo(i, j)));
      }
    }
  } else {
    // Probe the closed forms: (I + K̄)·inv·z = z and (I + K̄)·combo·z = (I - K̄)·z.
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int probe = 0; probe < 8; ++probe) {
      Vector z(p);
      for (double& x : z) x = u(rng);
      const Vector a = multiply(i_plus, multiply(ops.inv_i_plus, z));
      const Vector b = multiply(i_plus, multiply(ops.combo, z));
      const Vector c = multiply(i_minus, z);
      for (std::size_t i = 0; i < p; ++i) {
        dev = std::max(dev, std::abs(a[i] - z[i]));
        dev = std::max(dev, std::abs(b[i] - c[i]));
      }
    }
  }
  ops.inverse_check = dev;
  if (!(dev <= 1e-8))
    throw Error(ErrorKind::SingularBoundary,
                "closed-form boundary inverse disagrees with direct inversion", dev);
  return ops;
}

Vector shifted_data(const VelocityGrid& g, const HalfRangeOperators& ops, const Vector& x) {
  Vector h = restrict_to_positive(g, x);
  const Vector k = multiply(ops.bar_k, reflect_to_positive(g, x));
  for (std::size_t i = 0; i < h.size(); ++i) h[i] -= k[i];
  return h;
}

Vector incoming_values(const Model& model, const NullSpaceInfo& nsi,
                       const HalfRangeOperators& ops, const IncomingSpec& spec) {
  using Kind = IncomingSpec::Kind;
  const VelocityGrid& g = model.grid();
  auto mode = [&](Kind family) -> const Vector& {
    const std::vector<Vector>* set = &nsi.zero;
    if (family == Kind::Plus) set = &nsi.plus;
    if (family == Kind::Minus) set = &nsi.minus;
    if (spec.index >= set->size())
      throw Error(ErrorKind::Config, "incoming mode index out of range for this model",
                  0.0, static_cast<long>(spec.index));
    return (*set)[spec.index];
  };
  switch (spec.kind) {
    case Kind::Zero: return Vector(g.positive.size(), 0.0);
    case Kind::Null:
    case Kind::Plus:
    case Kind::Minus: return restrict_to_positive(g, mode(spec.kind));
    case Kind::Shifted: return shifted_data(g, ops, mode(spec.shifted_of));
    case Kind::Polynomial: {
      if (spec.polynomial.empty()) throw Error(ErrorKind::Config, "polynomial data is empty");
      if (spec.polynomial.size() != 1 && spec.polynomial.size() != g.species())
        throw Error(ErrorKind::Config, "polynomial data needs one row or one per species");
      Vector h(g.positive.size());
      for (std::size_t i = 0; i < h.size(); ++i) {
        const std::size_t n = g.positive[i];
        const Vector& c = spec.polynomial.size() == 1 ? spec.polynomial[0]
                                                      : spec.polynomial[g.species_of[n]];
        double v = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) v = v * g.mu[n] + c[k];
        h[i] = v;
      }
      return h;
    }
    case Kind::Table: {
      Vector h(g.positive.size());
      const bool match_second = model.velocity_dim() > 1;
      for (std::size_t i = 0; i < h.size(); ++i) {
        const std::size_t n = g.positive[i];
        auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); };
        auto it = std::find_if(spec.table.begin(), spec.table.end(), [&](const auto& row) {
          return row.species == g.species_of[n] && close(row.mu, g.mu[n]) &&
                 (!match_second || close(row.second, g.second[n]));
        });
        if (it == spec.table.end())
          throw Error(ErrorKind::Config, "incoming table has no value for a positive node", g.mu[n],
                      static_cast<long>(n));
        h[i] = it->value;
      }
      return h;
    }
  }
  return {};
}

namespace {

Vector random_positive(std::mt19937_64& rng, std::size_t p) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector f(p);
  for (double& x : f) x = u(rng);
  return f;
}

}  // namespace

PkReport pk_check(const Model& model, const BoundarySpec& spec, std::size_t trials,
                  std::uint64_t seed) {
  const VelocityGrid& g = model.grid();
  const std::size_t p = g.positive.size();
  const Matrix diffuse = model.diffuse_matrix();
  struct Case {
    double ad, as;
  };
  const Case cases[] = {{1.0, 0.0}, {0.0, 1.0}, {spec.alpha_d, spec.alpha_s}};
  std::mt19937_64 rng(seed);
  PkReport report;
  report.worst_margin = -INFINITY;
  for (std::size_t t = 0; t < trials; ++t) {
    // f lives on mu < 0; its mirror image is a positive-node vector.
    const Vector f = random_positive(rng, p);
    const double incoming = positive_flux_inner(g, f, f);
    for (const Case& c : cases) {
      Vector out = multiply(diffuse, f);
      for (std::size_t i = 0; i < p; ++i) out[i] = c.ad * out[i] + c.as * f[i];
      const double outgoing = positive_flux_inner(g, out, out);
      const double margin = (outgoing - incoming) / incoming;
      report.worst_margin = std::max(report.worst_margin, margin);
      if (margin > 1e-11)
        throw Error(ErrorKind::PKViolation, "reflection increases boundary energy", margin,
                    static_cast<long>(t));
    }
    ++report.trials;
  }
  return report;
}

Beta1Report beta1_check(const Model& model, const HalfRangeOperators& ops,
                        const BoundarySpec& spec, std::size_t trials, std::uint64_t seed) {
  const VelocityGrid& g = model.grid();
  const double ar = spec.alpha_r();
  Beta1Report report;
  report.beta1 = (1.0 - ar * ar) / ((1.0 + ar) * (1.0 + ar));
  report.worst_margin = INFINITY;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Vector f = random_positive(rng, g.positive.size());
    const double scale = std::sqrt(positive_flux_inner(g, f, f));
    for (double& x : f) x /= scale;
    const double form = positive_flux_inner(g, f, multiply(ops.combo, f));
    report.worst_margin = std::min(report.worst_margin, form - report.beta1);
  }
  return report;
}

}  // namespace hs
