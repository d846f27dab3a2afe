// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#include "quadrature.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace hs {

const char* measure_name(Measure m) {
  switch (m) {
    case Measure::Lebesgue: return "lebesgue";
    case Measure::GaussianHalf: return "gaussian_half";
    case Measure::GaussianFull: return "gaussian_full";
    case Measure::Trapezoid: return "trapezoid_omega";
  }
  return "unknown";
}

double QuadratureRule::total() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

Recurrence stieltjes(const Vector& x, const Vector& w, std::size_t n) {
  if (x.size() != w.size() || n == 0)
    throw Error(ErrorKind::InvalidArgument, "bad Stieltjes input");
  Recurrence rec{Vector(n, 0.0), Vector(n, 0.0)};
  const std::size_t m = x.size();
  double mass = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw Error(ErrorKind::RecurrenceBreakdown, "measure has no mass", mass, 0);
  rec.beta[0] = mass;
  Vector p(m, 1.0 / std::sqrt(mass));
  Vector prev(m, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double a = 0.0;
    for (std::size_t i = 0; i < m; ++i) a += w[i] * x[i] * p[i] * p[i];
    rec.alpha[k] = a;
    if (k + 1 == n) break;
    const double sb = k > 0 ? std::sqrt(rec.beta[k]) : 0.0;
    Vector r(m);
    double b = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      r[i] = (x[i] - a) * p[i] - sb * prev[i];
      b += w[i] * r[i] * r[i];
    }
    if (!(b > 0.0) || !std::isfinite(b))
      throw Error(ErrorKind::RecurrenceBreakdown,
                  "recurrence norm vanished at degree " + std::to_string(k + 1), b,
                  static_cast<long>(k + 1));
    rec.beta[k + 1] = b;
    const double nb = std::sqrt(b);
    for (std::size_t i = 0; i < m; ++i) r[i] /= nb;
    prev.swap(p);
    p.swap(r);
  }
  return rec;
}

QuadratureRule golub_welsch(const Recurrence& rec, std::size_t n, Measure measure,
                            double lower, double upper) {
  if (n == 0 || rec.size() < n)
    throw Error(ErrorKind::InvalidArgument, "recurrence too short for Golub-Welsch");
  Matrix j(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    j(k, k) = rec.alpha[k];
    if (k + 1 < n) j(k, k + 1) = j(k + 1, k) = std::sqrt(rec.beta[k + 1]);
  }
  EigenDecomposition eig = sym_eig(j);
  QuadratureRule rule;
  rule.measure = measure;
  rule.lower = lower;
  rule.upper = upper;
  rule.nodes = eig.values;
  rule.weights.resize(n);
  // Eigenvector weights lose relative accuracy in the tails; polish nodes with
  // Newton on the monic recurrence and take Christoffel weights instead.
  for (std::size_t i = 0; i < n; ++i) {
    double& x = rule.nodes[i];
    const double gap = std::min(i > 0 ? x - eig.values[i - 1] : HUGE_VAL,
                                i + 1 < n ? eig.values[i + 1] - x : HUGE_VAL);
    for (int it = 0; it < 3; ++it) {
      double p0 = 0.0, p1 = 1.0, d0 = 0.0, d1 = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double b = k > 0 ? rec.beta[k] : 0.0;
        const double p2 = (x - rec.alpha[k]) * p1 - b * p0;
        const double d2 = p1 + (x - rec.alpha[k]) * d1 - b * d0;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
      }
      if (d1 == 0.0) break;
      const double step = p1 / d1;
      if (!(std::abs(step) < 0.1 * gap)) break;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    double p0 = 0.0, p1 = 1.0 / std::sqrt(rec.beta[0]), sum = p1 * p1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const double b = k > 0 ? std::sqrt(rec.beta[k]) : 0.0;
      const double p2 = ((x - rec.alpha[k]) * p1 - b * p0) / std::sqrt(rec.beta[k + 1]);
      p0 = p1;
      p1 = p2;
      sum += p1 * p1;
    }
    rule.weights[i] = 1.0 / sum;
  }
  return rule;
}

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0 || !(a < b)) throw Error(ErrorKind::InvalidArgument, "bad Gauss-Legendre request");
  Recurrence rec{Vector(n, 0.5 * (a + b)), Vector(n, 0.0)};
  rec.beta[0] = b - a;
  const double half = 0.5 * (b - a);
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    rec.beta[k] = half * half * kk * kk / (4.0 * kk * kk - 1.0);
  }
  QuadratureRule rule = golub_welsch(rec, n, Measure::Lebesgue, a, b);
  // Symmetrize about the midpoint so mirrored rules are exact mirrors.
  const double mid = 0.5 * (a + b);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const std::size_t r = n - 1 - k;
    const double d = 0.5 * ((rule.nodes[r] - mid) - (rule.nodes[k] - mid));
    const double w = 0.5 * (rule.weights[k] + rule.weights[r]);
    rule.nodes[k] = mid - d;
    rule.nodes[r] = mid + d;
    rule.weights[k] = rule.weights[r] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = mid;
  return rule;
}

QuadratureRule gaussian_discretization(Measure weight, double cutoff, std::size_t panels) {
  if (!(cutoff > 0.0) || panels == 0)
    throw Error(ErrorKind::InvalidArgument, "bad Gaussian discretization request");
  const bool full = weight == Measure::GaussianFull;
  const double lo = full ? -cutoff : 0.0;
  const std::size_t npanel = full ? 2 * panels : panels;
  const double h = (cutoff - lo) / static_cast<double>(npanel);
  const QuadratureRule base = gauss_legendre(20, 0.0, 1.0);
  QuadratureRule fine;
  fine.measure = weight;
  fine.lower = lo;
  fine.upper = cutoff;
  for (std::size_t p = 0; p < npanel; ++p) {
    const double left = lo + h * static_cast<double>(p);
    for (std::size_t i = 0; i < base.size(); ++i) {
      const double x = left + h * base.nodes[i];
      fine.nodes.push_back(x);
      fine.weights.push_back(h * base.weights[i] * std::exp(-0.5 * x * x));
    }
  }
  return fine;
}

QuadratureRule gauss_weighted(std::size_t n, Measure weight, double cutoff,
                              std::size_t panels) {
  if (weight != Measure::GaussianHalf && weight != Measure::GaussianFull)
    throw Error(ErrorKind::InvalidArgument, "gauss_weighted needs a Gaussian weight");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "gauss_weighted needs n >= 1");
  const QuadratureRule fine = gaussian_discretization(weight, cutoff, panels);
  const Recurrence rec = stieltjes(fine.nodes, fine.weights, n);
  QuadratureRule rule = golub_welsch(rec, n, weight, fine.lower, fine.upper);
  if (weight == Measure::GaussianFull) {
    for (std::size_t k = 0; k < n / 2; ++k) {
      const std::size_t r = n - 1 - k;
      const double x = 0.5 * (rule.nodes[r] - rule.nodes[k]);
      const double w = 0.5 * (rule.weights[k] + rule.weights[r]);
      rule.nodes[k] = -x;
      rule.nodes[r] = x;
      rule.weights[k] = rule.weights[r] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

QuadratureRule trapezoid(std::size_t n, double a, double b) {
  if (n < 2 || !(a < b)) throw Error(ErrorKind::InvalidArgument, "bad trapezoid request");
  QuadratureRule rule;
  rule.measure = Measure::Trapezoid;
  rule.lower = a;
  rule.upper = b;
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes.push_back(i + 1 == n ? b : a + h * static_cast<double>(i));
    rule.weights.push_back((i == 0 || i + 1 == n) ? 0.5 * h : h);
  }
  return rule;
}

}  // namespace hs
