// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#include "basis.hpp"

#include <cmath>

#include "errors.hpp"

namespace hs {

Vector orthonormal_values(const Recurrence& rec, std::size_t n, double x) {
  Vector p(n, 0.0);
  if (n == 0) return p;
  p[0] = 1.0 / std::sqrt(rec.beta[0]);
  if (n > 1) p[1] = (x - rec.alpha[0]) * p[0] / std::sqrt(rec.beta[1]);
  for (std::size_t k = 1; k + 1 < n; ++k)
    p[k + 1] = ((x - rec.alpha[k]) * p[k] - std::sqrt(rec.beta[k]) * p[k - 1]) /
               std::sqrt(rec.beta[k + 1]);
  return p;
}

Vector BasisFamily::evaluate(double x) const {
  if (kind == BasisKind::FullLine) return orthonormal_values(recurrence, count, x);
  const std::size_t half = (count + 1) / 2;
  const Vector p = orthonormal_values(recurrence, half, std::abs(x));
  const double sign = x < 0.0 ? -1.0 : 1.0;
  const double scale = 1.0 / std::sqrt(2.0);
  Vector out(count);
  for (std::size_t j = 0; j < count; ++j)
    out[j] = j % 2 == 0 ? sign * scale * p[j / 2] : scale * p[(j - 1) / 2];
  return out;
}

Matrix BasisFamily::evaluate(const Vector& points) const {
  Matrix v(points.size(), count);
  for (std::size_t r = 0; r < points.size(); ++r) {
    const Vector row = evaluate(points[r]);
    for (std::size_t j = 0; j < count; ++j) v(r, j) = row[j];
  }
  return v;
}

BasisFamily build_halfspace_family(std::size_t n, const QuadratureRule& half_rule) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "half-space family needs N >= 1");
  if (half_rule.size() < n + 1)
    throw Error(ErrorKind::InvalidArgument, "half rule has too few nodes for the family");
  BasisFamily f;
  f.kind = BasisKind::HalfspaceExtended;
  f.domain = half_rule.measure;
  f.recurrence = stieltjes(half_rule.nodes, half_rule.weights, n + 1);
  f.count = 2 * n + 1;
  return f;
}

BasisFamily build_full_family(std::size_t k, const QuadratureRule& full_rule) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "full family needs K >= 1");
  if (full_rule.size() < k)
    throw Error(ErrorKind::InvalidArgument, "full rule has too few nodes for the family");
  BasisFamily f;
  f.kind = BasisKind::FullLine;
  f.domain = full_rule.measure;
  f.recurrence = stieltjes(full_rule.nodes, full_rule.weights, k);
  f.count = k;
  return f;
}

std::size_t TensorBasis::flat(std::size_t s, std::size_t t, std::size_t i) const {
  if (s >= species || t >= transverse || i >= mu)
    throw Error(ErrorKind::OutOfRange, "tensor index out of range");
  return (s * transverse + t) * mu + i;
}

void TensorBasis::unflat(std::size_t flat_index, std::size_t& s, std::size_t& t,
                         std::size_t& i) const {
  if (flat_index >= dimension()) throw Error(ErrorKind::OutOfRange, "flat index out of range");
  i = flat_index % mu;
  t = (flat_index / mu) % transverse;
  s = flat_index / (mu * transverse);
}

}  // namespace hs
