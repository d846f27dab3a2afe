// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace hs {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, what);
}

void require_symmetric(const Matrix& a) {
  require(a.rows() == a.cols(), "matrix must be square");
  double scale = max_abs(a);
  if (asymmetry(a) > 1e-12 * scale)
    throw Error(ErrorKind::InvalidArgument, "matrix is not symmetric", asymmetry(a));
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == m.cols(), "ragged rows");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i));
  }
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vector& v) {
  require(v.size() == rows_, "column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "dimension mismatch in multiply");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Matrix multiply_tn(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), "dimension mismatch in multiply_tn");
  Matrix c(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const double* ak = a.row(k);
    const double* bk = b.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      double aki = ak[i];
      if (aki == 0.0) continue;
      double* ci = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aki * bk[j];
    }
  }
  return c;
}

Vector multiply(const Matrix& a, const Vector& x) {
  require(a.cols() == x.size(), "dimension mismatch in matvec");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += ai[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vector multiply_tn(const Matrix& a, const Vector& x) {
  require(a.rows() == x.size(), "dimension mismatch in matvec");
  Vector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += ai[j] * x[i];
  }
  return y;
}

double dot(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), "dimension mismatch in dot");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

double max_abs(const Matrix& a) { return max_abs(a.data()); }

double max_abs(const Vector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double frobenius(const Matrix& a) { return norm2(a.data()); }

double asymmetry(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - a(j, i)));
  return m;
}

Matrix cholesky(const Matrix& a) {
  require_symmetric(a);
  const std::size_t n = a.rows();
  double diag_scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) diag_scale = std::max(diag_scale, std::abs(a(i, i)));
  const double tol = 1e-13 * diag_scale;
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double* lj = l.row(j);
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= lj[k] * lj[k];
    if (!(d > tol))
      throw Error(ErrorKind::NotPositiveDefinite,
                  "matrix is not positive definite at pivot " + std::to_string(j), d,
                  static_cast<long>(j));
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      const double* li = l.row(i);
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
      l(i, j) = s / ljj;
    }
  }
  return l;
}

Vector forward_substitute(const Matrix& l, const Vector& b) {
  const std::size_t n = l.rows();
  require(b.size() == n, "dimension mismatch in forward substitution");
  Vector x(b);
  for (std::size_t i = 0; i < n; ++i) {
    const double* li = l.row(i);
    double s = x[i];
    for (std::size_t k = 0; k < i; ++k) s -= li[k] * x[k];
    x[i] = s / li[i];
  }
  return x;
}

Vector backward_substitute_transposed(const Matrix& l, const Vector& b) {
  const std::size_t n = l.rows();
  require(b.size() == n, "dimension mismatch in back substitution");
  Vector x(b);
  for (std::size_t ii = n; ii-- > 0;) {
    x[ii] /= l(ii, ii);
    const double* li = l.row(ii);
    for (std::size_t k = 0; k < ii; ++k) x[k] -= li[k] * x[ii];
  }
  return x;
}

EigenDecomposition sym_eig(const Matrix& input, int max_sweeps) {
  require_symmetric(input);
  const std::size_t n = input.rows();
  Matrix a(input);
  // Rows of vt are the eigenvectors so rotations touch contiguous memory.
  Matrix vt = Matrix::identity(n);
  const double target = 1e-12 * frobenius(input);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > target) {
    if (sweep == max_sweeps)
      throw Error(ErrorKind::NoConvergence, "Jacobi eigensolver did not converge",
                  off_norm(), sweep);
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        double* rp = a.row(p);
        double* rq = a.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = rp[k];
          const double akq = rq[k];
          rp[k] = c * akp - s * akq;
          rq[k] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          a(k, p) = rp[k];
          a(k, q) = rq[k];
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        double* vp = vt.row(p);
        double* vq = vt.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double x = vp[k];
          const double y = vq[k];
          vp[k] = c * x - s * y;
          vq[k] = s * x + c * y;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  EigenDecomposition out{Vector(n), Matrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.values[j] = a(src, src);
    const double* v = vt.row(src);
    std::size_t big = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (std::abs(v[k]) > std::abs(v[big])) big = k;
    const double sign = v[big] < 0.0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = sign * v[k];
  }
  return out;
}

LuFactorization::LuFactorization(const Matrix& a) : lu_(a), perm_(a.rows()) {
  require(a.rows() == a.cols(), "matrix must be square");
  const std::size_t n = a.rows();
  std::iota(perm_.begin(), perm_.end(), 0);
  const double scale = max_abs(a);
  double min_pivot = scale;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > std::abs(lu_(piv, k))) piv = i;
    const double pv = std::abs(lu_(piv, k));
    min_pivot = std::min(min_pivot, pv);
    if (!(pv >= 1e-14 * scale) || scale == 0.0) {
      const double cond = pv > 0.0 ? scale / pv : INFINITY;
      throw Error(ErrorKind::Singular,
                  "matrix is numerically singular (condition estimate " +
                      std::to_string(cond) + ")",
                  cond, static_cast<long>(k));
    }
    if (piv != k) {
      std::swap_ranges(lu_.row(k), lu_.row(k) + n, lu_.row(piv));
      std::swap(perm_[k], perm_[piv]);
    }
    const double* rk = lu_.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      double* ri = lu_.row(i);
      const double f = ri[k] / rk[k];
      ri[k] = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= f * rk[j];
    }
  }
}

Vector LuFactorization::solve(const Vector& b) const {
  const std::size_t n = lu_.rows();
  require(b.size() == n, "dimension mismatch in LU solve");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    const double* ri = lu_.row(i);
    for (std::size_t k = 0; k < i; ++k) x[i] -= ri[k] * x[k];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    const double* ri = lu_.row(ii);
    for (std::size_t k = ii + 1; k < n; ++k) x[ii] -= ri[k] * x[k];
    x[ii] /= ri[ii];
  }
  return x;
}

Vector solve(const Matrix& a, const Vector& b) { return LuFactorization(a).solve(b); }

LeastSquaresResult least_squares(const Matrix& a, const Vector& b) {
  require(a.rows() >= a.cols(), "least squares needs rows >= cols");
  require(b.size() == a.rows(), "dimension mismatch in least squares");
  const std::size_t n = a.cols();
  Vector scale(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = norm2(a.column(j));
    if (s == 0.0) throw Error(ErrorKind::RankDeficient, "zero column in least squares", 0.0, j);
    scale[j] = 1.0 / s;
  }
  Matrix as(a);
  for (std::size_t i = 0; i < as.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) as(i, j) *= scale[j];
  Matrix normal = multiply_tn(as, as);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) normal(i, j) = normal(j, i);
  Matrix l;
  try {
    l = cholesky(normal);
  } catch (const Error& e) {
    throw Error(ErrorKind::RankDeficient, "least-squares matrix is rank deficient",
                e.value(), e.index());
  }
  auto solve_scaled = [&](const Vector& rhs) {
    Vector y = backward_substitute_transposed(l, forward_substitute(l, multiply_tn(as, rhs)));
    for (std::size_t j = 0; j < n; ++j) y[j] *= scale[j];
    return y;
  };
  auto residual = [&](const Vector& x) {
    Vector r = multiply(a, x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    return r;
  };
  LeastSquaresResult out;
  out.x = solve_scaled(b);
  // Two steps of iterative refinement recover working accuracy in x.
  for (int step = 0; step < 2; ++step) {
    const Vector dx = solve_scaled(residual(out.x));
    for (std::size_t j = 0; j < n; ++j) out.x[j] += dx[j];
  }
  out.residual = norm2(residual(out.x));
  return out;
}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::RecurrenceBreakdown: return "RecurrenceBreakdown";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::NullSpaceResidual: return "NullSpaceResidual";
    case ErrorKind::SingularBoundary: return "SingularBoundary";
    case ErrorKind::PKViolation: return "PKViolation";
    case ErrorKind::CoercivityFailure: return "CoercivityFailure";
    case ErrorKind::CountMismatch: return "CountMismatch";
    case ErrorKind::RecoveryResidual: return "RecoveryResidual";
    case ErrorKind::Io: return "IoError";
  }
  return "Unknown";
}

}  // namespace hs
