// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <memory>

#include "doctest.h"
#include "drivers.hpp"
#include "support.hpp"

using namespace hs;

namespace {

RunConfig rte2_config(std::size_t n, double ad = 0.0, double as = 0.0) {
  RunConfig cfg;
  cfg.model = ModelKind::Rte2;
  cfg.n = n;
  cfg.boundary.alpha_d = ad;
  cfg.boundary.alpha_s = as;
  cfg.boundary.incoming.kind = IncomingSpec::Kind::Polynomial;
  cfg.boundary.incoming.polynomial = {{0, 2}, {0, 1}};
  return cfg;
}

IncomingSpec null_incoming() {
  IncomingSpec s;
  s.kind = IncomingSpec::Kind::Null;
  s.index = 0;
  return s;
}

double flux(const VelocityGrid& g, const Vector& x, const Vector& f) {
  double s = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) s += g.weight[n] * g.mu[n] * x[n] * f[n];
  return s;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("rte2 damping uses mu X0 and mu^2 X0") {
  const auto m = build_rte2(default_grid_size(ModelKind::Rte2, 4, 1));
  const NullSpaceInfo nsi = null_space(*m);
  const Discretization disc = discretize(*m, 4, 1);
  const SpectralSystem sys = assemble(*m, nsi, disc, 0.5);
  const VelocityGrid& g = m->grid();
  Vector a(g.size()), b(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double x0 = g.species_of[n] == 0 ? 1.0 / std::sqrt(2.0) : 0.0;
    a[n] = g.mu[n] * x0;
    b[n] = g.mu[n] * g.mu[n] * x0;
  }
  REQUIRE(sys.damping.size() == 2);
  CHECK(test::max_diff(sys.damping[0], disc.project(a)) <= 1e-14);
  CHECK(test::max_diff(sys.damping[1], disc.project(b)) <= 1e-14);
  CHECK(sys.alpha == 0.5);
  CHECK(sys.halvings == 0);
}

TEST_CASE("undamped operator is only semidefinite") {
  const auto m = build_rte2(default_grid_size(ModelKind::Rte2, 4, 1));
  const NullSpaceInfo nsi = null_space(*m);
  const Discretization disc = discretize(*m, 4, 1);
  CHECK(HS_ERROR_KIND(assemble(*m, nsi, disc, 0.0)) == ErrorKind::CoercivityFailure);
}

TEST_CASE("mode counts follow the parity count") {
  struct Case {
    ModelKind kind;
    std::size_t n, k, per_sign, zero;
  };
  for (const Case c : {Case{ModelKind::Rte2, 4, 1, 8, 2}, Case{ModelKind::Rte2, 16, 1, 32, 2},
                       Case{ModelKind::Bgk2d, 8, 8, 64, 8}, Case{ModelKind::Phonon, 15, 1, 120, 8}}) {
    CAPTURE(model_name(c.kind));
    CAPTURE(c.n);
    RunConfig cfg;
    cfg.model = c.kind;
    cfg.n = c.n;
    cfg.k = c.k;
    const auto p = build_problem(cfg);
    CHECK(p->sys.n_neg == c.per_sign);
    CHECK(p->sys.n_pos == c.per_sign);
    CHECK(p->sys.n_zero == c.zero);
    CHECK(p->sys.decaying.cols() == c.per_sign);
    CHECK(p->sys.halvings == 0);
    CHECK(p->sys.pencil_residual <= 1e-8);
    for (double lam : p->sys.decaying_lambda) CHECK(lam < 0.0);
    // A wrong expectation is reported, not absorbed.
    SpectralSystem copy = p->sys;
    CHECK(HS_ERROR_KIND(decaying_modes(copy, c.per_sign + 1, c.zero)) == ErrorKind::CountMismatch);
  }
}

TEST_CASE("rte2 boundary rows and right-hand side") {
  const auto p = build_problem(rte2_config(16));
  CHECK(p->bc.rows.rows() == 32);
  CHECK(p->bc.system.rows() == 32);
  CHECK(p->bc.system.cols() == 32);

  // With no reflection the rhs of row r is 2⟨mu X0, psi_even(r)⟩ over mu > 0.
  const VelocityGrid& g = p->model->grid();
  const Vector& x0 = p->nsi.zero[0];
  const Vector h = restrict_to_positive(g, x0);
  const Vector rhs = multiply(p->bc.rhs_map, multiply(p->ops.inv_i_plus, h));
  std::size_t r = 0;
  for (std::size_t a = 0; a < p->disc.dimension(); ++a) {
    if (!p->disc.even_in_mu(a)) continue;
    double expected = 0.0;
    for (std::size_t n : g.positive) expected += 2.0 * g.weight[n] * g.mu[n] * x0[n] * p->disc.values(n, a);
    CHECK(std::abs(rhs[r] / p->bc.row_scale[r] - expected) <= 1e-13);
    ++r;
  }
  CHECK(r == 32);
}

TEST_CASE("zero data gives the zero solution") {
  RunConfig cfg = rte2_config(8);
  cfg.boundary.incoming = IncomingSpec{};
  const auto p = build_problem(cfg);
  const Solution s = solve(*p);
  CHECK(max_abs(s.rec.f.coeffs) == 0.0);
  CHECK(max_abs(s.rec.coefficients) == 0.0);
  CHECK(max_abs(s.rec.eta_nodal(p->disc, p->sys, 0.0)) == 0.0);
}

TEST_CASE("rte2 equilibrium data is reproduced exactly") {
  const auto p = build_problem(rte2_config(16));
  const Solution s = solve(*p, null_incoming());
  REQUIRE(s.rec.coefficients.size() == 1);
  CHECK(s.rec.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
  const Vector& x0 = p->nsi.zero[0];
  for (double x : {0.0, 0.1, 1.0, 10.0})
    CHECK(test::max_diff(s.rec.eta_nodal(p->disc, p->sys, x), x0) <= 1e-12);
}

TEST_CASE("rte2 recovery constant is a flux ratio") {
  const auto p = build_problem(rte2_config(16));
  const Solution s = solve(*p);
  const VelocityGrid& g = p->model->grid();
  const Vector f0 = p->disc.synthesize(s.rec.f.galerkin(p->sys, 0.0));
  const Vector g0 = p->disc.synthesize(s.rec.g[0].galerkin(p->sys, 0.0));
  const Vector& x0 = p->nsi.zero[0];
  CHECK(s.rec.coefficients[0] == doctest::Approx(flux(g, x0, f0) / flux(g, x0, g0)).epsilon(1e-10));
}

TEST_CASE("damped and recovered solutions in x") {
  const auto p = build_problem(rte2_config(16, 0.3, 0.4));
  const Solution s = solve(*p);
  const SpectralSystem& sys = p->sys;
  CHECK(test::max_diff(s.rec.f.galerkin(sys, 0.0), multiply(sys.decaying, s.rec.f.coeffs)) <= 1e-15);

  const double far = 50.0 / std::abs(sys.lambda_max());
  CHECK(max_abs(p->disc.synthesize(s.rec.f.galerkin(sys, far))) <= 1e-8);
  CHECK(test::max_diff(s.rec.eta_nodal(p->disc, sys, far), s.rec.end_state) <= 1e-6);

  const VelocityGrid& g = p->model->grid();
  const Vector& x0 = p->nsi.zero[0];
  const double at0 = flux(g, x0, s.rec.eta_nodal(p->disc, sys, 0.0));
  for (double x : default_x_grid(sys))
    CHECK(std::abs(flux(g, x0, s.rec.eta_nodal(p->disc, sys, x)) - at0) <= 1e-8);
}

TEST_CASE("recovered solution does not depend on the damping strength") {
  RunConfig a = rte2_config(16, 0.3, 0.4);
  RunConfig b = a;
  b.alpha = a.alpha / 2;
  const auto pa = build_problem(a);
  const auto pb = build_problem(b);
  const Solution sa = solve(*pa);
  const Solution sb = solve(*pb);
  for (double x : default_x_grid(pa->sys))
    CHECK(test::max_diff(sa.rec.eta_nodal(pa->disc, pa->sys, x), sb.rec.eta_nodal(pb->disc, pb->sys, x)) <=
          1e-7);
}

TEST_CASE("phonon equilibrium reproduction with reflection") {
  RunConfig cfg;
  cfg.model = ModelKind::Phonon;
  cfg.n = 8;
  cfg.boundary.alpha_d = 0.3;
  cfg.boundary.alpha_s = 0.4;
  const auto p = build_problem(cfg);
  CHECK(reproduction_error(*p, p->nsi.zero[0], default_x_grid(p->sys)) <= 1e-6);
}

TEST_CASE("default x grid") {
  const auto p = build_problem(rte2_config(4));
  const Vector xs = default_x_grid(p->sys);
  REQUIRE(xs.size() == 61);
  CHECK(xs[0] == 0.0);
  CHECK(xs.back() == doctest::Approx(10.0 / std::abs(p->sys.lambda_max())));
  for (std::size_t i = 2; i < xs.size(); ++i)
    CHECK(xs[i] / xs[i - 1] == doctest::Approx(xs[2] / xs[1]));
}

}  // TEST_SUITE
