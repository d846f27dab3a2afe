// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#include "drivers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace hs {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::unique_ptr<Model> build_model(const RunConfig& cfg) {
  const GridSize size = default_grid_size(cfg.model, cfg.n, cfg.k);
  switch (cfg.model) {
    case ModelKind::Rte2: return build_rte2(size);
    case ModelKind::Bgk2d: return build_bgk2d(size);
    case ModelKind::Phonon: return build_phonon(size, cfg.phonon);
  }
  throw Error(ErrorKind::Config, "unknown model");
}

std::unique_ptr<Problem> build_problem(const RunConfig& cfg) {
  cfg.validate();
  auto p = std::make_unique<Problem>();
  p->cfg = cfg;
  p->model = build_model(cfg);
  p->nsi = null_space(*p->model);
  p->disc = discretize(*p->model, cfg.n, cfg.transverse_count());
  p->sys = assemble(*p->model, p->nsi, p->disc, cfg.alpha);
  const std::size_t per_sign = p->model->species() * cfg.n * cfg.transverse_count();
  decaying_modes(p->sys, per_sign, p->model->species() * cfg.transverse_count());
  p->ops = build_half_range(*p->model, cfg.boundary);
  p->bc = assemble_bc(*p->model, p->disc, p->sys, p->ops);
  return p;
}

Solution solve(const Problem& p, const IncomingSpec& incoming) {
  Solution s;
  s.h = incoming_values(*p.model, p.nsi, p.ops, incoming);
  const DampedSolution f = solve_damped(p.sys, p.bc, p.ops, s.h);
  s.rec = recover(*p.model, p.nsi, p.disc, p.sys, p.bc, p.ops, f);
  return s;
}

Solution solve(const Problem& p) { return solve(p, p.cfg.boundary.incoming); }

Vector default_x_grid(const SpectralSystem& sys) {
  const double x_max = 10.0 / std::abs(sys.lambda_max());
  Vector xs{0.0};
  const double x_min = 1e-3 * x_max;
  for (int i = 0; i < 60; ++i)
    xs.push_back(x_min * std::pow(x_max / x_min, static_cast<double>(i) / 59.0));
  xs.back() = x_max;
  return xs;
}

Vector x_grid_for(const Problem& p) {
  return p.cfg.x_grid.empty() ? default_x_grid(p.sys) : p.cfg.x_grid;
}

double reproduction_error(const Problem& p, const Vector& x_mode, const Vector& xs) {
  const Vector h = shifted_data(p.model->grid(), p.ops, x_mode);
  const DampedSolution f = solve_damped(p.sys, p.bc, p.ops, h);
  const RecoveredSolution rec = recover(*p.model, p.nsi, p.disc, p.sys, p.bc, p.ops, f);
  double err = 0.0;
  for (double x : xs) {
    const Vector eta = rec.eta_nodal(p.disc, p.sys, x);
    for (std::size_t n = 0; n < eta.size(); ++n) err = std::max(err, std::abs(eta[n] - x_mode[n]));
  }
  return err;
}

void OutputSet::write(const std::string& dir) const {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create output directory '" + dir + "': " + ec.message());
  std::vector<std::pair<fs::path, fs::path>> staged;
  auto cleanup = [&] {
    for (const auto& s : staged) fs::remove(s.first, ec);
  };
  for (const auto& [name, content] : files_) {
    const fs::path target = fs::path(dir) / name;
    const fs::path temp = fs::path(dir) / ("." + name + ".tmp");
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    staged.emplace_back(temp, target);
    if (!out) {
      cleanup();
      throw Error(ErrorKind::Io, "cannot write '" + temp.string() + "'");
    }
  }
  for (const auto& [temp, target] : staged) {
    fs::rename(temp, target, ec);
    if (ec) {
      cleanup();
      throw Error(ErrorKind::Io, "cannot rename into '" + target.string() + "': " + ec.message());
    }
  }
}

namespace {

using nlohmann::json;

std::string node_header(const Model& m) {
  std::string h = "mu";
  if (*m.second_label()) h += std::string(",") + m.second_label();
  return h + ",species";
}

std::string node_columns(const Model& m, std::size_t n) {
  const VelocityGrid& g = m.grid();
  std::string s = format_number(g.mu[n]);
  if (*m.second_label()) s += "," + format_number(g.second[n]);
  return s + "," + std::to_string(g.species_of[n]);
}

json counts_json(const SpectralSystem& sys) {
  return json{{"decaying", sys.n_neg}, {"growing", sys.n_pos}, {"degenerate", sys.n_zero}};
}

double flux(const VelocityGrid& g, const Vector& x, const Vector& f) {
  double s = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) s += g.weight[n] * g.mu[n] * x[n] * f[n];
  return s;
}

std::vector<std::pair<std::string, const Vector*>> all_null_modes(const NullSpaceInfo& nsi) {
  std::vector<std::pair<std::string, const Vector*>> out;
  for (std::size_t i = 0; i < nsi.zero.size(); ++i) out.emplace_back("null:" + std::to_string(i + 1), &nsi.zero[i]);
  for (std::size_t i = 0; i < nsi.plus.size(); ++i) out.emplace_back("plus:" + std::to_string(i + 1), &nsi.plus[i]);
  for (std::size_t i = 0; i < nsi.minus.size(); ++i) out.emplace_back("minus:" + std::to_string(i + 1), &nsi.minus[i]);
  return out;
}

// Max over null modes X and x of |<mu X, eta(x)> - <mu X, eta(0)>|.
double flux_drift(const Problem& p, const RecoveredSolution& rec, const Vector& xs,
                  json* report = nullptr) {
  const VelocityGrid& g = p.model->grid();
  std::vector<Vector> etas;
  for (double x : xs) etas.push_back(rec.eta_nodal(p.disc, p.sys, x));
  double drift = 0.0;
  for (const auto& [label, mode] : all_null_modes(p.nsi)) {
    const double f0 = flux(g, *mode, etas.front());
    double lo = f0, hi = f0;
    for (const Vector& e : etas) {
      const double f = flux(g, *mode, e);
      lo = std::min(lo, f);
      hi = std::max(hi, f);
      drift = std::max(drift, std::abs(f - f0));
    }
    if (report) (*report)[label] = json{{"at_0", f0}, {"min", lo}, {"max", hi}};
  }
  return drift;
}

}  // namespace

OutputSet cmd_solve(const RunConfig& cfg) {
  const auto p = build_problem(cfg);
  const Solution s = solve(*p);
  const Model& m = *p->model;
  const VelocityGrid& g = m.grid();
  const Vector xs = x_grid_for(*p);

  std::string sol = "x," + node_header(m) + ",f_damped,f_recovered\n";
  std::string slice = node_header(m) + ",h,f_damped,f_recovered\n";
  for (double x : xs) {
    const Vector damped = p->disc.synthesize(s.rec.damped(p->sys, x));
    const Vector eta = s.rec.eta_nodal(p->disc, p->sys, x);
    for (std::size_t n = 0; n < g.size(); ++n)
      sol += format_number(x) + "," + node_columns(m, n) + "," + format_number(damped[n]) + "," +
             format_number(eta[n]) + "\n";
  }
  {
    const Vector damped = p->disc.synthesize(s.rec.damped(p->sys, 0.0));
    const Vector eta = s.rec.eta_nodal(p->disc, p->sys, 0.0);
    Vector h_nodal(g.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < g.positive.size(); ++i) h_nodal[g.positive[i]] = s.h[i];
    for (std::size_t n = 0; n < g.size(); ++n)
      slice += node_columns(m, n) + "," + (std::isnan(h_nodal[n]) ? "" : format_number(h_nodal[n])) +
               "," + format_number(damped[n]) + "," + format_number(eta[n]) + "\n";
  }
  std::string end = "mode,coefficient\n";
  for (std::size_t j = 0; j < s.rec.labels.size(); ++j)
    end += s.rec.labels[j] + "," + format_number(s.rec.coefficients[j]) + "\n";

  json fluxes;
  const double drift = flux_drift(*p, s.rec, xs, &fluxes);
  std::vector<double> g_res;
  for (const auto& gj : s.rec.g) g_res.push_back(gj.residual);
  json diag = {
      {"model", m.name()},
      {"N", cfg.n},
      {"K", cfg.transverse_count()},
      {"species", m.species()},
      {"dimension", p->disc.dimension()},
      {"nodes", g.size()},
      {"alpha_requested", p->sys.alpha_requested},
      {"alpha_used", p->sys.alpha},
      {"alpha_halvings", p->sys.halvings},
      {"boundary", {{"alpha_d", cfg.boundary.alpha_d}, {"alpha_s", cfg.boundary.alpha_s},
                    {"incoming", cfg.boundary.incoming.describe()},
                    {"inverse_check", p->ops.inverse_check}}},
      {"counts", counts_json(p->sys)},
      {"lambda_max", p->sys.lambda_max()},
      {"pencil_residual", p->sys.pencil_residual},
      {"null_space", {{"p1_eigenvalues", p->nsi.p1_eigenvalues},
                      {"max_residual", p->nsi.max_residual},
                      {"nu0", p->nsi.zero.size()}, {"nu_plus", p->nsi.plus.size()},
                      {"nu_minus", p->nsi.minus.size()}}},
      {"bc_residual", s.rec.f.residual},
      {"special_solution_residuals", g_res},
      {"recovery", {{"labels", s.rec.labels}, {"coefficients", s.rec.coefficients},
                    {"residual", s.rec.residual}, {"residual_bound", s.rec.residual_bound}}},
      {"fluxes", fluxes},
      {"flux_drift", drift},
      {"x_grid", {{"points", xs.size()}, {"x_max", xs.back()}}},
  };

  OutputSet out;
  out.add("solution.csv", std::move(sol));
  out.add("boundary_slice.csv", std::move(slice));
  out.add("endstate.csv", std::move(end));
  out.add("diagnostics.json", diag.dump(2) + "\n");
  return out;
}

OutputSet cmd_convergence(const RunConfig& cfg) {
  cfg.validate();
  const std::vector<std::size_t>& ns = cfg.n_list;
  RunConfig ref_cfg = cfg;
  ref_cfg.n = ns.back();
  const auto ref = build_problem(ref_cfg);
  const VelocityGrid& rg = ref->model->grid();
  const std::size_t species = ref->model->species();

  auto slice_on_reference = [&](const Problem& p) {
    const Solution s = solve(p);
    const Vector coeffs = s.rec.eta(p.sys, 0.0);
    Vector out(rg.size());
    for (std::size_t n = 0; n < rg.size(); ++n)
      out[n] = dot(p.disc.evaluate(rg.mu[n], rg.second[n], rg.species_of[n], p.model->grid()), coeffs);
    return out;
  };
  const Vector ref_slice = slice_on_reference(*ref);

  std::vector<Vector> errors;  // per N, per species
  for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
    RunConfig c = cfg;
    c.n = ns[i];
    const auto p = build_problem(c);
    const Vector slice = slice_on_reference(*p);
    Vector e(species, 0.0);
    for (std::size_t n = 0; n < rg.size(); ++n) {
      const double d = slice[n] - ref_slice[n];
      e[rg.species_of[n]] += rg.weight[n] * d * d;
    }
    for (double& x : e) x = std::sqrt(x);
    errors.push_back(e);
  }
  errors.push_back(Vector(species, 0.0));

  Vector slopes(species, std::numeric_limits<double>::quiet_NaN());
  const std::size_t fit_n = ns.size() - 1;
  for (std::size_t s = 0; s < species; ++s) {
    if (fit_n < 2) break;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    bool ok = true;
    for (std::size_t i = 0; i < fit_n; ++i) {
      if (!(errors[i][s] > 0.0)) ok = false;
      const double lx = std::log(static_cast<double>(ns[i]));
      const double ly = ok ? std::log(errors[i][s]) : 0.0;
      sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    if (!ok) continue;
    const double k = static_cast<double>(fit_n);
    slopes[s] = -(k * sxy - sx * sy) / (k * sxx - sx * sx);
  }

  std::string csv = "N,species,l2_error,slope\n";
  for (std::size_t i = 0; i < ns.size(); ++i)
    for (std::size_t s = 0; s < species; ++s)
      csv += std::to_string(ns[i]) + "," + std::to_string(s) + "," + format_number(errors[i][s]) +
             "," + format_number(slopes[s]) + "\n";
  OutputSet out;
  out.add("convergence.csv", std::move(csv));
  return out;
}

OutputSet cmd_modes(const RunConfig& cfg, bool dump_basis) {
  const auto p = build_problem(cfg);
  const Model& m = *p->model;
  const VelocityGrid& g = m.grid();
  std::string modes = "index,theta,lambda,classification\n";
  for (std::size_t k = 0; k < p->sys.theta.size(); ++k)
    modes += std::to_string(k) + "," + format_number(p->sys.theta[k]) + "," +
             format_number(p->sys.lambda[k]) + "," + p->sys.classification[k] + "\n";

  std::string ns = "mode,space,p1_eigenvalue\n";
  const auto null_modes = all_null_modes(p->nsi);
  for (const auto& [label, mode] : null_modes) {
    const std::string space = label.substr(0, label.find(':'));
    ns += label + "," + (space == "null" ? "H0" : space == "plus" ? "H+" : "H-") + "," +
          format_number(flux(g, *mode, *mode)) + "\n";
  }
  for (std::size_t k = 0; k < p->nsi.p1_eigenvalues.size(); ++k)
    ns += "p1:" + std::to_string(k + 1) + ",spectrum," + format_number(p->nsi.p1_eigenvalues[k]) + "\n";

  std::string nodal = node_header(m) + ",weight";
  for (const auto& [label, mode] : null_modes) nodal += "," + label;
  for (std::size_t i = 0; i < p->nsi.linv_mu_zero.size(); ++i)
    nodal += ",linv_mu_null:" + std::to_string(i + 1);
  nodal += "\n";
  for (std::size_t n = 0; n < g.size(); ++n) {
    nodal += node_columns(m, n) + "," + format_number(g.weight[n]);
    for (const auto& [label, mode] : null_modes) nodal += "," + format_number((*mode)[n]);
    for (const Vector& y : p->nsi.linv_mu_zero) nodal += "," + format_number(y[n]);
    nodal += "\n";
  }

  OutputSet out;
  out.add("modes.csv", std::move(modes));
  out.add("nullspace.csv", std::move(ns));
  out.add("nullspace_modes.csv", std::move(nodal));
  if (dump_basis) {
    std::string basis = "family,index,alpha,beta\n";
    auto dump = [&](const char* name, const BasisFamily& f) {
      for (std::size_t k = 0; k < f.recurrence.size(); ++k)
        basis += std::string(name) + "," + std::to_string(k) + "," +
                 format_number(f.recurrence.alpha[k]) + "," + format_number(f.recurrence.beta[k]) + "\n";
    };
    dump("mu_half", p->disc.mu_family);
    if (m.velocity_dim() > 1) dump("transverse", p->disc.transverse_family);
    std::string quad = "rule,measure,index,node,weight\n";
    auto dumpq = [&](const char* name, const QuadratureRule& r) {
      for (std::size_t k = 0; k < r.size(); ++k)
        quad += std::string(name) + "," + measure_name(r.measure) + "," + std::to_string(k) + "," +
                format_number(r.nodes[k]) + "," + format_number(r.weights[k]) + "\n";
    };
    dumpq("mu_half", g.half_rule);
    if (m.velocity_dim() > 1) dumpq("transverse", g.transverse_rule);
    for (std::size_t s = 0; s < g.species(); ++s)
      quad += "species,species_weight," + std::to_string(s) + "," +
              format_number(g.species_coordinate[s]) + "," + format_number(g.species_weight[s]) + "\n";
    out.add("basis.csv", std::move(basis));
    out.add("quadrature.csv", std::move(quad));
  }
  return out;
}

namespace {

double exact_moment(const QuadratureRule& r, int k) {
  switch (r.measure) {
    case Measure::Lebesgue:
      return (std::pow(r.upper, k + 1) - std::pow(r.lower, k + 1)) / (k + 1);
    case Measure::GaussianHalf:
      return std::pow(2.0, (k - 1) / 2.0) * std::tgamma((k + 1) / 2.0);
    case Measure::GaussianFull:
      return k % 2 ? 0.0 : std::pow(2.0, (k + 1) / 2.0) * std::tgamma((k + 1) / 2.0);
    case Measure::Trapezoid:
      return (std::pow(r.upper, k + 1) - std::pow(r.lower, k + 1)) / (k + 1);
  }
  return 0.0;
}

// Relative moment error up to degree max_degree, scaled by sum w |x|^k.
double moment_error(const QuadratureRule& r, int max_degree) {
  double worst = 0.0;
  for (int k = 0; k <= max_degree; ++k) {
    double q = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      q += r.weights[i] * std::pow(r.nodes[i], k);
      scale += r.weights[i] * std::pow(std::abs(r.nodes[i]), k);
    }
    worst = std::max(worst, std::abs(q - exact_moment(r, k)) / scale);
  }
  return worst;
}

double gram_error(const Matrix& v, const Vector& w) {
  double worst = 0.0;
  for (std::size_t i = 0; i < v.cols(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j) {
      double s = 0.0;
      for (std::size_t q = 0; q < v.rows(); ++q) s += w[q] * v(q, i) * v(q, j);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

Vector random_nodal(const VelocityGrid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector f(g.size());
  for (double& x : f) x = u(rng);
  const double n = g.norm(f);
  for (double& x : f) x /= n;
  return f;
}

}  // namespace

OutputSet cmd_validate(const RunConfig& cfg, std::vector<ValidationRow>& rows) {
  rows.clear();
  auto record = [&](std::string name, bool pass, double measured, double threshold) {
    rows.push_back({std::move(name), pass, measured, threshold});
  };
  auto at_most = [&](std::string name, double measured, double threshold) {
    record(std::move(name), measured <= threshold, measured, threshold);
  };

  const auto p = build_problem(cfg);
  const Model& m = *p->model;
  const VelocityGrid& g = m.grid();
  std::mt19937_64 rng(cfg.seed);

  // Quadrature: exact up to the degrees the assembly integrates.
  const int degree = static_cast<int>(2 * cfg.n + 4);
  at_most("quadrature_exactness_mu", moment_error(g.half_rule, std::min<int>(degree, 2 * g.half_rule.size() - 1)), 1e-11);
  if (m.velocity_dim() > 1)
    at_most("quadrature_exactness_transverse",
            moment_error(g.transverse_rule, std::min<int>(2 * cfg.k + 4, 2 * g.transverse_rule.size() - 1)), 1e-11);
  if (m.kind() == ModelKind::Phonon) {
    const QuadratureRule omega = trapezoid(cfg.phonon.n_omega, cfg.phonon.omega_min, cfg.phonon.omega_max);
    at_most("quadrature_exactness_omega", moment_error(omega, 1), 1e-11);
  }

  // Basis.
  const Matrix psi = p->disc.mu_family.evaluate(g.mu_sym);
  at_most("basis_gram_mu", gram_error(psi, g.w_sym), 1e-12);
  if (m.velocity_dim() > 1)
    at_most("basis_gram_transverse",
            gram_error(p->disc.transverse_family.evaluate(g.transverse_rule.nodes), g.transverse_rule.weights), 1e-12);
  {
    double parity = 0.0;
    const std::size_t mq = g.mu_count();
    for (std::size_t q = 0; q < mq; ++q)
      for (std::size_t j = 0; j < psi.cols(); ++j) {
        const double sign = p->disc.mu_family.is_even(j) ? 1.0 : -1.0;
        parity = std::max(parity, std::abs(psi(mq - 1 - q, j) - sign * psi(q, j)));
      }
    at_most("basis_parity", parity, 1e-12);
    double span = 0.0;
    for (std::size_t j = 1; j < psi.cols(); j += 2) {
      Vector r(mq);
      for (std::size_t q = 0; q < mq; ++q) r[q] = g.mu_sym[q] * psi(q, j);
      for (std::size_t i = 0; i <= std::min(j + 1, psi.cols() - 1); ++i) {
        double c = 0.0;
        for (std::size_t q = 0; q < mq; ++q) c += g.w_sym[q] * psi(q, i) * r[q];
        for (std::size_t q = 0; q < mq; ++q) r[q] -= c * psi(q, i);
      }
      double nr = 0.0;
      for (std::size_t q = 0; q < mq; ++q) nr += g.w_sym[q] * r[q] * r[q];
      span = std::max(span, std::sqrt(nr));
    }
    at_most("basis_mu_multiplication_span", span, 1e-12);
  }

  // Collision operator.
  {
    double sa = 0.0, neg = 0.0, coerc = 0.0;
    for (int t = 0; t < 50; ++t) {
      const Vector f = random_nodal(g, rng);
      const Vector h = random_nodal(g, rng);
      const Vector lf = m.collide(f);
      const Vector lh = m.collide(h);
      sa = std::max(sa, std::abs(g.inner(f, lh) - g.inner(lf, h)));
      neg = std::max(neg, -g.inner(f, lf));
      if (m.kind() == ModelKind::Bgk2d) {
        // ⟨f, Lf⟩ = ‖P⊥f‖² since L = I - P.
        Vector perp(lf);
        coerc = std::max(coerc, g.inner(perp, perp) * (1.0 - 1e-9) - g.inner(f, lf));
      }
    }
    at_most("collision_self_adjoint", sa, 1e-11);
    at_most("collision_nonnegative", neg, 1e-11);
    if (m.kind() == ModelKind::Bgk2d) at_most("bgk_coercivity_projection", coerc, 0.0);
    if (m.kind() == ModelKind::Phonon) {
      double total = 0.0;
      for (double w : g.weight) total += w;
      at_most("phonon_probability_measure", std::abs(total - 1.0), 1e-14);
    }
  }

  // Null space.
  at_most("null_space_residual", p->nsi.max_residual, 1e-10);
  {
    double orth = 0.0;
    for (const Vector& a : p->nsi.zero)
      for (const Vector& b : p->nsi.zero) orth = std::max(orth, std::abs(flux(g, a, b)));
    at_most("h0_flux_orthogonality", orth, 1e-11);
  }

  // Spectral system.
  record("cholesky_default_alpha", p->sys.halvings == 0, p->sys.alpha, cfg.alpha);
  const std::size_t per_sign = m.species() * cfg.n * cfg.transverse_count();
  const std::size_t zero = m.species() * cfg.transverse_count();
  {
    const double mismatch = std::abs(double(p->sys.n_neg) - double(per_sign)) +
                            std::abs(double(p->sys.n_pos) - double(per_sign)) +
                            std::abs(double(p->sys.n_zero) - double(zero));
    at_most("mode_counts", mismatch, 0.0);
  }
  at_most("pencil_residual", p->sys.pencil_residual, 1e-8);

  // Boundary operators.
  at_most("boundary_inverse_closed_form", p->ops.inverse_check, 1e-10);
  {
    std::vector<std::pair<double, double>> pairs{{cfg.boundary.alpha_d, cfg.boundary.alpha_s},
                                                 {0.0, 0.0}, {0.3, 0.4}, {0.5, 0.2}};
    double norm_excess = -INFINITY, beta_margin = INFINITY, pk = -INFINITY;
    for (const auto& [ad, as] : pairs) {
      BoundarySpec spec;
      spec.alpha_d = ad;
      spec.alpha_s = as;
      const HalfRangeOperators ops = build_half_range(m, spec);
      norm_excess = std::max(norm_excess, weighted_norm(g, ops.bar_k) - spec.alpha_r());
      beta_margin = std::min(beta_margin, beta1_check(m, ops, spec, 100, cfg.seed).worst_margin);
      pk = std::max(pk, pk_check(m, spec, 100, cfg.seed).worst_margin);
    }
    at_most("barK_norm_bound", norm_excess, 1e-10);
    record("beta1_quadratic_form", beta_margin >= -1e-12, beta_margin, -1e-12);
    at_most("pk_energy_inequality", pk, 1e-11);
  }

  // Solve and recovery for the configured data.
  const Vector xs = x_grid_for(*p);
  const Solution s = solve(*p);
  at_most("bc_solve_residual", s.rec.f.residual, 1e-9);
  record("recovery_residual", s.rec.residual <= s.rec.residual_bound, s.rec.residual, s.rec.residual_bound);
  at_most("flux_invariance", flux_drift(*p, s.rec, xs), 1e-8);
  for (const auto& [label, mode] : all_null_modes(p->nsi)) {
    if (label.rfind("minus", 0) == 0) continue;
    at_most("reproduction_" + label, reproduction_error(*p, *mode, xs), 1e-6);
  }
  {
    RunConfig half = cfg;
    half.alpha = 0.5 * p->sys.alpha;
    const auto q = build_problem(half);
    const Solution s2 = solve(*q);
    double diff = 0.0;
    for (double x : xs) {
      const Vector a = s.rec.eta_nodal(p->disc, p->sys, x);
      const Vector b = s2.rec.eta_nodal(q->disc, q->sys, x);
      for (std::size_t n = 0; n < a.size(); ++n) diff = std::max(diff, std::abs(a[n] - b[n]));
    }
    at_most("damping_independence", diff, 1e-7);
  }

  std::string csv = "invariant,pass,measured,threshold\n";
  for (const ValidationRow& r : rows)
    csv += r.invariant + "," + (r.pass ? "true" : "false") + "," + format_number(r.measured) + "," +
           format_number(r.threshold) + "\n";
  OutputSet out;
  out.add("validation.csv", std::move(csv));
  return out;
}

}  // namespace hs
