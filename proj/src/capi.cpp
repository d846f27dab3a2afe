// Copyright 2026 The halfspace authors
// SPDX-License-Identifier: Apache-2.0

#include "halfspace/halfspace.h"

#include <memory>
#include <new>
#include <string>

#include "drivers.hpp"
#include "errors.hpp"

struct hs_config {
  hs::RunConfig cfg;
};

struct hs_problem {
  std::unique_ptr<hs::Problem> problem;
};

struct hs_solution {
  const hs::Problem* problem = nullptr;
  hs::Solution solution;
};

namespace {

thread_local std::string last_error;

hs_status status_for(hs::ErrorKind kind) {
  using hs::ErrorKind;
  switch (kind) {
    case ErrorKind::Config: return HS_ERR_CONFIG;
    case ErrorKind::Io: return HS_ERR_IO;
    case ErrorKind::InvalidArgument:
    case ErrorKind::OutOfRange: return HS_ERR_ARGUMENT;
    default: return HS_ERR_NUMERICAL;
  }
}

template <class F>
hs_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const hs::Error& e) {
    last_error = std::string(hs::error_kind_name(e.kind())) + ": " + e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return HS_ERR_INTERNAL;
  }
}

hs_status argument_error(const char* what) {
  last_error = what;
  return HS_ERR_ARGUMENT;
}

hs::RunConfig load_with_dir(const char* path, const char* out_dir) {
  hs::RunConfig cfg = hs::load_config(path);
  if (out_dir) cfg.out_dir = out_dir;
  return cfg;
}

}  // namespace

extern "C" {

const char* hs_version(void) { return "1.0.0"; }

const char* hs_last_error(void) { return last_error.c_str(); }

hs_status hs_config_load(const char* path, hs_config** out) {
  if (!path || !out) return argument_error("hs_config_load: null argument");
  return guarded([&] {
    *out = new hs_config{hs::load_config(path)};
    return HS_OK;
  });
}

hs_status hs_config_parse(const char* text, hs_config** out) {
  if (!text || !out) return argument_error("hs_config_parse: null argument");
  return guarded([&] {
    *out = new hs_config{hs::parse_config(text)};
    return HS_OK;
  });
}

hs_status hs_config_set(hs_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return argument_error("hs_config_set: null argument");
  return guarded([&] {
    hs::RunConfig next = cfg->cfg;
    hs::apply_setting(next, key, value);
    next.validate();
    cfg->cfg = std::move(next);
    return HS_OK;
  });
}

void hs_config_free(hs_config* cfg) { delete cfg; }

hs_status hs_problem_create(const hs_config* cfg, hs_problem** out) {
  if (!cfg || !out) return argument_error("hs_problem_create: null argument");
  return guarded([&] {
    *out = new hs_problem{hs::build_problem(cfg->cfg)};
    return HS_OK;
  });
}

void hs_problem_free(hs_problem* problem) { delete problem; }

hs_status hs_problem_counts(const hs_problem* problem, size_t counts[3]) {
  if (!problem || !counts) return argument_error("hs_problem_counts: null argument");
  const hs::SpectralSystem& sys = problem->problem->sys;
  counts[0] = sys.n_neg;
  counts[1] = sys.n_pos;
  counts[2] = sys.n_zero;
  return HS_OK;
}

double hs_problem_alpha(const hs_problem* problem) {
  return problem ? problem->problem->sys.alpha : 0.0;
}

size_t hs_problem_node_count(const hs_problem* problem) {
  return problem ? problem->problem->model->grid().size() : 0;
}

hs_status hs_problem_nodes(const hs_problem* problem, double* mu, double* second,
                           size_t* species, double* weight) {
  if (!problem) return argument_error("hs_problem_nodes: null problem");
  const hs::VelocityGrid& g = problem->problem->model->grid();
  for (size_t n = 0; n < g.size(); ++n) {
    if (mu) mu[n] = g.mu[n];
    if (second) second[n] = g.second[n];
    if (species) species[n] = g.species_of[n];
    if (weight) weight[n] = g.weight[n];
  }
  return HS_OK;
}

hs_status hs_solve(const hs_problem* problem, hs_solution** out) {
  if (!problem || !out) return argument_error("hs_solve: null argument");
  return guarded([&] {
    *out = new hs_solution{problem->problem.get(), hs::solve(*problem->problem)};
    return HS_OK;
  });
}

void hs_solution_free(hs_solution* solution) { delete solution; }

size_t hs_solution_mode_count(const hs_solution* solution) {
  return solution ? solution->solution.rec.coefficients.size() : 0;
}

hs_status hs_solution_endstate(const hs_solution* solution, double* coeffs, size_t capacity) {
  if (!solution || !coeffs) return argument_error("hs_solution_endstate: null argument");
  const hs::Vector& c = solution->solution.rec.coefficients;
  if (capacity < c.size()) return argument_error("hs_solution_endstate: capacity too small");
  for (size_t j = 0; j < c.size(); ++j) coeffs[j] = c[j];
  return HS_OK;
}

hs_status hs_solution_eval(const hs_solution* solution, double x, double* damped,
                           double* recovered, size_t capacity) {
  if (!solution) return argument_error("hs_solution_eval: null solution");
  const hs::Problem& p = *solution->problem;
  if (capacity < p.model->grid().size())
    return argument_error("hs_solution_eval: capacity too small");
  if (!(x >= 0.0)) return argument_error("hs_solution_eval: x must be nonnegative");
  return guarded([&] {
    const hs::RecoveredSolution& rec = solution->solution.rec;
    if (damped) {
      const hs::Vector v = p.disc.synthesize(rec.damped(p.sys, x));
      std::copy(v.begin(), v.end(), damped);
    }
    if (recovered) {
      const hs::Vector v = rec.eta_nodal(p.disc, p.sys, x);
      std::copy(v.begin(), v.end(), recovered);
    }
    return HS_OK;
  });
}

hs_status hs_cmd_solve(const char* config_path, const char* out_dir) {
  if (!config_path) return argument_error("hs_cmd_solve: null config path");
  return guarded([&] {
    const hs::RunConfig cfg = load_with_dir(config_path, out_dir);
    hs::cmd_solve(cfg).write(cfg.out_dir);
    return HS_OK;
  });
}

hs_status hs_cmd_convergence(const char* config_path, const char* out_dir,
                             const size_t* n_list, size_t n_count) {
  if (!config_path) return argument_error("hs_cmd_convergence: null config path");
  if (n_count > 0 && !n_list) return argument_error("hs_cmd_convergence: null N list");
  return guarded([&] {
    hs::RunConfig cfg = load_with_dir(config_path, out_dir);
    if (n_count > 0) {
      cfg.n_list.assign(n_list, n_list + n_count);
      cfg.validate();
    }
    hs::cmd_convergence(cfg).write(cfg.out_dir);
    return HS_OK;
  });
}

hs_status hs_cmd_validate(const char* config_path, const char* out_dir) {
  if (!config_path) return argument_error("hs_cmd_validate: null config path");
  return guarded([&] {
    const hs::RunConfig cfg = load_with_dir(config_path, out_dir);
    std::vector<hs::ValidationRow> rows;
    hs::cmd_validate(cfg, rows).write(cfg.out_dir);
    for (const hs::ValidationRow& r : rows)
      if (!r.pass) {
        last_error = "validation failed: " + r.invariant + " (measured " +
                     hs::format_number(r.measured) + ", threshold " +
                     hs::format_number(r.threshold) + ")";
        return HS_ERR_VALIDATION;
      }
    return HS_OK;
  });
}

hs_status hs_cmd_modes(const char* config_path, const char* out_dir, int dump_basis) {
  if (!config_path) return argument_error("hs_cmd_modes: null config path");
  return guarded([&] {
    const hs::RunConfig cfg = load_with_dir(config_path, out_dir);
    hs::cmd_modes(cfg, dump_basis != 0).write(cfg.out_dir);
    return HS_OK;
  });
}

}  // extern "C"
