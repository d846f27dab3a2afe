/* Copyright 2026 The halfspace authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the half-space kinetic solver. All handles are opaque and
 * owned by the caller once returned; release them with the matching *_free.
 * Every function returning hs_status records a message retrievable through
 * hs_last_error() on the calling thread.
 */
#ifndef HALFSPACE_HALFSPACE_H
#define HALFSPACE_HALFSPACE_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(HALFSPACE_BUILDING)
#    define HS_API __declspec(dllexport)
#  else
#    define HS_API __declspec(dllimport)
#  endif
#else
#  define HS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hs_status {
  HS_OK = 0,
  HS_ERR_ARGUMENT = 1,   /* bad pointer, size or handle */
  HS_ERR_CONFIG = 2,     /* unreadable or invalid configuration */
  HS_ERR_NUMERICAL = 3,  /* coercivity, mode count, recovery, singular systems */
  HS_ERR_VALIDATION = 4, /* an invariant of the validation suite failed */
  HS_ERR_IO = 5,         /* output could not be written */
  HS_ERR_INTERNAL = 6
} hs_status;

typedef struct hs_config hs_config;
typedef struct hs_problem hs_problem;
typedef struct hs_solution hs_solution;

HS_API const char* hs_version(void);
HS_API const char* hs_last_error(void);

/* Configuration. Keys use "section.key" form, e.g. "model.name". */
HS_API hs_status hs_config_load(const char* path, hs_config** out);
HS_API hs_status hs_config_parse(const char* text, hs_config** out);
HS_API hs_status hs_config_set(hs_config* cfg, const char* key, const char* value);
HS_API void hs_config_free(hs_config* cfg);

/* Assembles model, Galerkin system, decaying modes and boundary rows. */
HS_API hs_status hs_problem_create(const hs_config* cfg, hs_problem** out);
HS_API void hs_problem_free(hs_problem* problem);
/* counts[0] decaying, counts[1] growing, counts[2] degenerate. */
HS_API hs_status hs_problem_counts(const hs_problem* problem, size_t counts[3]);
HS_API double hs_problem_alpha(const hs_problem* problem);
HS_API size_t hs_problem_node_count(const hs_problem* problem);
/* Each array holds hs_problem_node_count() entries; any may be NULL. */
HS_API hs_status hs_problem_nodes(const hs_problem* problem, double* mu, double* second,
                                  size_t* species, double* weight);

HS_API hs_status hs_solve(const hs_problem* problem, hs_solution** out);
HS_API void hs_solution_free(hs_solution* solution);
HS_API size_t hs_solution_mode_count(const hs_solution* solution);
/* Writes the end-state coefficients (H0 modes, then H+ modes). */
HS_API hs_status hs_solution_endstate(const hs_solution* solution, double* coeffs, size_t capacity);
/* Nodal damped and recovered solutions at x; capacity >= node count. */
HS_API hs_status hs_solution_eval(const hs_solution* solution, double x, double* damped,
                                  double* recovered, size_t capacity);

/* Command drivers. out_dir may be NULL to use the configured directory. */
HS_API hs_status hs_cmd_solve(const char* config_path, const char* out_dir);
HS_API hs_status hs_cmd_convergence(const char* config_path, const char* out_dir,
                                    const size_t* n_list, size_t n_count);
HS_API hs_status hs_cmd_validate(const char* config_path, const char* out_dir);
HS_API hs_status hs_cmd_modes(const char* config_path, const char* out_dir, int dump_basis);

#ifdef __cplusplus
}
#endif

#endif /* HALFSPACE_HALFSPACE_H */
