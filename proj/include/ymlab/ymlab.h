#ifndef YMLAB_H
#define YMLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(YMLAB_BUILDING_LIBRARY)
#define YMLAB_API __attribute__((visibility("default")))
#else
#define YMLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ymlab_status {
  YMLAB_OK = 0,
  YMLAB_INVALID_INPUT = 1,
  YMLAB_IO = 2,
  YMLAB_SOLVER_FAILURE = 3,
  YMLAB_UNSUPPORTED_DIMENSION = 4,
  YMLAB_INTERNAL = 5,
  YMLAB_CHECKS_FAILED = 6
} ymlab_status;

typedef enum ymlab_domain { YMLAB_CUBE = 0, YMLAB_BALL = 1 } ymlab_domain;

/* An su(2)-valued 1-form sampled on a grid. */
typedef struct ymlab_field ymlab_field;

typedef struct ymlab_energies {
  double ym;
  double e_energy;
  double w12_seminorm;
  double l2_of_A;
  double weak_l2_of_F;
} ymlab_energies;

typedef struct ymlab_coulomb_summary {
  int iterations;
  int converged;
  double initial_l2_of_A;
  double final_l2_of_A;
  double coulomb_residual_l2;
} ymlab_coulomb_summary;

typedef struct ymlab_bubble_report {
  double critical_radius; /* +inf when nothing concentrates */
  double bubble_center[4];
  double energy_in_bubble;
  double neck_energy;
  double exterior_energy;
  double total_energy;
  double quantization_defect;
} ymlab_bubble_report;

YMLAB_API const char* ymlab_version(void);

/* Message of the last failed call on this thread ("" if none). */
YMLAB_API const char* ymlab_last_error(void);

/* Fields. Values are node-major, then form component, then the three su(2)
   coefficients; nodes run with the last axis fastest. */
YMLAB_API ymlab_status ymlab_field_zero(int dim, int n_per_axis, ymlab_domain domain, ymlab_field** out);
YMLAB_API ymlab_status ymlab_field_bpst(int n_per_axis, ymlab_domain domain, double lambda, ymlab_field** out);
YMLAB_API ymlab_status ymlab_field_read(const char* manifest, ymlab_field** out);
YMLAB_API ymlab_status ymlab_field_write(const ymlab_field* f, const char* manifest);
YMLAB_API void ymlab_field_free(ymlab_field* f);
YMLAB_API ymlab_status ymlab_field_shape(const ymlab_field* f, int* dim, int* n_per_axis, ymlab_domain* domain,
                                         size_t* value_count);
YMLAB_API ymlab_status ymlab_field_get(const ymlab_field* f, double* values, size_t count);
YMLAB_API ymlab_status ymlab_field_set(ymlab_field* f, const double* values, size_t count);

/* Functionals. */
YMLAB_API ymlab_status ymlab_ym_energy(const ymlab_field* f, double* out);
YMLAB_API ymlab_status ymlab_energy_report(const ymlab_field* f, ymlab_energies* out);
YMLAB_API ymlab_status ymlab_chern_integral(const ymlab_field* f, double radius, double* out);
/* radius < 0 means all of R^4. */
YMLAB_API ymlab_status ymlab_bpst_radial_energy(double lambda, double radius, double* out);

/* Solvers. `fixed` may be NULL. Not converging is reported through
   summary->converged, not the status. */
YMLAB_API ymlab_status ymlab_coulomb_fix(const ymlab_field* f, double tol, int max_iter, ymlab_field** fixed,
                                         ymlab_coulomb_summary* summary);
YMLAB_API ymlab_status ymlab_bubble_detect(const ymlab_field* f, double epsilon, ymlab_bubble_report* out);

/* Runs the invariant corpus; counts may be NULL. */
YMLAB_API ymlab_status ymlab_run_checks(const char* suite, uint64_t seed, int* passed, int* failed);

/* Batch jobs: instanton, coulomb, plateau, bubble, frames, checks. `config`
   is a JSON object; on return *summary (if not NULL) holds a JSON document
   to be released with ymlab_string_free, also when a solver stagnates
   (YMLAB_SOLVER_FAILURE) or a check fails (YMLAB_CHECKS_FAILED). */
YMLAB_API ymlab_status ymlab_run(const char* job, const char* config, char** summary);
YMLAB_API void ymlab_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
