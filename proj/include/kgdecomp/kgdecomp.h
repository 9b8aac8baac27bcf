/* C interface to the Klein-Gordon decomposition solvers.
 *
 * Every call returns a kgd_status.  On failure the thread's last error message
 * is set (kgd_last_error) and output handles are left NULL.  Handles are opaque
 * and owned by the caller; release each with its *_free function.  All
 * functions are safe to call concurrently on distinct handles. */
#ifndef KGDECOMP_H
#define KGDECOMP_H

#include <stddef.h>

#if defined(KGD_BUILDING_LIBRARY)
#define KGD_API __attribute__((visibility("default")))
#else
#define KGD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kgd_status {
    KGD_OK = 0,
    KGD_INVALID_ARGUMENT = 1,
    KGD_NON_POSITIVE_RADIUS = 2,
    KGD_OUT_OF_GRID_RANGE = 3,
    KGD_NON_FINITE_VALUE = 4,
    KGD_OVERFLOW = 5,
    KGD_LENGTH_MISMATCH = 6,
    KGD_NO_BOUND_STATE = 7,
    KGD_VECTOR_DOMINATES = 8,
    KGD_NO_CONVERGENCE = 9,
    KGD_NEGATIVE_OSCILLATOR = 10,
    KGD_CONSTRAINT_VIOLATED = 11,
    KGD_NON_NORMALIZABLE_BASE = 12,
    KGD_COMPLEX_ENERGY = 13,
    KGD_NON_FINITE_POTENTIAL = 14,
    KGD_IO_ERROR = 15,
    KGD_INTERNAL_ERROR = 99
} kgd_status;

/* CamelCase name of a status, e.g. "NoBoundState". */
KGD_API const char* kgd_status_name(kgd_status status);

/* Message of the last failed call on this thread; "" after a success. */
KGD_API const char* kgd_last_error(void);

KGD_API const char* kgd_version(void);

/* Uniform grid [r_min, r_max] with spacing h.  r_min = 0 asks for the
 * oracle convention: nodes h, 2h, ... with the wall at the origin. */
typedef struct kgd_grid_spec {
    double r_min;
    double r_max;
    double h;
} kgd_grid_spec;

/* S = s0/r + s1 r + s2 r^2, V = v0/r + v1 r + v2 r^2. */
typedef struct kgd_power_pair {
    double s0, s1, s2;
    double v0, v1, v2;
} kgd_power_pair;

/* S = -s0/(e^{alpha r} - 1), V = -v0/(e^{alpha r} - 1). */
typedef struct kgd_hulthen_pair {
    double s0, v0, alpha;
} kgd_hulthen_pair;

typedef double (*kgd_radial_fn)(double r, void* user);

/* Sampled table with named columns of equal length. */
typedef struct kgd_table kgd_table;

KGD_API size_t kgd_table_rows(const kgd_table* table);
KGD_API size_t kgd_table_columns(const kgd_table* table);
KGD_API const char* kgd_table_column_name(const kgd_table* table, size_t column);
/* Pointer to `rows` doubles, valid until the table is freed. */
KGD_API const double* kgd_table_column(const kgd_table* table, size_t column);
KGD_API void kgd_table_free(kgd_table* table);

/* ---- Hulthen pair, self-consistent ground state ---- */

typedef struct kgd_hulthen kgd_hulthen;

typedef struct kgd_hulthen_summary {
    double E;
    double eps;
    double deps;
    double deps_expanded;
    double delta;
    double A;
    double B;
    double U0;
    double residual_nr;
    double residual_rel;
    int exponent_sign; /* -1 or +1: sign of alpha/2 in the full exponent; 0 if neither passes */
} kgd_hulthen_summary;

/* `residual_grid` may be NULL for the default [1e-3, 40], h = 1e-3. */
KGD_API kgd_status kgd_hulthen_solve(double m, kgd_hulthen_pair pair, const kgd_grid_spec* residual_grid,
                                     kgd_hulthen** out);
KGD_API kgd_status kgd_hulthen_summary_get(const kgd_hulthen* h, kgd_hulthen_summary* out);
KGD_API size_t kgd_hulthen_root_count(const kgd_hulthen* h);
KGD_API double kgd_hulthen_root(const kgd_hulthen* h, size_t index);
KGD_API size_t kgd_hulthen_warning_count(const kgd_hulthen* h);
KGD_API const char* kgd_hulthen_warning(const kgd_hulthen* h, size_t index);
/* Columns r, chi, phi, psi (max-abs 1); `raw` adds unscaled chi_raw, phi_raw. */
KGD_API kgd_status kgd_hulthen_wavefunction(const kgd_hulthen* h, kgd_grid_spec grid, int raw, kgd_table** out);
KGD_API void kgd_hulthen_free(kgd_hulthen* h);

/* ---- Coulomb plus oscillator pair ---- */

typedef struct kgd_coulombic kgd_coulombic;

typedef struct kgd_coulombic_summary {
    int n;
    double E;
    double eps;
    double a, b, c;
    double constraint_residual;
    double residual_nr;
    double g_residual;
    int iterations;
    int degenerate;
    kgd_power_pair effective_pair;
} kgd_coulombic_summary;

/* derive_linear_term != 0 replaces (s1, v1) so the closed-form constraint
 * holds at the converged energy. */
KGD_API kgd_status kgd_coulombic_solve(int n, double m, kgd_power_pair pair, int derive_linear_term,
                                       const kgd_grid_spec* residual_grid, kgd_coulombic** out);
KGD_API kgd_status kgd_coulombic_summary_get(const kgd_coulombic* c, kgd_coulombic_summary* out);
KGD_API size_t kgd_coulombic_warning_count(const kgd_coulombic* c);
KGD_API const char* kgd_coulombic_warning(const kgd_coulombic* c, size_t index);
/* Columns r, chi (max-abs 1); `raw` adds chi_raw. */
KGD_API kgd_status kgd_coulombic_wavefunction(const kgd_coulombic* c, kgd_grid_spec grid, int raw, kgd_table** out);
KGD_API void kgd_coulombic_free(kgd_coulombic* c);

/* Constraint residual (m s1 + E v1) + (m s0 + E v0) sqrt(4m(m s2 + E v2)). */
KGD_API kgd_status kgd_coulombic_constraint(double m, double energy, kgd_power_pair pair, double* out);
/* Non-relativistic level eps_n at a given energy. */
KGD_API kgd_status kgd_coulombic_energy(int n, double m, double energy, kgd_power_pair pair, double* out);

/* ---- Perturbation series ---- */

typedef struct kgd_series kgd_series;

/* Base: the closed-form ground state of `base` at energy `base_energy`.
 * The whole of S^2 - V^2 of `correction` enters at first order. */
KGD_API kgd_status kgd_series_run_power(double m, double base_energy, kgd_power_pair base,
                                        kgd_power_pair correction, int order, double lambda, kgd_grid_spec grid,
                                        kgd_series** out);
/* Base superpotential w(r) (derivative optional, may be NULL) and Delta V_k
 * for k = 1..order (entries may be NULL for zero). */
KGD_API kgd_status kgd_series_run(double m, kgd_radial_fn w, kgd_radial_fn w_derivative,
                                  const kgd_radial_fn* delta_v, int order, double lambda, void* user,
                                  kgd_grid_spec grid, kgd_series** out);
KGD_API int kgd_series_order(const kgd_series* s);
/* Delta eps_k for k = 1..order. */
KGD_API double kgd_series_deps(const kgd_series* s, int k);
/* sum_{k <= max_order} lambda^k Delta eps_k; max_order 0 means all. */
KGD_API double kgd_series_energy_shift(const kgd_series* s, double lambda, int max_order);
KGD_API size_t kgd_series_warning_count(const kgd_series* s);
KGD_API const char* kgd_series_warning(const kgd_series* s, size_t index);
/* Columns r, chi, phi, psi, dW1..dWK. */
KGD_API kgd_status kgd_series_table(const kgd_series* s, double m, kgd_table** out);
KGD_API void kgd_series_free(kgd_series* s);

/* ---- Finite-difference oracle ---- */

/* k lowest eigenvalues of -u'' + U u on `grid`; `out` holds k doubles. */
KGD_API kgd_status kgd_oracle_schrodinger(kgd_radial_fn potential, void* user, kgd_grid_spec grid, size_t k,
                                          double* out);
/* k lowest Klein-Gordon energies; `energies` (may be NULL) and `eigenvalues`
 * (E^2 - m^2, may be NULL) hold k doubles each. */
KGD_API kgd_status kgd_oracle_kg_hulthen(double m, kgd_hulthen_pair pair, kgd_grid_spec grid, size_t k,
                                         double* energies, double* eigenvalues);
KGD_API kgd_status kgd_oracle_kg_power(double m, kgd_power_pair pair, kgd_grid_spec grid, size_t k,
                                       double* energies, double* eigenvalues);
/* k smallest eigenvalues of a symmetric tridiagonal matrix of order n. */
KGD_API kgd_status kgd_tridiagonal_smallest(const double* diagonal, const double* off_diagonal, size_t n, size_t k,
                                            double* out);
/* Box size 40/kappa, kappa = sqrt(m^2 - E^2); 40 when E is not bound. */
KGD_API double kgd_oracle_default_box(double m, double energy);

/* ---- Cross-validation report ---- */

typedef struct kgd_report kgd_report;

typedef struct kgd_check {
    int group;
    const char* name;
    int passed;
    double value;
    double tolerance;
    const char* detail;
} kgd_check;

KGD_API kgd_status kgd_verify(int quick, double grid_scale, kgd_report** out);
KGD_API size_t kgd_report_count(const kgd_report* r);
/* Strings stay valid until the report is freed. */
KGD_API kgd_status kgd_report_check(const kgd_report* r, size_t index, kgd_check* out);
KGD_API int kgd_report_all_passed(const kgd_report* r);
KGD_API void kgd_report_free(kgd_report* r);

#ifdef __cplusplus
}
#endif

#endif
