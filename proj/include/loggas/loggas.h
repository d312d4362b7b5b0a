/* C interface to the log-gas toolkit. All functions return lg_status;
 * outputs go through pointers. On failure lg_last_error() describes the
 * problem (thread-local). Handles are opaque and freed with the matching
 * *_free call; freeing NULL is a no-op. */
#ifndef LOGGAS_H
#define LOGGAS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    LG_OK = 0,
    LG_ERR_INVALID = 1,     /* bad argument / precondition */
    LG_ERR_DOMAIN = 2,      /* input outside mathematical domain */
    LG_ERR_CONVERGENCE = 3, /* iteration failed to converge */
    LG_ERR_UNSUPPORTED = 4, /* operation unavailable for this model */
    LG_ERR_IO = 5
} lg_status;

const char* lg_last_error(void);

/* ---- scalar kernels ---- */
lg_status lg_log_q_theta(double x, double theta, double* out);
lg_status lg_q_theta_sandwich(double x, double theta, double* lo, double* hi);
lg_status lg_stereo_dist(double x, double y, double* out);

/* ---- models (potential family + parameters, including theta) ---- */
typedef struct lg_model lg_model;

lg_model* lg_model_jack(double theta, double t);
/* NULL when theta <= 1/2 (ensemble not well posed). */
lg_model* lg_model_cauchy(double theta);
lg_model* lg_model_table(const double* xs, const double* vs, size_t count,
                         double theta, double theta_prime, double floor_const,
                         double tail_value);
void lg_model_free(lg_model* m);

double lg_model_theta(const lg_model* m);
/* Closed-form equilibrium density / CDF; LG_ERR_UNSUPPORTED for tables. */
lg_status lg_model_closed_density(const lg_model* m, double x, double* out);
lg_status lg_model_closed_cdf(const lg_model* m, double x, double* out);
/* Closed-form support edges (Jack only). */
lg_status lg_model_support(const lg_model* m, double* lo, double* hi);
/* Domain of the equilibrium problem; infinite ends reported as +/-HUGE_VAL. */
lg_status lg_model_domain(const lg_model* m, double* lo, double* hi);
/* Reference free energy -theta * E_V(mu_eq) from the closed-form density. */
lg_status lg_model_reference_free_energy(const lg_model* m, double* out);

lg_status lg_wellposedness(const lg_model* m, int n, int has_lower,
                           long long lower, int has_upper, long long upper,
                           int* ok, double* witnessed_floor,
                           double* violating_x, char* msg, size_t msg_len);

/* ---- grid measures / equilibrium ---- */
typedef struct lg_measure lg_measure;

lg_status lg_equilibrium_solve(const lg_model* m, double win_lo, double win_hi,
                               size_t cells, double tol, lg_measure** out,
                               double* c, double* residual_support,
                               double* residual_offsupport, double* f_value,
                               int* iterations);
void lg_measure_free(lg_measure* mu);
size_t lg_measure_cells(const lg_measure* mu);
double lg_measure_left(const lg_measure* mu);
double lg_measure_h(const lg_measure* mu);
double lg_measure_weight(const lg_measure* mu, size_t i);
double lg_measure_density(const lg_measure* mu, size_t i);
lg_status lg_measure_write_csv(const lg_measure* mu, const char* path);
lg_status lg_measure_write_cdf_csv(const lg_measure* mu, const char* path);

/* ---- partition functions ---- */
lg_status lg_partition_closed(const lg_model* m, int n, double* log_z);
/* Exact enumeration; N <= 6. rel_tol governs the automatic window. */
lg_status lg_partition_exact(const lg_model* m, int n, int has_lower,
                             long long lower, int has_upper, long long upper,
                             double rel_tol, double* log_z,
                             double* tail_bound);
/* (1/N^2) log Z'_N; method 0 = exact, 1 = closed form. */
lg_status lg_scaled_free_energy(const lg_model* m, int n, int method,
                                double* out, double* tail_bound);

/* ---- MCMC sampling ---- */
typedef struct lg_sampler lg_sampler;

/* init_mode 0: packed start; 1: quantile start at the closed-form
 * equilibrium (Jack only). Refuses ill-posed ensembles. */
lg_status lg_sampler_new(const lg_model* m, int n, int has_lower,
                         long long lower, int has_upper, long long upper,
                         uint64_t seed, int init_mode, lg_sampler** out);
void lg_sampler_free(lg_sampler* s);
lg_status lg_sampler_run(lg_sampler* s, long long steps);
/* lambda must hold n entries. */
lg_status lg_sampler_state(const lg_sampler* s, long long* lambda);
/* Serialized "N theta a b : lambda..." line. */
lg_status lg_sampler_line(const lg_sampler* s, char* buf, size_t len);
long long lg_sampler_accepted(const lg_sampler* s);
long long lg_sampler_proposals(const lg_sampler* s);

/* KS statistic of retained states (row-major n_samples x n lambda array)
 * against the model's closed-form equilibrium CDF. */
lg_status lg_ks_against_model(const lg_model* m, int n,
                              const long long* lambdas, size_t n_samples,
                              double* ks);

/* ---- property suites ---- */
/* suite: "kernels" | "energy" | "equilibrium" | "ldp" | "all".
 * Writes a pass/fail table into report (truncated to report_len);
 * all_pass set to 1 iff every check passed. */
lg_status lg_verify(const char* suite, char* report, size_t report_len,
                    int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* LOGGAS_H */
