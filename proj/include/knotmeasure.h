#ifndef KNOTMEASURE_H
#define KNOTMEASURE_H

/* C interface to the knotmeasure library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns a km_status; on failure km_last_error() gives
 * a message for the calling thread. Strings returned through char** are
 * owned by the caller and released with km_string_free. Structured results
 * are JSON documents.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KM_API __declspec(dllexport)
#else
#define KM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum km_status {
  KM_OK = 0,
  KM_ERR_INPUT = 1,        /* malformed curve, code or argument */
  KM_ERR_DEGENERATE = 2,   /* non-generic projection, intersecting curves */
  KM_ERR_RESOURCE = 3,     /* crossing or sampling budget exceeded */
  KM_ERR_PRECONDITION = 4, /* operation not defined for this object */
  KM_ERR_INTERNAL = 5
} km_status;

typedef struct km_curve km_curve;
typedef struct km_diagram km_diagram;
typedef struct km_poly km_poly;

typedef struct km_sampling {
  size_t samples;
  uint64_t seed;
  unsigned threads;
  double tol;        /* genericity tolerance, relative to the curve diameter */
  int max_crossings; /* bracket budget per projection */
} km_sampling;

KM_API const char* km_version(void);
KM_API const char* km_last_error(void);
KM_API const char* km_status_name(km_status status);
KM_API void km_string_free(char* s);

/* Default seed 20240601, 10000 samples, one thread, tolerance 1e-9, 24 crossings. */
KM_API void km_sampling_defaults(km_sampling* opts);

/* ---- curves ---- */

/* xyz holds 3 * n_vertices coordinates. Closed curves must not repeat the first vertex. */
KM_API km_status km_curve_create(const double* xyz, size_t n_vertices, int closed, km_curve** out);
KM_API void km_curve_free(km_curve* c);
KM_API size_t km_curve_vertex_count(const km_curve* c);
KM_API int km_curve_is_closed(const km_curve* c);
/* Copies 3 * vertex_count coordinates into xyz. */
KM_API void km_curve_vertices(const km_curve* c, double* xyz);
KM_API double km_curve_diameter(const km_curve* c);

/* kind: "trefoil" (vertices), "random-walk" (vertices = edge count, closed),
 * "four-edge" (seed), "near-closed-trefoil" (gap as a fraction of the
 * diameter, vertices). Unused parameters are ignored. */
KM_API km_status km_generate(const char* kind, size_t vertices, double gap, int closed, uint64_t seed,
                             km_curve** out);

KM_API km_status km_gauss_linking(const km_curve* a, const km_curve* b, double* out);

/* ---- diagrams ---- */

/* Diagram of the projection along dir. Fails with KM_ERR_DEGENERATE, naming
 * the violated genericity clause, when the projection is not generic. */
KM_API km_status km_project(const km_curve* c, const double dir[3], double tol, km_diagram** out);
KM_API km_status km_project_link(const km_curve* a, const km_curve* b, const double dir[3], double tol,
                                 km_diagram** out);
KM_API km_status km_diagram_from_gauss(const char* code, km_diagram** out);
KM_API void km_diagram_free(km_diagram* d);
KM_API size_t km_diagram_crossing_count(const km_diagram* d);
KM_API size_t km_diagram_component_count(const km_diagram* d);
KM_API km_status km_diagram_gauss_code(const km_diagram* d, char** out);
/* One line per traversal event: componentId crossingId O|U sign position. */
KM_API km_status km_diagram_dump(const km_diagram* d, char** out);

/* ---- polynomials and invariants ---- */

KM_API km_status km_enhanced_jones(const km_diagram* d, int max_crossings, unsigned threads, km_poly** out);
KM_API void km_poly_free(km_poly* p);
/* Human form such as "q + q^3 + q^5 - q^9". */
KM_API km_status km_poly_to_string(const km_poly* p, char** out);
/* JSON list of [exponent, coefficient] pairs, exponents ascending. */
KM_API km_status km_poly_pairs_json(const km_poly* p, char** out);

/* Rationals are returned as strings "p/q" (or "p" when integral). */
KM_API km_status km_vassiliev(const km_diagram* d, unsigned k, int max_crossings, char** out);
KM_API km_status km_v2_combinatorial(const km_diagram* d, char** out);

/* Crossing-change relations at one crossing, as a JSON report. Knots use the
 * knot relations, open diagrams the knotoid ones. */
KM_API km_status km_verify_skein(const km_diagram* d, int crossing, char** json_out);

/* ---- Monte Carlo measures (JSON results; independent of opts->threads) ---- */

KM_API km_status km_wk(const km_curve* c, unsigned k, const km_sampling* opts, char** json_out);
KM_API km_status km_sll(const km_curve* c, const km_sampling* opts, char** json_out);
KM_API km_status km_spectrum(const km_curve* c, const km_sampling* opts, char** json_out);
/* Per-direction v2 from the state sum and, where defined, from the
 * alternating-pair formula. */
KM_API km_status km_v2_samples(const km_curve* c, const km_sampling* opts, char** json_out);
KM_API km_status km_scan(const km_curve* closed, const double* gaps, size_t n_gaps, unsigned k,
                         const km_sampling* opts, char** json_out);

/* ---- exact geometric probabilities ---- */

/* Segments are given as 6 coordinates: start then end. */
KM_API km_status km_crossing_probability(const double a[6], const double b[6], double* out);
KM_API km_status km_sll_exact4(const km_curve* c, double* out);

#ifdef __cplusplus
}
#endif

#endif
