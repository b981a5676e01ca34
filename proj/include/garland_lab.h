#ifndef GARLAND_LAB_H
#define GARLAND_LAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define GL_API __declspec(dllexport)
#else
#define GL_API __attribute__((visibility("default")))
#endif

typedef enum gl_status {
  GL_OK = 0,
  GL_ERR_INVALID_ARGUMENT = 1,
  GL_ERR_DOMAIN = 2,
  GL_ERR_PARSE = 3,
  GL_ERR_INCONSISTENT = 4,
  GL_ERR_IO = 5,
  GL_ERR_INTERNAL = 6
} gl_status;

typedef struct gl_graph gl_graph;
typedef struct gl_complex gl_complex;

GL_API const char* gl_version(void);
/* Message of the last failing call on this thread ("" if none). */
GL_API const char* gl_last_error(void);
GL_API const char* gl_status_name(gl_status status);
/* Frees strings returned through char** out-parameters. */
GL_API void gl_string_free(char* s);

/* Graphs: text format with header "graph" (a complex or tree file yields its
   1-skeleton). */
GL_API gl_status gl_graph_parse(const char* text, gl_graph** out);
GL_API gl_status gl_graph_load(const char* path, gl_graph** out);
/* Catalog names: "cycle" (param k), "incidence" (param prime p),
   "permutation" is not here, see gl_random_graph_sample. */
GL_API gl_status gl_graph_catalog(const char* name, size_t param, gl_graph** out);
GL_API gl_status gl_graph_to_text(const gl_graph* graph, char** out);
GL_API size_t gl_graph_vertex_count(const gl_graph* graph);
GL_API void gl_graph_free(gl_graph* graph);

GL_API gl_status gl_complex_parse(const char* text, gl_complex** out);
GL_API gl_status gl_complex_load(const char* path, gl_complex** out);
/* Catalog names: "torus" (3x3), "tetrahedron", "octahedron", "icosahedron". */
GL_API gl_status gl_complex_catalog(const char* name, gl_complex** out);
GL_API gl_status gl_complex_to_text(const gl_complex* complex, char** out);
GL_API size_t gl_complex_vertex_count(const gl_complex* complex);
/* Link of vertex x as a new graph handle. */
GL_API gl_status gl_complex_link(const gl_complex* complex, size_t x, gl_graph** out);
GL_API void gl_complex_free(gl_complex* complex);

/* Every JSON-returning call writes a freshly allocated UTF-8 string to *out. */

/* Validation report: {"violations": [...]} */
GL_API gl_status gl_graph_validate(const gl_graph* graph, char** out);
GL_API gl_status gl_complex_validate(const gl_complex* complex, char** out);

/* Spectral gap report {"lambda", "connected", "method", "spectrum"}. */
GL_API gl_status gl_spectral_gap(const gl_graph* graph, char** out);
GL_API gl_status gl_cycle_gap_closed_form(size_t k, double* out);
GL_API gl_status gl_trace_bound(const gl_graph* graph, unsigned k, double* out);
/* Rayleigh quotients of a map given as {"space":..., "points":[...]}:
   {"energy", "rayleigh", "gromov_rayleigh"}. */
GL_API gl_status gl_rayleigh(const gl_graph* graph, const char* map_json, char** out);

/* Fixed point certificate. target: "hilbert" or "in" (then delta applies).
   *granted is set to 1 or 0. */
GL_API gl_status gl_certify(const gl_complex* complex, const char* target, double delta, unsigned jobs,
                            char** out, int* granted);
/* Twisted harmonic map for a cocycle JSON; returns the map JSON. */
GL_API gl_status gl_solve_harmonic(const gl_complex* complex, const char* cocycle_json, char** out);
/* Lattice cocycle of the 3x3 torus, as cocycle JSON. */
GL_API gl_status gl_torus_lattice_cocycle(char** out);
/* Identity and inequality reports. map_json NULL means: solve the twisted
   harmonic map for cocycle_json. cocycle_json may be NULL. For the
   inequality, a NaN lambda means the smallest link gap. */
GL_API gl_status gl_garland_identity(const gl_complex* complex, const char* map_json, const char* cocycle_json,
                                     char** out);
GL_API gl_status gl_garland_inequality(const gl_complex* complex, const char* map_json, const char* cocycle_json,
                                       double lambda, char** out);
/* Random map {"space":...} with seeded points; space_json is a space object. */
GL_API gl_status gl_random_map(const char* space_json, size_t vertex_count, uint64_t seed, char** out);
/* Mayer flow. options_json: {"eta", "iterations", "energy_floor", "jobs"}. */
GL_API gl_status gl_flow(const gl_complex* complex, const char* map_json, const char* cocycle_json,
                         const char* options_json, char** out);

/* Wirtinger check of a k-cycle map (map JSON with k points). */
GL_API gl_status gl_wirtinger_check(const char* map_json, char** out, int* all_pass);
/* Regular k-gon of radius 1 in the plane, as map JSON. */
GL_API gl_status gl_regular_polygon_map(size_t k, char** out);
GL_API gl_status gl_wirtinger_constant(size_t k, size_t j, double* out);
/* Loop family certificate; family_json is {"k", "loops"} or a list of loops.
   *above_half reports bound > 1/2. */
GL_API gl_status gl_loop_certificate(const gl_graph* graph, const char* family_json, char** out, int* above_half);
/* Averaging certificate of a family of isometric cycles (counts read off). */
GL_API gl_status gl_averaged_certificate(const gl_graph* graph, const char* family_json, char** out);
/* All simple cycles of a given length as a family JSON. */
GL_API gl_status gl_enumerate_cycles(const gl_graph* graph, size_t length, char** out);

/* Incidence experiments for a prime p. */
GL_API gl_status gl_incidence_summary(unsigned p, char** out);
GL_API gl_status gl_incidence_census(unsigned p, char** out);
GL_API gl_status gl_feit_higman(unsigned p, char** out);
GL_API gl_status gl_generalized_triangle_check(const gl_graph* graph, char** out);

/* Permutation model. options_json: {"n", "d", "samples", "seed", "c",
   "trace_k", "jobs"}. */
GL_API gl_status gl_random_graph(const char* options_json, char** out);
GL_API gl_status gl_random_graph_sample(size_t n, size_t d, uint64_t seed, gl_graph** out);
/* Density model. options_json: {"m", "density", "samples", "seed",
   "link_rule" ("geometric" | "literal"), "jobs"}. */
GL_API gl_status gl_random_group(const char* options_json, char** out);
/* Link graph of a presentation {"m", "relators": [[l1,l2,l3],...]},
   letters ±(i+1). */
GL_API gl_status gl_presentation_link(const char* presentation_json, const char* link_rule, gl_graph** out);

/* Izeki-Nayatani calculators. options_json: {"p"} and/or {"lambda", "in"},
   optionally {"space", "points", "weights", "phi"} for a ratio. */
GL_API gl_status gl_in_bounds(const char* options_json, char** out);

#ifdef __cplusplus
}
#endif

#endif
