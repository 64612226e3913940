#ifndef INFOLATTICE_H
#define INFOLATTICE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(INFOLATTICE_BUILDING)
#    define IL_API __declspec(dllexport)
#  else
#    define IL_API __declspec(dllimport)
#  endif
#else
#  define IL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct il_distribution il_distribution;
typedef struct il_lattice il_lattice;

typedef enum il_status {
  IL_OK = 0,
  IL_ERR_INVALID_ARGUMENT = 1,
  IL_ERR_PARSE = 2,
  IL_ERR_NORMALIZATION = 3,
  IL_ERR_NEGATIVE_MASS = 4,
  IL_ERR_DUPLICATE_ASSIGNMENT = 5,
  IL_ERR_CARDINALITY = 6,
  IL_ERR_ZERO_MASS = 7,
  IL_ERR_OUT_OF_SUPPORT = 8,
  IL_ERR_OUT_OF_RANGE = 9,
  IL_ERR_IO = 10,
  IL_ERR_INTERNAL = 11
} il_status;

typedef enum il_base { IL_BITS = 0, IL_NATS = 1, IL_HARTLEYS = 2 } il_base;

typedef enum il_input_format { IL_INPUT_JSON = 0, IL_INPUT_CSV = 1 } il_input_format;

typedef enum il_report_format { IL_REPORT_TEXT = 0, IL_REPORT_STRUCTURED = 1 } il_report_format;

typedef enum il_measure {
  IL_SURPRISAL = 0,    /* one source */
  IL_UNION = 1,        /* two or more sources */
  IL_INTERSECTION = 2, /* two or more sources */
  IL_UNIQUE = 3,       /* h(a \ b): exactly two sources */
  IL_SYNERGY = 4,      /* two or more sources */
  IL_MUTUAL = 5        /* exactly two disjoint sources; signed */
} il_measure;

typedef enum il_lattice_kind { IL_REDUNDANCY = 0, IL_SHARING = 1 } il_lattice_kind;

typedef enum il_suite {
  IL_SUITE_PROPS = 0,
  IL_SUITE_LEMMAS = 1,
  IL_SUITE_MOBIUS = 2,
  IL_SUITE_PIE = 3,
  IL_SUITE_POINTWISE = 4,
  IL_SUITE_MI = 5,
  IL_SUITE_TRIVARIATE = 6
} il_suite;

/* Sources are bitmasks over variable indices: bit i selects variable i.
   A `given` or `about` mask of 0 means "none". Realizations are arrays of
   one category per variable. Strings returned through char** are owned by
   the caller and released with il_string_free. */

/* Message of the last failed call on this thread; never NULL. */
IL_API const char* il_last_error(void);
IL_API const char* il_status_string(il_status status);
IL_API void il_string_free(char* s);

IL_API il_status il_distribution_load_file(const char* path, il_distribution** out);
IL_API il_status il_distribution_load_text(const char* text, il_input_format format,
                                           il_distribution** out);
IL_API void il_distribution_free(il_distribution* d);

IL_API il_status il_distribution_variable_count(const il_distribution* d, size_t* out);
/* Borrowed pointer, valid while d lives. */
IL_API il_status il_distribution_variable_name(const il_distribution* d, size_t i,
                                               const char** out);
IL_API il_status il_distribution_variable_index(const il_distribution* d,
                                                const char* name, size_t* out);
IL_API il_status il_distribution_cardinality(const il_distribution* d, size_t i,
                                             uint32_t* out);
IL_API il_status il_distribution_support_size(const il_distribution* d, size_t* out);
/* values must hold one entry per variable. */
IL_API il_status il_distribution_support_entry(const il_distribution* d, size_t k,
                                               uint32_t* values, double* p);

IL_API il_status il_marginal_mass(const il_distribution* d, uint32_t source,
                                  const uint32_t* realization, size_t len, double* out);

IL_API il_status il_pointwise(const il_distribution* d, il_measure measure,
                              const uint32_t* sources, size_t count, uint32_t given,
                              const uint32_t* realization, size_t len, il_base base,
                              double* out);
IL_API il_status il_expected(const il_distribution* d, il_measure measure,
                             const uint32_t* sources, size_t count, uint32_t given,
                             il_base base, double* out);

IL_API il_status il_lattice_create(unsigned n, int allow_n5, il_lattice** out);
IL_API void il_lattice_free(il_lattice* l);
IL_API il_status il_lattice_size(const il_lattice* l, size_t* out);
IL_API il_status il_lattice_cover_count(const il_lattice* l, size_t* out);
/* names may be NULL for the default x, y, z, w, v. */
IL_API il_status il_lattice_label(const il_lattice* l, size_t node,
                                  const char* const* names, char** out);
IL_API il_status il_lattice_dot(const il_lattice* l, il_lattice_kind kind,
                                const char* const* names, char** out);

typedef struct il_decompose_options {
  const uint32_t* realization; /* NULL for the expected decomposition */
  size_t realization_len;
  uint32_t variables;          /* 0: every variable not in `given` */
  uint32_t given;
  il_base base;
  double tolerance;
  int allow_n5;
  il_report_format format;
} il_decompose_options;

/* identity_holds (may be NULL) is set to 1 when the footer residual is
   within tolerance. */
IL_API il_status il_decompose_report(const il_distribution* d,
                                     const il_decompose_options* options,
                                     char** report, int* identity_holds);

IL_API il_status il_mi_report(const il_distribution* d, uint32_t a, uint32_t b,
                              uint32_t target, const uint32_t* realization,
                              size_t len, il_base base, double tolerance,
                              il_report_format format, char** report,
                              int* identity_holds);

/* Evaluates an expression such as "x cap (y oplus z)". realization NULL
   gives the expectation. With about != 0 the result is the mutual content
   eval(expr) - eval(expr | about). */
IL_API il_status il_eval_expression(const il_distribution* d, const char* expression,
                                    const uint32_t* realization, size_t len,
                                    uint32_t given, uint32_t about, il_base base,
                                    int allow_n5, double* out);

IL_API il_status il_check_report(il_suite suite, uint64_t seed, size_t trials,
                                 double tolerance, il_base base,
                                 il_report_format format, char** report,
                                 int* passed);

#ifdef __cplusplus
}
#endif

#endif
