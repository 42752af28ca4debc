/* mcfin C interface.
 *
 * All functions return an mcfin_status; on failure mcfin_last_error() holds a message
 * for the calling thread. Strings returned through char** are heap allocated and must be
 * released with mcfin_string_free. Handles are released with their *_free function.
 * Tuples use the text format "dim=k; field=n; row; row; ..." with entries n:[c0,c1,...].
 */
#ifndef MCFIN_H
#define MCFIN_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  MCFIN_OK = 0,
  MCFIN_ERR_ARG = 1,         /* null pointer, out-of-range value */
  MCFIN_ERR_PARSE = 2,       /* malformed tuple or residue text */
  MCFIN_ERR_IO = 3,          /* file missing or unwritable */
  MCFIN_ERR_MATH = 4,        /* precondition failed: not SL2, lambda = 1, singular ... */
  MCFIN_ERR_CAP = 5,         /* a cap was reached before an answer */
  MCFIN_ERR_NOT_FINITE = 6,  /* a trace is not 2cos of a rational angle */
  MCFIN_ERR_INTERNAL = 7
} mcfin_status;

typedef struct mcfin_tuple mcfin_tuple;
typedef struct mcfin_group mcfin_group;
typedef struct mcfin_run mcfin_run;

const char* mcfin_version(void);
const char* mcfin_last_error(void);
void mcfin_string_free(char* s);

/* tuples */
int mcfin_tuple_parse(const char* text, mcfin_tuple** out);
int mcfin_tuple_read(const char* path, mcfin_tuple** out);
int mcfin_tuple_write(const mcfin_tuple* t, const char* path);
void mcfin_tuple_free(mcfin_tuple* t);
int mcfin_tuple_length(const mcfin_tuple* t, size_t* n);
int mcfin_tuple_dim(const mcfin_tuple* t, int* dim);
int mcfin_tuple_str(const mcfin_tuple* t, char** out);
int mcfin_tuple_pretty(const mcfin_tuple* t, char** out);
int mcfin_tuple_equal(const mcfin_tuple* a, const mcfin_tuple* b, int* equal);
/* [A_T^-1, ..., A_1^-1] */
int mcfin_tuple_inverse(const mcfin_tuple* t, mcfin_tuple** out);

/* catalog groups: "G23".."G32" and "G(m,p,n)". validate=0 skips the degree scan but
 * still checks the closure order. */
int mcfin_group_load(const char* id, int validate, mcfin_group** out);
void mcfin_group_free(mcfin_group* g);
/* JSON: id, rank, order, degrees, field, reflections, classes */
int mcfin_group_info(const mcfin_group* g, char** json);
/* sample = 0 scans every element; ok is 1 when no problems */
int mcfin_group_validate(const mcfin_group* g, size_t sample, int* ok, char** json);
int mcfin_group_generators(const mcfin_group* g, mcfin_tuple** out);
/* catalog data only, without building the group */
int mcfin_catalog_info(const char* id, char** json);

/* G(m,p,n): explicit nice tuple; exists = 0 and out = NULL when none is known */
int mcfin_imprim_construct(int m, int p, int n, int T, int* exists, mcfin_tuple** out, char** json);
/* construction vs exhaustive search for 2 <= m <= m_max, p | m, (n,T) in
 * {(3,3),(3,4),(4,4),(4,5)}; TSV m p n T exists witness lambda brute agree */
int mcfin_imprim_verify(int m_max, char** tsv, int* all_agree);

/* middle convolution with lambda = zeta_d^k. check_only skips the output tuple
 * (out may be NULL). report JSON: lambda, predicted, dimK, dimL, dim, invariant */
int mcfin_mc(const mcfin_tuple* t, int d, int k, int check_only, mcfin_tuple** out, char** report);

/* appends the inverse product and scales into SL2. character NULL picks the default
 * square roots; otherwise a comma list of T+1 residues "1/2,0,1/4,...". */
int mcfin_induce(const mcfin_tuple* t, int field_ext, const char* character, mcfin_tuple** out,
                 char** character_out);

/* braid group orbit of an SL2 tuple with product identity */
int mcfin_orbit(const mcfin_tuple* t, size_t cap, size_t* size, int* complete, char** signatures);
int mcfin_same_orbit(const mcfin_tuple* a, const mcfin_tuple* b, size_t cap, int* result);
/* sigma_i (inverse != 0: its inverse), 1 <= i < length */
int mcfin_braid(const mcfin_tuple* t, int i, int inverse, mcfin_tuple** out);
int mcfin_signature(const mcfin_tuple* t, char** out);
/* trace residues theta/sigma of a 4- or 5-tuple */
int mcfin_residues(const mcfin_tuple* t, char** out);

/* generated subgroup. gl2 = 0 requires det 1 and names the group. JSON: finite,
 * inconclusive, order, small_id, label, id, histogram, certificate, reason */
int mcfin_subgroup(const mcfin_tuple* t, size_t cap, int gl2, char** json);

/* nice-tuple search and type partition. JSON: complete, visited, tuples, types[] */
int mcfin_search(const char* group, int T, size_t cap, int twelfth_only, char** json);

typedef struct {
  size_t orbit_cap;
  size_t subgroup_cap;
  int search;            /* derive types by search instead of shipped exemplars */
  size_t search_cap;     /* 0 = unbounded */
  int twelfth_only;
  size_t member_limit;   /* members checked against the exemplar orbit per type */
  int appendix_characters;
  int inverse_types;
  int check_inverse;     /* inverse tuples must land in the computed orbits */
  int threads;
} mcfin_run_options;

void mcfin_run_options_default(mcfin_run_options* o);
int mcfin_run_group(const char* group, int T, const mcfin_run_options* opt, mcfin_run** out);
void mcfin_run_free(mcfin_run* r);
int mcfin_run_row_count(const mcfin_run* r, size_t* n);
int mcfin_run_distinct_orbits(const mcfin_run* r, int* n);
/* JSON: group, T, search_complete, distinct_orbits, types[], rows[], checks[] */
int mcfin_run_summary(const mcfin_run* r, char** json);
/* format "tsv" or "md" */
int mcfin_run_report(const mcfin_run* r, const char* format, char** out);
/* writes the result store under dir; returns the index path */
int mcfin_run_store(const mcfin_run* r, const char* dir, char** index_path);
/* report over every stored row below dir */
int mcfin_report_dir(const char* dir, const char* format, char** out);

#ifdef __cplusplus
}
#endif

#endif
