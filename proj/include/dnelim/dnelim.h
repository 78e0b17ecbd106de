/* C interface of the dnelim toolkit. */
#ifndef DNELIM_H
#define DNELIM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DNE_API __declspec(dllexport)
#else
#define DNE_API __attribute__((visibility("default")))
#endif

typedef enum dne_status {
    DNE_OK = 0,
    DNE_FAIL = 1,     /* the logical check failed */
    DNE_EUSAGE = 2,   /* bad arguments */
    DNE_EIO = 3,      /* file could not be read or written */
    DNE_EPARSE = 4,   /* malformed formula, listing or JSON */
    DNE_EINTERNAL = 5
} dne_status;

typedef struct dne_formula dne_formula;
typedef struct dne_proof dne_proof;
typedef struct dne_result dne_result;

DNE_API const char* dne_version(void);
DNE_API const char* dne_status_name(int status);
/* Message of the last failing call on this thread ("" if none). */
DNE_API const char* dne_last_error(void);

/* Formulas in prefix notation, e.g. "i(n(x),y)". Where a command takes a
   formula, a registry name such as "L4" is accepted too. `constants` is a
   comma-separated list of letters read as constants, or NULL. */
DNE_API int dne_formula_parse(const char* text, const char* constants, dne_formula** out);
DNE_API const char* dne_formula_text(const dne_formula* f);
DNE_API size_t dne_formula_weight(const dne_formula* f);
DNE_API int dne_formula_has_dn(const dne_formula* f);
DNE_API void dne_formula_free(dne_formula* f);

/* Condensed-detachment proofs, from a listing or a JSON export. */
DNE_API int dne_proof_load(const char* path, dne_proof** out);
DNE_API int dne_proof_parse_json(const char* json, dne_proof** out);
/* DNE_OK when the proof checks, DNE_FAIL otherwise. */
DNE_API int dne_proof_check(const dne_proof* p);
DNE_API size_t dne_proof_deduced(const dne_proof* p);
DNE_API const char* dne_proof_conclusion(const dne_proof* p);
DNE_API const char* dne_proof_json(const dne_proof* p);
DNE_API void dne_proof_free(dne_proof* p);

/* Command results: a status, a text report and structured JSON data. */
DNE_API int dne_result_status(const dne_result* r);
DNE_API const char* dne_result_report(const dne_result* r);
DNE_API const char* dne_result_data(const dne_result* r);
DNE_API void dne_result_free(dne_result* r);

/* Commands. Each returns its status; when `out` is non-NULL a result is
   stored there (also on failure) and must be freed by the caller.
   Lists of formulas are separated by ';'. */
DNE_API int dne_check(const char* const* paths, size_t n, dne_result** out);
DNE_API int dne_dnreport(const char* path, const char* allowed, dne_result** out);
DNE_API int dne_pushback(const char* path, dne_result** out);
/* Pushback, then erase n(n(q)) for each q in `selection`; leaves are
   matched against the star system of the proof's system. */
DNE_API int dne_erase(const char* path, const char* selection, dne_result** out);
/* Runs a pipeline manifest (JSON) and writes its output proof. */
DNE_API int dne_eliminate(const char* manifest_path, dne_result** out);
DNE_API int dne_star(const char* system, dne_result** out);

typedef struct dne_search_options {
    size_t max_weight;
    size_t max_retained;
    size_t max_given;     /* 0: no limit */
    double time_limit_s;  /* 0: no limit */
    int dn_avoidance;
    int subsume_goal;
    const char* hints;       /* "pattern[:weight];..." or NULL */
    const char* resonators;  /* same form */
} dne_search_options;

DNE_API void dne_search_defaults(dne_search_options* o);
DNE_API int dne_search(const char* system, const char* goal, const dne_search_options* o, dne_result** out);
DNE_API int dne_closure(const char* system, int rounds, size_t cap, dne_result** out);
/* DNE_OK when the sequent is provable. */
DNE_API int dne_sequent(const char* sequent, const char* constants, dne_result** out);
/* Lukasiewicz value under `assignment` ("x=1/2,y=0"); every letter must be assigned. */
DNE_API int dne_eval(const char* formula, const char* assignment, dne_result** out);
/* DNE_OK when the formula is a two-valued tautology and, if max_values > 1,
   has no Lukasiewicz counterexample with up to max_values truth values. */
DNE_API int dne_taut(const char* formula, int max_values, dne_result** out);
/* Verifies the bundled corpus. */
DNE_API int dne_corpus(dne_result** out);

#ifdef __cplusplus
}
#endif

#endif
