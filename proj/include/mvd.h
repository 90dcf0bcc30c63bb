#ifndef MVD_H
#define MVD_H

/*
 * C interface to the decision-table library.
 *
 * Handles are opaque and owned by the caller; free each with its *_free
 * function. Strings returned through char** are heap allocated and released
 * with mvd_string_free. Every call returning mvd_status leaves a message for
 * mvd_last_error() on failure (thread local, valid until the next call).
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MVD_API __declspec(dllexport)
#else
#define MVD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mvd_status {
    MVD_OK = 0,
    MVD_ERR_FORMAT = 1,
    MVD_ERR_INVALID_ARGUMENT = 2,
    MVD_ERR_MEASURE = 3,
    MVD_ERR_RESOURCE = 4,
    MVD_ERR_IO = 5,
    MVD_ERR_INTERNAL = 6
} mvd_status;

typedef struct mvd_table mvd_table;
typedef struct mvd_measure mvd_measure;
typedef struct mvd_tree mvd_tree;
typedef struct mvd_report mvd_report;

MVD_API const char* mvd_last_error(void);
MVD_API const char* mvd_status_name(mvd_status s);
MVD_API const char* mvd_version(void);
MVD_API void mvd_string_free(char* s);

/* ---- limits ---- */

typedef struct mvd_limits {
    uint64_t max_columns;
    uint64_t max_rows;
    uint64_t max_memo;
    uint64_t max_words;
    uint64_t max_bb_nodes;
    uint64_t max_tuples;
} mvd_limits;

MVD_API void mvd_limits_default(mvd_limits* out);
/* Defaults overridden by MVD_LIMITS, e.g. "max-memo=1000,max-rows=64". */
MVD_API mvd_status mvd_limits_from_env(mvd_limits* out);

/* ---- tables ---- */

MVD_API mvd_status mvd_table_parse(const char* text, size_t len, mvd_table** out);
MVD_API mvd_status mvd_table_load(const char* path, mvd_table** out);
/* structured = 0 for the text form, 1 for the structured form. */
MVD_API mvd_status mvd_table_serialize(const mvd_table* t, int structured, char** out);
MVD_API mvd_status mvd_table_save(const mvd_table* t, const char* path, int structured);
MVD_API void mvd_table_free(mvd_table* t);

MVD_API size_t mvd_table_rows(const mvd_table* t);
MVD_API size_t mvd_table_columns(const mvd_table* t);
MVD_API uint32_t mvd_table_k(const mvd_table* t);
/* The returned name lives as long as the table. */
MVD_API const char* mvd_table_attribute(const mvd_table* t, size_t column);
MVD_API int mvd_table_has_weights(const mvd_table* t);
MVD_API int mvd_table_is_degenerate(const mvd_table* t);

/* ---- measures ---- */

/* kind: "depth", "wsum" or "wmax". */
MVD_API mvd_status mvd_measure_create(const char* kind, mvd_measure** out);
MVD_API mvd_status mvd_measure_set_weight(mvd_measure* m, const char* attribute, uint64_t weight);
/* Weight of every attribute without an explicit weight. */
MVD_API mvd_status mvd_measure_set_fallback(mvd_measure* m, uint64_t weight);
/* Sidecar file of "name value" lines. */
MVD_API mvd_status mvd_measure_load_weights(mvd_measure* m, const char* path);
/* Copies the weights line of a table file, if it had one. */
MVD_API mvd_status mvd_measure_add_table_weights(mvd_measure* m, const mvd_table* t);
MVD_API mvd_status mvd_measure_describe(const mvd_measure* m, char** out);
MVD_API void mvd_measure_free(mvd_measure* m);

/* ---- solving and trees ---- */

typedef enum mvd_mode { MVD_DETERMINISTIC = 0, MVD_NONDETERMINISTIC = 1 } mvd_mode;
typedef enum mvd_tree_format { MVD_TREE_DOT = 0, MVD_TREE_STRUCTURED = 1 } mvd_tree_format;

/* limits may be NULL (defaults). tree may be NULL; *tree is set to NULL for a
 * table without rows. */
MVD_API mvd_status mvd_solve(const mvd_table* t, const mvd_measure* m, mvd_mode mode, const mvd_limits* limits,
                             uint64_t* value, mvd_tree** tree);
MVD_API mvd_status mvd_tree_export(const mvd_tree* g, mvd_tree_format format, char** out);
MVD_API mvd_status mvd_tree_import(const char* structured, mvd_tree** out);
/* Newline separated "kind: message" lines, empty when valid. */
MVD_API mvd_status mvd_tree_validate(const mvd_tree* g, const mvd_table* t, mvd_mode mode, size_t* violations,
                                     char** messages);
MVD_API mvd_status mvd_tree_eval(const mvd_tree* g, const mvd_measure* m, uint64_t* value);
MVD_API void mvd_tree_free(mvd_tree* g);

/* ---- analysis ---- */

/* Values that cannot be computed are reported as n/a with a reason. limited
 * (may be NULL) is set to 1 when one of them exceeded a resource cap. */
MVD_API mvd_status mvd_analyze(const mvd_table* t, const mvd_measure* m, const uint64_t* budgets, size_t n_budgets,
                               const mvd_limits* limits, int structured, char** out, int* limited);

/* ---- families ---- */

typedef enum mvd_family {
    MVD_FAMILY_T0 = 0,
    MVD_FAMILY_TK = 1,
    MVD_FAMILY_TKSTAR = 2,
    MVD_FAMILY_QN = 3,
    MVD_FAMILY_THRESHOLD = 4,
    MVD_FAMILY_RANDOM = 5
} mvd_family;

typedef struct mvd_family_spec {
    mvd_family kind;
    uint64_t k;                  /* tk, tkstar */
    uint64_t n;                  /* qn */
    const char* phi;             /* qn: "identity", "double", "square" or "0,1,3,..." */
    const uint64_t* thresholds;  /* threshold */
    size_t n_thresholds;
    uint64_t seed;               /* random */
    uint64_t columns;
    uint64_t rows;
    uint32_t arity;
    uint32_t universe;
} mvd_family_spec;

MVD_API void mvd_family_spec_default(mvd_family_spec* out);
/* Q_n tables carry their weights. */
MVD_API mvd_status mvd_generate(const mvd_family_spec* spec, const mvd_limits* limits, mvd_table** out);

/* ---- verification ---- */

typedef enum mvd_check_status {
    MVD_CHECK_PASS = 0,
    MVD_CHECK_FAIL = 1,
    MVD_CHECK_SKIPPED = 2,
    MVD_CHECK_ERROR = 3
} mvd_check_status;

typedef enum mvd_construction { MVD_CONSTRUCTION_M1 = 0, MVD_CONSTRUCTION_M10 = 1 } mvd_construction;
typedef enum mvd_family_check { MVD_CHECK_TK = 0, MVD_CHECK_QN = 1, MVD_CHECK_THRESHOLD = 2 } mvd_family_check;

typedef struct mvd_family_check_params {
    uint64_t min_k, max_k;        /* tk */
    uint64_t min_n, max_n;        /* qn */
    const char* phi;              /* qn */
    uint64_t count;               /* threshold: random sets */
    uint64_t max_size;            /* threshold: largest set */
    const uint64_t* thresholds;   /* threshold: one explicit set, may be NULL */
    size_t n_thresholds;
    uint64_t seed;
} mvd_family_check_params;

MVD_API void mvd_family_check_params_default(mvd_family_check_params* out);

MVD_API mvd_status mvd_report_create(mvd_report** out);
MVD_API void mvd_report_free(mvd_report* r);
MVD_API mvd_status mvd_verify_table(mvd_report* r, const mvd_table* t, const char* id, const mvd_measure* m,
                                    const mvd_limits* limits);
MVD_API mvd_status mvd_verify_construction(mvd_report* r, const mvd_table* t, const char* id, const mvd_measure* m,
                                           uint64_t n, mvd_construction which, const mvd_limits* limits);
MVD_API mvd_status mvd_verify_family(mvd_report* r, mvd_family_check which, const mvd_family_check_params* p,
                                     const mvd_limits* limits);
MVD_API size_t mvd_report_count(const mvd_report* r, mvd_check_status s);
/* 0 all passed or skipped, 1 a check failed, 3 a check hit an error. */
MVD_API int mvd_report_exit_code(const mvd_report* r);
MVD_API mvd_status mvd_report_render(mvd_report* r, int structured, char** out);

/* ---- profiles ---- */

/* partial may be NULL. */
MVD_API mvd_status mvd_profile(const mvd_table* const* tables, const char* const* ids, size_t count,
                               const mvd_measure* m, uint64_t n_max, const mvd_limits* limits, int structured,
                               char** out, int* partial);

#ifdef __cplusplus
}
#endif

#endif /* MVD_H */
