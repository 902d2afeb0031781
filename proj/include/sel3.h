/* sel3 - 3-isogeny Selmer bound and rational cube sum analyzer.
 *
 * C interface to the shared library. All analysis entry points take decimal
 * string arguments and an optional JSON options string, and hand back a
 * malloc'd JSON report that must be released with sel3_free_string().
 *
 * Return codes double as the CLI exit codes:
 *   0 success, 2 invalid input, 3 resource limit exceeded, 4 internal error.
 */
#ifndef SEL3_H
#define SEL3_H

#ifdef __cplusplus
extern "C" {
#endif

#define SEL3_OK 0
#define SEL3_ERR_INVALID 2
#define SEL3_ERR_LIMIT 3
#define SEL3_ERR_INTERNAL 4

typedef struct sel3_ctx sel3_ctx;

sel3_ctx* sel3_ctx_new(void);
void sel3_ctx_free(sel3_ctx* ctx);

/* class-group cache file; pass NULL or "" to disable */
int sel3_ctx_set_cache_path(sel3_ctx* ctx, const char* path);
/* enumeration cap on |discriminant| (default 25000000) */
int sel3_ctx_set_disc_limit(sel3_ctx* ctx, long long limit);

/* detail message for the calling thread's last failing call */
const char* sel3_last_error(const sel3_ctx* ctx);

/* options JSON (any field optional):
 *   {"root_number": -1, "rank": 4, "sha_phi": 0}                    (type1)
 *   {"rank": 2}                                                     (type2)
 *   {"assume_sha_even": true, "rank_positive": true,
 *    "search_height": 40}                                           (cubesum)
 */
int sel3_analyze_type1(sel3_ctx* ctx, const char* a, const char* options_json,
                       char** json_out);
int sel3_analyze_type2(sel3_ctx* ctx, const char* a, const char* b,
                       const char* options_json, char** json_out);
int sel3_cube_sum(sel3_ctx* ctx, const char* D, const char* options_json,
                  char** json_out);

/* one CSV row (header via sel3_table_header); which = 1 or 2; rank column is
 * passed through from r_ext (may be empty) */
int sel3_table_row(sel3_ctx* ctx, int which, const char* a, const char* b,
                   const char* r_ext, char** csv_out);
int sel3_table_header(int which, char** csv_out);

void sel3_free_string(char* s);
const char* sel3_version(void);

#ifdef __cplusplus
}
#endif

#endif /* SEL3_H */
