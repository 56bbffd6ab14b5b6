/* C API for the active visual search planning library.
 *
 * All functions return AVS_OK (0) on success or a nonzero error code;
 * avs_last_error_message() describes the most recent failure on the calling
 * thread. Objects are opaque handles released with the matching *_free
 * function. Strings returned through char** are released with
 * avs_string_free.
 */
#ifndef AVS_CAPI_H
#define AVS_CAPI_H

#ifdef __cplusplus
extern "C" {
#endif

enum avs_status {
    AVS_OK = 0,
    AVS_ERR_PARSE = 1,
    AVS_ERR_CONFIG = 2,
    AVS_ERR_IO = 3,
    AVS_ERR_GENERATION = 4,
    AVS_ERR_RUNTIME = 5,
    AVS_ERR_INVALID_ARGUMENT = 6,
};

typedef struct avs_map_t avs_map_t;
typedef struct avs_suite_t avs_suite_t;
typedef struct avs_report_t avs_report_t;

/* Short description of an error code. */
const char* avs_strerror(int code);
/* Detail message of the last failure on this thread ("" when none). */
const char* avs_last_error_message(void);

void avs_string_free(char* s);

/* --- Maps ------------------------------------------------------------- */

int avs_map_load_text(const char* text, avs_map_t** out);
int avs_map_load_file(const char* path, avs_map_t** out);
int avs_map_generate(int width, int height, int rooms, double candidate_density,
                     unsigned long long seed, avs_map_t** out);
/* preset: "easy", "medium" or "hard". */
int avs_map_generate_preset(const char* preset, unsigned long long seed, avs_map_t** out);
int avs_map_size(const avs_map_t* map, int* width, int* height, int* candidates);
int avs_map_to_text(const avs_map_t* map, char** text_out);
void avs_map_free(avs_map_t* map);

/* --- Benchmark suites -------------------------------------------------- */

int avs_suite_load(const char* config_path, avs_suite_t** out);
void avs_suite_free(avs_suite_t* suite);

typedef struct avs_run_options_t {
    const char* variant;      /* NULL = variants from the config */
    long long seed_from;      /* -1 = seeds from the config */
    long long seed_to;        /* inclusive */
    int jobs;                 /* concurrent episodes, >= 1 */
    int sequential_planner;   /* nonzero forces the single-threaded solver */
    int dump_heatmaps;        /* nonzero writes per-step posterior PGMs */
} avs_run_options_t;

void avs_run_options_init(avs_run_options_t* options);

/* Runs the episode grid and writes results.csv / metrics.json (plus optional
 * heatmaps) under out_dir; pass NULL or "" to skip the files. */
int avs_suite_run(const avs_suite_t* suite, const char* out_dir,
                  const avs_run_options_t* options, avs_report_t** out);

int avs_report_row_count(const avs_report_t* report, int* out);
int avs_report_summary_json(const avs_report_t* report, char** json_out);
void avs_report_free(avs_report_t* report);

/* Recomputes the per-(scenario, variant) metrics summary from a results CSV
 * produced by avs_suite_run. */
int avs_metrics_from_csv(const char* csv_path, char** json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AVS_CAPI_H */
