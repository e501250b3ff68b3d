/* forge: item-retrieval alignment toolkit.
 *
 * C API over the C++ core. Handles are opaque; every fallible call returns a
 * forge_status and leaves a thread-local message readable via
 * forge_last_error(). Handles are freed with their forge_*_free function.
 */

#ifndef FORGE_H
#define FORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FORGE_API __declspec(dllexport)
#else
#define FORGE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum forge_status {
  FORGE_OK = 0,
  FORGE_ERR_INVALID_ARGUMENT = 1,
  FORGE_ERR_IO = 2,
  FORGE_ERR_PARSE = 3,
  FORGE_ERR_VALIDATION = 4,
  FORGE_ERR_INSUFFICIENT_DATA = 5,
  FORGE_ERR_CONFIG = 6,
  FORGE_ERR_NETWORK = 7,
  FORGE_ERR_HTTP_STATUS = 8,
  FORGE_ERR_INTERNAL = 9
} forge_status;

typedef struct forge_catalog forge_catalog;
typedef struct forge_interactions forge_interactions;
typedef struct forge_templates forge_templates;
typedef struct forge_llm forge_llm;
typedef struct forge_dataset forge_dataset;
typedef struct forge_model forge_model;
typedef struct forge_report forge_report;
typedef struct forge_conversations forge_conversations;

FORGE_API const char* forge_version(void);
/* Message for the most recent failing call on this thread; never NULL. */
FORGE_API const char* forge_last_error(void);
FORGE_API void forge_set_max_jobs(int n);

/* --- catalog / interactions ------------------------------------------------ */

FORGE_API forge_status forge_catalog_load(const char* path, forge_catalog** out);
FORGE_API forge_status forge_catalog_save(const forge_catalog* cat, const char* path);
FORGE_API size_t forge_catalog_size(const forge_catalog* cat);
FORGE_API const char* forge_catalog_name(const forge_catalog* cat);
FORGE_API void forge_catalog_free(forge_catalog* cat);

FORGE_API forge_status forge_interactions_load(const char* path, const forge_catalog* cat,
                                               forge_interactions** out);
FORGE_API forge_status forge_interactions_save(const forge_interactions* log, const char* path);
FORGE_API size_t forge_interactions_users(const forge_interactions* log);
FORGE_API size_t forge_interactions_events(const forge_interactions* log);
FORGE_API size_t forge_interactions_short_users(const forge_interactions* log);
FORGE_API void forge_interactions_free(forge_interactions* log);

/* Deterministic synthetic domain. n_items >= 10, n_users >= 1. */
FORGE_API forge_status forge_synth(uint64_t seed, size_t n_items, size_t n_users,
                                   forge_catalog** out_cat, forge_interactions** out_log);

/* --- templates --------------------------------------------------------------- */

FORGE_API forge_status forge_templates_builtin(forge_templates** out);
FORGE_API forge_status forge_templates_load(const char* path, forge_templates** out);
FORGE_API forge_status forge_templates_save(const forge_templates* tpl, const char* path);
FORGE_API size_t forge_templates_size(const forge_templates* tpl);
FORGE_API void forge_templates_free(forge_templates* tpl);

/* --- text generation backend --------------------------------------------------- */

FORGE_API forge_status forge_llm_fallback(forge_llm** out);
FORGE_API forge_status forge_llm_remote(const char* endpoint, const char* model,
                                        const char* auth_env, forge_llm** out);
FORGE_API void forge_llm_free(forge_llm* llm);

/* --- dataset generation ---------------------------------------------------------- */

typedef struct forge_mix {
  size_t train_total;   /* 0 means the 1200 default */
  size_t test_total;    /* 0 means train_total / 3 */
  double fractions[10]; /* task order uh2i..uq2i; all zero means default mix */
} forge_mix;
FORGE_API void forge_mix_init(forge_mix* mix);

FORGE_API forge_status forge_generate(const forge_catalog* cat, const forge_interactions* log,
                                      const forge_templates* tpl, const forge_llm* llm,
                                      const forge_mix* mix, uint64_t seed,
                                      forge_dataset** out_train, forge_dataset** out_test);
FORGE_API forge_status forge_dataset_load(const char* path, forge_dataset** out);
FORGE_API forge_status forge_dataset_save(const forge_dataset* ds, const char* path);
FORGE_API size_t forge_dataset_size(const forge_dataset* ds);
FORGE_API void forge_dataset_free(forge_dataset* ds);

/* --- encoder ------------------------------------------------------------------------ */

typedef struct forge_train_opts {
  int epochs;             /* default 3 */
  int batch_size;         /* default 64 */
  double learning_rate;   /* default 0.08 */
  double warmup_fraction; /* default 0.1 */
  uint64_t seed;
  int deterministic;  /* default 1 */
  int dim;            /* default 64 */
  int bucket_count;   /* default 65536, power of two */
  double temperature; /* default 0.05 */
} forge_train_opts;
FORGE_API void forge_train_opts_init(forge_train_opts* opts);

/* Seed-initialized, untrained model. */
FORGE_API forge_status forge_model_init(const forge_train_opts* opts, forge_model** out);
/* Initialize from opts and train on the dataset's samples. */
FORGE_API forge_status forge_train(const forge_dataset* train, const forge_catalog* cat,
                                   const forge_train_opts* opts, forge_model** out);
FORGE_API forge_status forge_model_load(const char* path, forge_model** out);
FORGE_API forge_status forge_model_save(const forge_model* model, const char* path);
/* Multiply every embedding-table weight by factor (diagnostics). */
FORGE_API forge_status forge_model_scale(forge_model* model, double factor);
FORGE_API void forge_model_free(forge_model* model);

/* --- evaluation ----------------------------------------------------------------------- */

FORGE_API forge_status forge_evaluate(const forge_dataset* test, const forge_catalog* cat,
                                      const forge_model* model, int k, const char* ood_label,
                                      const char* label, forge_report** out);
FORGE_API forge_status forge_report_save(const forge_report* report, const char* path,
                                         int include_timings);
FORGE_API forge_status forge_report_load(const char* path, forge_report** out);
/* Value for a task name ("uh2i".."uq2i", "chat"). */
FORGE_API forge_status forge_report_value(const forge_report* report, const char* task,
                                          double* out_value);
/* Rendered comparison table; free with forge_string_free. */
FORGE_API forge_status forge_report_table(const forge_report* const* reports, size_t n,
                                          char** out_text);
FORGE_API void forge_string_free(char* s);
FORGE_API void forge_report_free(forge_report* report);

/* --- conversations ----------------------------------------------------------------------- */

FORGE_API forge_status forge_synth_conversations(const forge_catalog* cat,
                                                 const forge_interactions* log, size_t n,
                                                 uint64_t seed, const forge_llm* llm,
                                                 forge_conversations** out);
FORGE_API forge_status forge_conversations_load(const char* path, const forge_catalog* cat,
                                                forge_conversations** out);
FORGE_API forge_status forge_conversations_save(const forge_conversations* convs,
                                                const char* path);
FORGE_API size_t forge_conversations_size(const forge_conversations* convs);
FORGE_API forge_status forge_agent_eval(const forge_conversations* convs, const forge_catalog* cat,
                                        const forge_model* model, int k, const char* label,
                                        forge_report** out);
FORGE_API void forge_conversations_free(forge_conversations* convs);

#ifdef __cplusplus
}
#endif

#endif /* FORGE_H */
