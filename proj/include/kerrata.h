#ifndef KERRATA_H
#define KERRATA_H

/* k-mismatch dictionary look-up. Every call returns a kerr_status; on a
 * nonzero status kerr_last_error() describes the failure for the calling
 * thread. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define KERR_API __declspec(dllexport)
#else
#define KERR_API __attribute__((visibility("default")))
#endif

typedef enum kerr_status {
    KERR_OK = 0,
    KERR_VERIFY_FAILED = 1,
    KERR_INPUT_ERROR = 2,
    KERR_RESOURCE_CAP = 3,
    KERR_INTERNAL = 4
} kerr_status;

typedef struct kerr_index kerr_index;
typedef struct kerr_result kerr_result;

typedef struct kerr_build_options {
    uint32_t k;
    int sampled;       /* 0: full suffix index, 1: sampled */
    int fingerprints;  /* resolve last-level searches by fingerprints */
    uint64_t seed;
    size_t memcap_mb;  /* 0: KERRATA_MEMCAP_MB or none */
    int force_errata;  /* use the tree even for tiny dictionaries */
    int fault;         /* test hooks, 0 in normal use */
} kerr_build_options;

typedef struct kerr_stats {
    uint64_t prefix_search_ops;
    uint64_t word_blocks_read;
    uint64_t wla_queries;
    uint64_t candidates_verified;
    uint64_t reported;
    uint64_t suffix_queries;
    uint64_t fingerprint_probes;
    uint64_t duplicates_suppressed;
} kerr_stats;

typedef struct kerr_info {
    uint32_t sigma;
    uint64_t m;
    uint64_t d;
    uint32_t k;
    int sampled;
    int fingerprints;
    uint32_t sample_interval;
    uint64_t tries;
    uint64_t total_strings;
    uint64_t size_bound;   /* UINT64_MAX when it overflows */
    uint64_t query_bound;  /* prefix-search budget per query */
    uint64_t memory_bytes;
    uint64_t fingerprint_base;
} kerr_info;

typedef struct kerr_verify_report {
    uint64_t trials;
    uint64_t failures;
    uint64_t max_prefix_search_ops;
} kerr_verify_report;

typedef struct kerr_fuzz_options {
    uint64_t max_d;
    uint64_t max_m;
    uint32_t max_k;
    uint64_t seed;
    uint64_t rounds;
    int fault;
} kerr_fuzz_options;

KERR_API void kerr_build_options_init(kerr_build_options* opt);
KERR_API void kerr_fuzz_options_init(kerr_fuzz_options* opt);

/* Dictionary text: one string per line, all the same length. */
KERR_API kerr_status kerr_build_text(const char* text, size_t len, const kerr_build_options* opt, kerr_index** out);
KERR_API kerr_status kerr_build_file(const char* path, const kerr_build_options* opt, kerr_index** out);
KERR_API kerr_status kerr_save(const kerr_index* idx, const char* path);
KERR_API kerr_status kerr_load(const char* path, kerr_index** out);
KERR_API void kerr_index_free(kerr_index* idx);
KERR_API kerr_status kerr_index_info(const kerr_index* idx, kerr_info* out);

KERR_API kerr_status kerr_query(const kerr_index* idx, const char* q, size_t len, kerr_result** out);
KERR_API size_t kerr_result_count(const kerr_result* res);
/* Ascending ids; valid until kerr_result_free. */
KERR_API const uint32_t* kerr_result_ids(const kerr_result* res);
KERR_API void kerr_result_stats(const kerr_result* res, kerr_stats* out);
KERR_API void kerr_result_free(kerr_result* res);

/* KERR_VERIFY_FAILED carries the first counterexample in kerr_last_error(). */
KERR_API kerr_status kerr_verify(const kerr_index* idx, uint64_t trials, uint64_t seed, unsigned threads,
                                 kerr_verify_report* out);
/* On disagreement the shrunk reproduction is in kerr_last_error(). */
KERR_API kerr_status kerr_fuzz(const kerr_fuzz_options* opt, uint64_t* rounds_done);

KERR_API uint64_t kerr_size_budget(uint64_t d, uint32_t k);
KERR_API uint64_t kerr_query_budget(uint64_t d, uint32_t k);

KERR_API const char* kerr_last_error(void);

#ifdef __cplusplus
}
#endif

#endif
