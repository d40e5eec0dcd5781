/*
 * boardcrawl C API: crawl a bulletin board, rank its attachments, and query
 * the resulting store through a stable extern "C" surface.
 *
 * Every call returns a bc_status; BC_OK means success. On failure,
 * bc_last_error() returns a thread-local human-readable message describing
 * the most recent failing call on this thread.
 */
#ifndef BOARDCRAWL_H
#define BOARDCRAWL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BC_API __declspec(dllexport)
#else
#define BC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bc_status {
    BC_OK = 0,
    BC_ERR_INVALID_ARGUMENT = 1, /* bad option values, malformed URLs, config files */
    BC_ERR_SEED_UNREACHABLE = 2, /* the seed page could not be fetched or parsed */
    BC_ERR_IO = 3,               /* filesystem failure */
    BC_ERR_STORE_MISSING = 4,    /* no store at the given directory */
    BC_ERR_CORRUPT_STORE = 5,    /* a record or manifest failed validation */
    BC_ERR_EMPTY_QUERY = 6,      /* query tokenized to nothing */
    BC_ERR_PORT_IN_USE = 7,      /* fixture server could not bind */
    BC_ERR_INTERNAL = 8
} bc_status;

BC_API const char* bc_version(void);
BC_API const char* bc_status_name(bc_status status);
BC_API const char* bc_last_error(void);

/* ----- crawl ---------------------------------------------------------- */

typedef struct bc_crawl_options {
    const char* seed_url;  /* required, http only */
    const char* store_dir; /* required */
    int max_pages;         /* default 10000 */
    int parallelism;       /* default 4 */
    int per_host_delay_ms; /* default 200; 0 disables politeness waits */
    int fetch_timeout_ms;  /* default 10000 */
    int host_scope;        /* 1 = stay on the seed host (default), 0 = any host */
    int honor_robots;      /* default 0 */
    double damping;        /* default 0.85 */
    double epsilon;        /* default 1e-8 */
    int max_iterations;    /* default 200 */
    const char* suffix_config; /* optional JSON file overriding the suffix table */
} bc_crawl_options;

BC_API void bc_crawl_options_init(bc_crawl_options* options);

typedef struct bc_crawl_report {
    uint64_t pages_fetched;
    uint64_t attachments_found;
    uint64_t links_discarded;
    uint64_t fetch_errors;
    uint64_t pages_stored;
    uint64_t records_written;
    int rank_iterations;
    double rank_residual;
    int rank_converged;
} bc_crawl_report;

/* Crawls from the seed and writes the full store (pages, attachment records
 * with relevance headers, manifest). */
BC_API bc_status bc_crawl(const bc_crawl_options* options, bc_crawl_report* report);

/* ----- rank ----------------------------------------------------------- */

typedef struct bc_rank_report {
    int iterations;
    double residual;
    int converged;
    uint64_t records_rewritten;
} bc_rank_report;

/* Recomputes PageRank/AttachRank from the stored pages and rewrites every
 * record header and the manifest; payload bytes are untouched. */
BC_API bc_status bc_rank(const char* store_dir, double damping, double epsilon,
                         int max_iterations, bc_rank_report* report);

/* ----- search --------------------------------------------------------- */

typedef struct bc_search_results bc_search_results;

/* Builds (or loads, when index_file names an existing cache) the lexical
 * index over the store and ranks attachments by
 * lexical * (1 + lambda * attachrank / max attachrank). */
BC_API bc_status bc_search(const char* store_dir, const char* query, int k, double lambda,
                           const char* index_file, bc_search_results** results);

BC_API size_t bc_search_hit_count(const bc_search_results* results);
BC_API const char* bc_search_hit_url(const bc_search_results* results, size_t i);
BC_API const char* bc_search_hit_class(const bc_search_results* results, size_t i);
BC_API const char* bc_search_hit_page(const bc_search_results* results, size_t i);
BC_API const char* bc_search_hit_snippet(const bc_search_results* results, size_t i);
BC_API double bc_search_hit_lexical(const bc_search_results* results, size_t i);
BC_API double bc_search_hit_final(const bc_search_results* results, size_t i);
BC_API double bc_search_hit_attachrank(const bc_search_results* results, size_t i);
BC_API void bc_search_results_free(bc_search_results* results);

/* ----- fixtures ------------------------------------------------------- */

typedef struct bc_fixture_report {
    uint64_t pages;
    uint64_t attachments;
    uint64_t queries;
} bc_fixture_report;

/* Generates a deterministic bulletin-board site (plus ground_truth.json)
 * from a JSON spec file. */
BC_API bc_status bc_fixture_generate(const char* spec_json_path, const char* out_dir,
                                     bc_fixture_report* report);

typedef struct bc_server bc_server;

/* Serves a directory over HTTP on 127.0.0.1. port 0 picks a free port. */
BC_API bc_status bc_server_start(const char* dir, int port, bc_server** server);
BC_API int bc_server_port(const bc_server* server);
/* Stops and frees the server. */
BC_API bc_status bc_server_stop(bc_server* server);

#ifdef __cplusplus
}
#endif

#endif /* BOARDCRAWL_H */
