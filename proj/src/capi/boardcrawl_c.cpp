#include "boardcrawl.h"

#include <cstring>
#include <string>

#include "boardcrawl/error.hpp"
#include "boardcrawl/fixture.hpp"
#include "boardcrawl/pipeline.hpp"
#include "boardcrawl/search.hpp"
#include "boardcrawl/url.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

// Maps core exceptions onto status codes; the message lands in
// bc_last_error().
template <typename Fn>
bc_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const bc::ConfigError& e) {
        set_error(e.what());
        return BC_ERR_INVALID_ARGUMENT;
    } catch (const bc::SeedError& e) {
        set_error(e.what());
        return BC_ERR_SEED_UNREACHABLE;
    } catch (const bc::EmptyQueryError& e) {
        set_error(e.what());
        return BC_ERR_EMPTY_QUERY;
    } catch (const bc::CorruptRecordError& e) {
        set_error(e.what());
        return BC_ERR_CORRUPT_STORE;
    } catch (const bc::PortInUseError& e) {
        set_error(e.what());
        return BC_ERR_PORT_IN_USE;
    } catch (const bc::StructuralError& e) {
        set_error(e.what());
        return BC_ERR_CORRUPT_STORE;
    } catch (const bc::IoError& e) {
        set_error(e.what());
        // "no store at ..." is the common operator mistake; give it its own code.
        if (std::string(e.what()).find("missing manifest.json") != std::string::npos) {
            return BC_ERR_STORE_MISSING;
        }
        return BC_ERR_IO;
    } catch (const std::exception& e) {
        set_error(e.what());
        return BC_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return BC_ERR_INTERNAL;
    }
}

}  // namespace

struct bc_search_results {
    std::vector<bc::SearchHit> hits;
    std::vector<std::string> classes;  // stable storage for returned pointers
};

extern "C" {

const char* bc_version(void) { return "0.1.0"; }

const char* bc_status_name(bc_status status) {
    switch (status) {
        case BC_OK: return "ok";
        case BC_ERR_INVALID_ARGUMENT: return "invalid argument";
        case BC_ERR_SEED_UNREACHABLE: return "seed unreachable";
        case BC_ERR_IO: return "io error";
        case BC_ERR_STORE_MISSING: return "store missing";
        case BC_ERR_CORRUPT_STORE: return "corrupt store";
        case BC_ERR_EMPTY_QUERY: return "empty query";
        case BC_ERR_PORT_IN_USE: return "port in use";
        case BC_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* bc_last_error(void) { return g_last_error.c_str(); }

void bc_crawl_options_init(bc_crawl_options* options) {
    if (!options) return;
    std::memset(options, 0, sizeof(*options));
    options->max_pages = 10000;
    options->parallelism = 4;
    options->per_host_delay_ms = 200;
    options->fetch_timeout_ms = 10000;
    options->host_scope = 1;
    options->honor_robots = 0;
    options->damping = 0.85;
    options->epsilon = 1e-8;
    options->max_iterations = 200;
}

bc_status bc_crawl(const bc_crawl_options* options, bc_crawl_report* report) {
    return guarded([&]() -> bc_status {
        if (!options || !options->seed_url || !options->store_dir) {
            set_error("seed_url and store_dir are required");
            return BC_ERR_INVALID_ARGUMENT;
        }
        auto seed = bc::normalize_absolute_url(options->seed_url);
        if (!seed) {
            set_error(std::string("not a crawlable URL: ") + options->seed_url);
            return BC_ERR_INVALID_ARGUMENT;
        }
        bc::PipelineConfig config;
        config.crawl.seed = *seed;
        config.crawl.host_scope = options->host_scope != 0;
        config.crawl.max_pages = options->max_pages;
        config.crawl.parallelism = options->parallelism;
        config.crawl.per_host_delay = std::chrono::milliseconds(options->per_host_delay_ms);
        config.crawl.fetch_timeout = std::chrono::milliseconds(options->fetch_timeout_ms);
        config.crawl.honor_robots = options->honor_robots != 0;
        if (options->suffix_config && options->suffix_config[0] != '\0') {
            config.crawl.suffixes = bc::load_suffix_config(options->suffix_config);
        }
        config.rank.damping = options->damping;
        config.rank.epsilon = options->epsilon;
        config.rank.max_iterations = options->max_iterations;
        config.store_dir = options->store_dir;

        bc::PipelineReport result = bc::run_crawl_pipeline(config);
        if (report) {
            report->pages_fetched = result.stats.pages_fetched;
            report->attachments_found = result.stats.attachments_found;
            report->links_discarded = result.stats.links_discarded;
            report->fetch_errors = result.stats.fetch_errors;
            report->pages_stored = result.pages_stored;
            report->records_written = result.records_written;
            report->rank_iterations = result.rank_echo.iterations_used;
            report->rank_residual = result.rank_echo.final_residual;
            report->rank_converged = result.rank_echo.converged ? 1 : 0;
        }
        return BC_OK;
    });
}

bc_status bc_rank(const char* store_dir, double damping, double epsilon, int max_iterations,
                  bc_rank_report* report) {
    return guarded([&]() -> bc_status {
        if (!store_dir) {
            set_error("store_dir is required");
            return BC_ERR_INVALID_ARGUMENT;
        }
        bc::RankConfig config;
        config.damping = damping;
        config.epsilon = epsilon;
        config.max_iterations = max_iterations;
        bc::RankConfigEcho echo = bc::rerank_store(store_dir, config);
        if (report) {
            report->iterations = echo.iterations_used;
            report->residual = echo.final_residual;
            report->converged = echo.converged ? 1 : 0;
            report->records_rewritten = bc::Store::open(store_dir).manifest().attachments.size();
        }
        return BC_OK;
    });
}

bc_status bc_search(const char* store_dir, const char* query, int k, double lambda,
                    const char* index_file, bc_search_results** results) {
    return guarded([&]() -> bc_status {
        if (!store_dir || !query || !results) {
            set_error("store_dir, query and results are required");
            return BC_ERR_INVALID_ARGUMENT;
        }
        std::optional<std::filesystem::path> cache;
        if (index_file && index_file[0] != '\0') cache = index_file;
        bc::QueryResult outcome = bc::search_store(store_dir, query, k, lambda, cache);
        auto* out = new bc_search_results;
        out->hits = std::move(outcome.hits);
        out->classes.reserve(out->hits.size());
        for (const auto& hit : out->hits) {
            out->classes.emplace_back(bc::class_name(hit.cls));
        }
        *results = out;
        return BC_OK;
    });
}

size_t bc_search_hit_count(const bc_search_results* results) {
    return results ? results->hits.size() : 0;
}

const char* bc_search_hit_url(const bc_search_results* results, size_t i) {
    return results && i < results->hits.size() ? results->hits[i].id.url.c_str() : "";
}

const char* bc_search_hit_class(const bc_search_results* results, size_t i) {
    return results && i < results->classes.size() ? results->classes[i].c_str() : "";
}

const char* bc_search_hit_page(const bc_search_results* results, size_t i) {
    return results && i < results->hits.size() ? results->hits[i].containing_page.str().c_str()
                                               : "";
}

const char* bc_search_hit_snippet(const bc_search_results* results, size_t i) {
    return results && i < results->hits.size() ? results->hits[i].snippet.c_str() : "";
}

double bc_search_hit_lexical(const bc_search_results* results, size_t i) {
    return results && i < results->hits.size() ? results->hits[i].lexical : 0.0;
}

double bc_search_hit_final(const bc_search_results* results, size_t i) {
    return results && i < results->hits.size() ? results->hits[i].final_score : 0.0;
}

double bc_search_hit_attachrank(const bc_search_results* results, size_t i) {
    return results && i < results->hits.size() ? results->hits[i].ar : 0.0;
}

void bc_search_results_free(bc_search_results* results) { delete results; }

bc_status bc_fixture_generate(const char* spec_json_path, const char* out_dir,
                              bc_fixture_report* report) {
    return guarded([&]() -> bc_status {
        if (!spec_json_path || !out_dir) {
            set_error("spec path and out_dir are required");
            return BC_ERR_INVALID_ARGUMENT;
        }
        bc::FixtureSpec spec = bc::FixtureSpec::from_json_file(spec_json_path);
        bc::GroundTruth gt = bc::generate_site(spec, out_dir);
        if (report) {
            report->pages = gt.pages.size();
            report->attachments = gt.attachments.size();
            report->queries = gt.queries.size();
        }
        return BC_OK;
    });
}

struct bc_server {
    std::unique_ptr<bc::FixtureServer> impl;
};

bc_status bc_server_start(const char* dir, int port, bc_server** server) {
    return guarded([&]() -> bc_status {
        if (!dir || !server) {
            set_error("dir and server are required");
            return BC_ERR_INVALID_ARGUMENT;
        }
        auto running = std::make_unique<bc::FixtureServer>(dir, port);
        *server = new bc_server{std::move(running)};
        return BC_OK;
    });
}

int bc_server_port(const bc_server* server) { return server ? server->impl->port() : 0; }

bc_status bc_server_stop(bc_server* server) {
    return guarded([&]() -> bc_status {
        if (!server) return BC_OK;
        server->impl->stop();
        delete server;
        return BC_OK;
    });
}

}  // extern "C"
