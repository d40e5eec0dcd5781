// boardcrawl command line: crawl -> rank -> store -> search, plus fixture
// tooling. Talks to the engine exclusively through the boardcrawl C API.
//
// Exit codes: 0 success, 2 input error (bad flags, bad URL, missing store,
// unreachable seed), 3 query error (empty or stopword-only query).

#include <boardcrawl.h>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitQuery = 3;

std::atomic<bool> g_stop_requested{false};

void handle_signal(int) { g_stop_requested = true; }

int fail(bc_status status) {
    std::cerr << "error: " << bc_last_error() << " (" << bc_status_name(status) << ")\n";
    return status == BC_ERR_EMPTY_QUERY ? kExitQuery : kExitInput;
}

std::string escape_json(const std::string& s) {
    std::ostringstream out;
    for (unsigned char c : s) {
        switch (c) {
            case '"': out << "\\\""; break;
            case '\\': out << "\\\\"; break;
            case '\n': out << "\\n"; break;
            case '\r': out << "\\r"; break;
            case '\t': out << "\\t"; break;
            default:
                if (c < 0x20) {
                    out << "\\u" << std::hex << std::setw(4) << std::setfill('0') << int(c)
                        << std::dec;
                } else {
                    out << c;
                }
        }
    }
    return out.str();
}

struct CrawlArgs {
    std::string url;
    std::string out_dir;
    int max_pages = 10000;
    int parallelism = 4;
    int delay_ms = 200;
    int timeout_ms = 10000;
    std::string scope = "host";
    double damping = 0.85;
    double epsilon = 1e-8;
    int max_iterations = 200;
    bool robots = false;
    std::string suffix_config;
};

int run_crawl(const CrawlArgs& args) {
    bc_crawl_options options;
    bc_crawl_options_init(&options);
    options.seed_url = args.url.c_str();
    options.store_dir = args.out_dir.c_str();
    options.max_pages = args.max_pages;
    options.parallelism = args.parallelism;
    options.per_host_delay_ms = args.delay_ms;
    options.fetch_timeout_ms = args.timeout_ms;
    options.host_scope = args.scope == "host" ? 1 : 0;
    options.honor_robots = args.robots ? 1 : 0;
    options.damping = args.damping;
    options.epsilon = args.epsilon;
    options.max_iterations = args.max_iterations;
    if (!args.suffix_config.empty()) options.suffix_config = args.suffix_config.c_str();

    bc_crawl_report report{};
    bc_status status = bc_crawl(&options, &report);
    if (status != BC_OK) return fail(status);

    std::cout << "crawled " << report.pages_fetched << " pages, " << report.attachments_found
              << " attachments (" << report.fetch_errors << " fetch errors, "
              << report.links_discarded << " links discarded)\n";
    std::cout << "pagerank: " << report.rank_iterations << " iterations, residual "
              << report.rank_residual << (report.rank_converged ? " (converged)" : " (NOT converged)")
              << "\n";
    std::cout << "store: " << args.out_dir << " (" << report.pages_stored << " pages, "
              << report.records_written << " records)\n";
    if (report.fetch_errors > 0) {
        std::cerr << "warning: " << report.fetch_errors << " pages could not be fetched\n";
    }
    return kExitOk;
}

int run_rank(const std::string& store, double damping, double epsilon, int max_iterations) {
    bc_rank_report report{};
    bc_status status = bc_rank(store.c_str(), damping, epsilon, max_iterations, &report);
    if (status != BC_OK) return fail(status);
    std::cout << "reranked " << report.records_rewritten << " records: " << report.iterations
              << " iterations, residual " << report.residual
              << (report.converged ? " (converged)" : " (NOT converged)") << "\n";
    return kExitOk;
}

int run_search(const std::string& store, const std::string& query, int k, double lambda,
               const std::string& format, const std::string& index_file) {
    bc_search_results* results = nullptr;
    bc_status status = bc_search(store.c_str(), query.c_str(), k, lambda,
                                 index_file.empty() ? nullptr : index_file.c_str(), &results);
    if (status != BC_OK) return fail(status);

    size_t count = bc_search_hit_count(results);
    if (format == "records") {
        for (size_t i = 0; i < count; ++i) {
            std::ostringstream line;
            line << "{\"rank\":" << (i + 1)
                 << ",\"final\":" << bc_search_hit_final(results, i)
                 << ",\"lexical\":" << bc_search_hit_lexical(results, i)
                 << ",\"attachrank\":" << bc_search_hit_attachrank(results, i)
                 << ",\"class\":\"" << bc_search_hit_class(results, i)
                 << "\",\"url\":\"" << escape_json(bc_search_hit_url(results, i))
                 << "\",\"page\":\"" << escape_json(bc_search_hit_page(results, i))
                 << "\",\"snippet\":\"" << escape_json(bc_search_hit_snippet(results, i))
                 << "\"}";
            std::cout << line.str() << "\n";
        }
    } else {
        if (count == 0) {
            std::cout << "no matches\n";
        } else {
            std::cout << std::left << std::setw(4) << "#" << std::setw(12) << "final"
                      << std::setw(12) << "lexical" << std::setw(12) << "attachrank"
                      << std::setw(14) << "class" << "attachment\n";
            for (size_t i = 0; i < count; ++i) {
                std::ostringstream final_s, lex_s, ar_s;
                final_s << std::setprecision(6) << bc_search_hit_final(results, i);
                lex_s << std::setprecision(6) << bc_search_hit_lexical(results, i);
                ar_s << std::setprecision(6) << bc_search_hit_attachrank(results, i);
                std::cout << std::left << std::setw(4) << (i + 1) << std::setw(12) << final_s.str()
                          << std::setw(12) << lex_s.str() << std::setw(12) << ar_s.str()
                          << std::setw(14) << bc_search_hit_class(results, i)
                          << bc_search_hit_url(results, i) << "\n";
                std::cout << "    page: " << bc_search_hit_page(results, i) << "\n";
                const char* snippet = bc_search_hit_snippet(results, i);
                if (snippet[0] != '\0') std::cout << "    " << snippet << "\n";
            }
        }
    }
    bc_search_results_free(results);
    return kExitOk;
}

int run_fixture_gen(const std::string& spec, const std::string& out) {
    bc_fixture_report report{};
    bc_status status = bc_fixture_generate(spec.c_str(), out.c_str(), &report);
    if (status != BC_OK) return fail(status);
    std::cout << "generated " << report.pages << " pages, " << report.attachments
              << " attachments";
    if (report.queries > 0) std::cout << ", " << report.queries << " planted queries";
    std::cout << " in " << out << "\n";
    return kExitOk;
}

int run_fixture_serve(const std::string& dir, int port) {
    bc_server* server = nullptr;
    bc_status status = bc_server_start(dir.c_str(), port, &server);
    if (status != BC_OK) return fail(status);
    std::cout << "serving " << dir << " at http://127.0.0.1:" << bc_server_port(server)
              << "/ (Ctrl-C to stop)\n";
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    while (!g_stop_requested) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    bc_server_stop(server);
    std::cout << "stopped\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boardcrawl: bulletin-board crawler and attachment search"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(bc_version()));

    const char* env_store = std::getenv("BOARDCRAWL_STORE");
    std::string default_store = env_store ? env_store : "";

    CrawlArgs crawl_args;
    crawl_args.out_dir = default_store;
    auto* crawl = app.add_subcommand("crawl", "Crawl a board and write the full store");
    crawl->add_option("url", crawl_args.url, "Seed URL (http)")->required();
    auto* out_opt = crawl->add_option("--out", crawl_args.out_dir,
                                      "Store directory (default: $BOARDCRAWL_STORE)");
    if (default_store.empty()) out_opt->required();
    crawl->add_option("--max-pages", crawl_args.max_pages, "Page cap")->check(CLI::PositiveNumber);
    crawl->add_option("--parallelism", crawl_args.parallelism, "Concurrent fetches")
        ->check(CLI::PositiveNumber);
    crawl->add_option("--delay", crawl_args.delay_ms, "Per-host delay in ms")
        ->check(CLI::NonNegativeNumber);
    crawl->add_option("--timeout", crawl_args.timeout_ms, "Fetch timeout in ms")
        ->check(CLI::PositiveNumber);
    crawl->add_option("--scope", crawl_args.scope, "host (stay on seed host) or any")
        ->check(CLI::IsMember({"host", "any"}));
    crawl->add_option("--d", crawl_args.damping, "Damping factor");
    crawl->add_option("--epsilon", crawl_args.epsilon, "Rank convergence tolerance");
    crawl->add_option("--max-iterations", crawl_args.max_iterations, "Rank iteration cap")
        ->check(CLI::PositiveNumber);
    crawl->add_flag("--robots", crawl_args.robots, "Honor robots.txt");
    crawl->add_option("--suffix-config", crawl_args.suffix_config,
                      "JSON file overriding the suffix table");

    std::string rank_store = default_store;
    double rank_d = 0.85, rank_epsilon = 1e-8;
    int rank_iters = 200;
    auto* rank = app.add_subcommand("rank", "Recompute ranks for an existing store");
    auto* rank_store_opt =
        rank->add_option("--store", rank_store, "Store directory (default: $BOARDCRAWL_STORE)");
    if (default_store.empty()) rank_store_opt->required();
    rank->add_option("--d", rank_d, "Damping factor");
    rank->add_option("--epsilon", rank_epsilon, "Rank convergence tolerance");
    rank->add_option("--max-iterations", rank_iters, "Rank iteration cap")
        ->check(CLI::PositiveNumber);

    std::vector<std::string> query_words;
    std::string search_store_dir = default_store, search_format = "table", search_index;
    int search_k = 10;
    double search_lambda = 1.0;
    auto* search = app.add_subcommand("search", "Query a store, AttachRank-modified");
    search->add_option("query", query_words, "Query terms")->required()->expected(-1);
    auto* search_store_opt = search->add_option("--store", search_store_dir,
                                                "Store directory (default: $BOARDCRAWL_STORE)");
    if (default_store.empty()) search_store_opt->required();
    search->add_option("--k", search_k, "Result count")->check(CLI::PositiveNumber);
    search->add_option("--lambda", search_lambda, "AttachRank weight (0 = pure lexical)")
        ->check(CLI::NonNegativeNumber);
    search->add_option("--format", search_format, "table or records")
        ->check(CLI::IsMember({"table", "records"}));
    search->add_option("--index-file", search_index, "Index cache file (built when absent)");

    auto* fixture = app.add_subcommand("fixture", "Fixture site tooling");
    fixture->require_subcommand(1);
    std::string gen_spec, gen_out;
    auto* gen = fixture->add_subcommand("gen", "Generate a deterministic board site");
    gen->add_option("--spec", gen_spec, "Fixture spec JSON file")->required();
    gen->add_option("--out", gen_out, "Output directory")->required();
    std::string serve_dir;
    int serve_port = 8080;
    auto* serve = fixture->add_subcommand("serve", "Serve a directory over HTTP");
    serve->add_option("dir", serve_dir, "Directory to serve")->required();
    serve->add_option("--port", serve_port, "Port (0 picks a free one)")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitInput;
    }

    if (crawl->parsed()) return run_crawl(crawl_args);
    if (rank->parsed()) return run_rank(rank_store, rank_d, rank_epsilon, rank_iters);
    if (search->parsed()) {
        std::string query;
        for (const auto& word : query_words) {
            if (!query.empty()) query += ' ';
            query += word;
        }
        return run_search(search_store_dir, query, search_k, search_lambda, search_format,
                          search_index);
    }
    if (gen->parsed()) return run_fixture_gen(gen_spec, gen_out);
    if (serve->parsed()) return run_fixture_serve(serve_dir, serve_port);
    return kExitInput;
}
