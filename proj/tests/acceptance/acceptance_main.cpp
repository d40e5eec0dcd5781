// Acceptance suite: one criterion per run_* function, one [PASS]/[FAIL] line
// per criterion on stdout, nonzero exit when anything fails. Criteria are
// numbered and run in order; later ones reuse artifacts of earlier ones
// (the 200-page store from #5 feeds #9).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "boardcrawl/classify.hpp"
#include "boardcrawl/crawl.hpp"
#include "boardcrawl/fixture.hpp"
#include "boardcrawl/graph.hpp"
#include "boardcrawl/pipeline.hpp"
#include "boardcrawl/rank.hpp"
#include "boardcrawl/record.hpp"
#include "boardcrawl/search.hpp"
#include "boardcrawl/store.hpp"
#include "boardcrawl/url.hpp"
#include "oracles/dense_pagerank.hpp"
#include "oracles/reference_scorer.hpp"
#include "support/fake_fetcher.hpp"
#include "support/temp_dir.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct CriterionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw CriterionFailure(message);
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(3);
    out << v;
    return out.str();
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bc::PageId pid(const std::string& s) { return bc::PageId::from_normalized(s); }

bc::LinkGraph graph_from_adjacency(const std::vector<std::vector<int>>& adjacency) {
    std::vector<bc::PageRecord> records;
    for (std::size_t i = 0; i < adjacency.size(); ++i) {
        std::vector<bc::PageId> links;
        for (int t : adjacency[i]) {
            links.push_back(pid("http://g.example/n" + std::to_string(t)));
        }
        records.push_back(bc::make_page_record(pid("http://g.example/n" + std::to_string(i)), "",
                                               "", {}, 200, links, {}));
    }
    return bc::seal_graph(records);
}

// Random digraph without dangling nodes: every node gets one guaranteed
// outlink plus Bernoulli extras.
std::vector<std::vector<int>> random_dangling_free(std::mt19937& rng, int n) {
    std::vector<std::vector<int>> adjacency(n);
    for (int i = 0; i < n; ++i) {
        int fixed = static_cast<int>(rng() % static_cast<unsigned>(n - 1));
        adjacency[i].push_back(fixed >= i ? fixed + 1 : fixed);
        for (int j = 0; j < n; ++j) {
            if (j != i && rng() % 4 == 0) adjacency[i].push_back(j);
        }
    }
    return adjacency;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CriterionFailure("cannot read " + path.string());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::map<std::string, std::string> read_tree(const std::filesystem::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        files[std::filesystem::relative(entry.path(), root).generic_string()] =
            read_file(entry.path());
    }
    return files;
}

// Shared context across criteria.
struct Context {
    test_support::TempDir work{"acceptance"};
    std::optional<bc::GroundTruth> big_gt;      // 200-page fixture (criterion 5)
    std::filesystem::path big_site;
    std::filesystem::path big_store;
    std::string big_base_url;
    std::string detail;  // set by each criterion for the pass line
};

// --- 1. PageRank oracle equivalence -----------------------------------

void run_oracle_equivalence(Context& ctx) {
    auto start = Clock::now();
    std::mt19937 rng(20260808);
    bc::RankConfig config;
    config.epsilon = 1e-12;
    config.max_iterations = 2000;
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        int n = 3 + static_cast<int>(rng() % 48);  // 3..50 nodes
        auto graph = graph_from_adjacency(random_dangling_free(rng, n));
        auto iterative = bc::compute_pagerank(graph, config);
        require(iterative.converged, "iteration failed to converge");
        auto solved = oracle::dense_pagerank(graph, config.damping);
        for (const auto& [id, value] : solved) {
            double err = std::abs(iterative.values.at(id) - value);
            worst = std::max(worst, err);
            require(err < 1e-8, "iterative rank differs from dense solve by " + fmt(err));
        }
    }
    double elapsed = seconds_since(start);
    require(elapsed < 5.0, "oracle sweep took " + fmt(elapsed) + "s (budget 5s)");
    ctx.detail = "500 graphs, max |delta| " + fmt(worst) + ", " + fmt(elapsed) + "s";
}

// --- 2. Fixed-point anchors --------------------------------------------

void run_fixed_point_anchors(Context& ctx) {
    auto mutual = bc::compute_pagerank(graph_from_adjacency({{1}, {0}}));
    require(std::abs(mutual.values.at(pid("http://g.example/n0")) - 1.0) <= 1e-9,
            "two-node mutual link should rank 1.0");
    require(std::abs(mutual.values.at(pid("http://g.example/n1")) - 1.0) <= 1e-9,
            "two-node mutual link should rank 1.0");

    auto isolated = bc::compute_pagerank(graph_from_adjacency({{}}));
    require(std::abs(isolated.values.at(pid("http://g.example/n0")) - 0.15) <= 1e-12,
            "isolated node should rank 1 - d = 0.15");

    std::mt19937 rng(99);
    double worst = 0.0;
    for (int n : {3, 10, 24, 37}) {
        auto graph = graph_from_adjacency(random_dangling_free(rng, n));
        auto ranks = bc::compute_pagerank(graph);
        double sum = 0.0;
        for (const auto& [_, v] : ranks.values) sum += v;
        double err = std::abs(sum - n);
        worst = std::max(worst, err / n);
        require(err <= n * 1e-6, "closed graph mass should be N, off by " + fmt(err));
    }
    ctx.detail = "anchors exact, worst closed-graph mass error " + fmt(worst) + " per node";
}

// --- 3. Normalized distribution sums to one ----------------------------

void run_distribution(Context& ctx) {
    std::mt19937 rng(123);
    double worst = 0.0;
    std::vector<bc::LinkGraph> graphs;
    graphs.push_back(graph_from_adjacency({{1}, {0}}));
    graphs.push_back(graph_from_adjacency({{}}));
    graphs.push_back(graph_from_adjacency({{1}, {2}, {0}}));
    for (int n : {5, 17, 40}) graphs.push_back(graph_from_adjacency(random_dangling_free(rng, n)));
    for (const auto& graph : graphs) {
        auto normalized = bc::normalize_ranks(bc::compute_pagerank(graph));
        double sum = 0.0;
        for (const auto& [_, v] : normalized) sum += v;
        worst = std::max(worst, std::abs(sum - 1.0));
        require(std::abs(sum - 1.0) <= 1e-9, "normalized ranks should sum to 1");
    }
    ctx.detail = std::to_string(graphs.size()) + " graphs, worst |sum-1| " + fmt(worst);
}

// --- 4. AttachRank law over a fixture crawl ----------------------------

void run_attachrank_law(Context& ctx) {
    auto site = ctx.work / "law_site";
    auto store_dir = ctx.work / "law_store";
    bc::FixtureSpec spec;
    spec.seed = 404;
    spec.n_pages = 60;
    spec.n_attachments = 90;
    spec.multi_containment_fraction = 0.15;
    bc::generate_site(spec, site);
    test_support::DirFetcher fetcher(site);

    bc::PipelineConfig config;
    config.crawl.seed = *bc::normalize_absolute_url(fetcher.url_of("index.html"));
    config.crawl.parallelism = 1;
    config.crawl.per_host_delay = std::chrono::milliseconds(0);
    config.store_dir = store_dir;
    bc::run_crawl_pipeline(config, fetcher);

    bc::Store store = bc::Store::open(store_dir);
    auto echo = store.manifest().rank_config;
    require(echo.has_value(), "manifest must echo the rank config");
    auto graph = bc::seal_graph(store.load_all_pages());
    auto ranks = bc::compute_pagerank(graph, echo->config);

    std::size_t single = 0, multi = 0;
    for (const auto& entry : store.manifest().attachments) {
        auto record = bc::read_attachment_record(store.root() / entry.path);
        require(!record.containing_pages.empty(), "record must list containing pages");
        if (record.containing_pages.size() == 1) {
            ++single;
            double pr = ranks.values.at(record.containing_pages.front());
            require(record.ar == pr, "single-containment attachrank must equal the page rank "
                                     "bit-for-bit");
        } else {
            ++multi;
            double best = 0.0;
            for (const auto& page : record.containing_pages) {
                best = std::max(best, ranks.values.at(page));
            }
            require(record.ar == best, "multi-containment attachrank must equal the max");
        }
    }
    require(single > 0, "fixture must produce single-containment attachments");
    require(multi > 0, "fixture must produce multi-containment attachments");
    ctx.detail = std::to_string(single) + " single + " + std::to_string(multi) +
                 " multi records, all bit-exact";
}

// --- 5. End-to-end crawl fidelity over HTTP ----------------------------

void run_crawl_fidelity(Context& ctx) {
    auto start = Clock::now();
    ctx.big_site = ctx.work / "big_site";
    ctx.big_store = ctx.work / "big_store";
    bc::FixtureSpec spec;
    spec.seed = 500;
    spec.n_pages = 200;
    spec.n_attachments = 500;
    spec.multi_containment_fraction = 0.05;
    ctx.big_gt = bc::generate_site(spec, ctx.big_site);

    bc::FixtureServer server(ctx.big_site, 0);
    ctx.big_base_url = server.base_url();

    bc::PipelineConfig config;
    config.crawl.seed = *bc::normalize_absolute_url(server.base_url());
    config.crawl.parallelism = 4;
    config.crawl.per_host_delay = std::chrono::milliseconds(0);
    config.store_dir = ctx.big_store;
    auto report = bc::run_crawl_pipeline(config);
    server.stop();

    require(report.stats.pages_fetched == 200, "expected 200 pages fetched, got " +
                                                   std::to_string(report.stats.pages_fetched));
    require(report.stats.attachments_found == 500,
            "expected 500 attachments, got " + std::to_string(report.stats.attachments_found));
    require(report.stats.fetch_errors == 0, "fixture crawl should have no fetch errors");

    bc::Store store = bc::Store::open(ctx.big_store);
    require(store.manifest().pages.size() == 200, "stored page count must be 200");
    require(store.manifest().attachments.size() == 500, "stored record count must be 500");

    for (const auto& [cls, expected] : ctx.big_gt->class_counts) {
        auto dir = ctx.big_store / "attachments" / std::string(bc::class_name(cls));
        std::size_t on_disk = 0;
        if (std::filesystem::exists(dir)) {
            for (const auto& entry : std::filesystem::directory_iterator(dir)) {
                if (entry.path().extension() == ".rec") ++on_disk;
            }
        }
        require(on_disk == expected, std::string("class dir ") + std::string(bc::class_name(cls)) +
                                         " holds " + std::to_string(on_disk) + ", ground truth " +
                                         std::to_string(expected));
    }

    // Round trip: parse (sha verified inside) and re-serialize every record.
    for (const auto& entry : store.manifest().attachments) {
        std::string bytes = read_file(ctx.big_store / entry.path);
        bc::AttachmentRecord record = bc::parse_record(bytes);
        require(bc::serialize_record(record) == bytes, "record must re-serialize byte-identically");
    }
    double elapsed = seconds_since(start);
    require(elapsed < 30.0, "end-to-end run took " + fmt(elapsed) + "s (budget 30s)");
    ctx.detail = "200 pages / 500 records at parallelism 4 in " + fmt(elapsed) + "s";
}

// --- 6. Classifier table ------------------------------------------------

void run_classifier_table(Context& ctx) {
    using Kind = bc::LinkDecision::Kind;
    struct Row {
        const char* path;
        Kind kind;
        bc::AttachmentClass cls;
    };
    const bc::AttachmentClass kOther = bc::AttachmentClass::other;
    const std::vector<Row> rows = {
        {"/f/plan.doc", Kind::attachment, bc::AttachmentClass::document},
        {"/f/plan.docx", Kind::attachment, bc::AttachmentClass::document},
        {"/f/paper.pdf", Kind::attachment, bc::AttachmentClass::document},
        {"/f/letter.rtf", Kind::attachment, bc::AttachmentClass::document},
        {"/f/readme.txt", Kind::attachment, bc::AttachmentClass::text},
        {"/f/data.xls", Kind::attachment, bc::AttachmentClass::spreadsheet},
        {"/f/data.xlsx", Kind::attachment, bc::AttachmentClass::spreadsheet},
        {"/f/table.csv", Kind::attachment, bc::AttachmentClass::spreadsheet},
        {"/f/slides.ppt", Kind::attachment, bc::AttachmentClass::presentation},
        {"/f/slides.pptx", Kind::attachment, bc::AttachmentClass::presentation},
        {"/f/bundle.zip", Kind::attachment, bc::AttachmentClass::archive},
        {"/f/bundle.rar", Kind::attachment, bc::AttachmentClass::archive},
        {"/f/bundle.7z", Kind::attachment, bc::AttachmentClass::archive},
        {"/f/bundle.tar", Kind::attachment, bc::AttachmentClass::archive},
        {"/f/bundle.gz", Kind::attachment, bc::AttachmentClass::archive},
        {"/f/photo.jpg", Kind::attachment, bc::AttachmentClass::image},
        {"/f/photo.jpeg", Kind::attachment, bc::AttachmentClass::image},
        {"/f/photo.png", Kind::attachment, bc::AttachmentClass::image},
        {"/f/photo.gif", Kind::attachment, bc::AttachmentClass::image},
        {"/f/photo.bmp", Kind::attachment, bc::AttachmentClass::image},
        {"/pages/index.html", Kind::page, kOther},
        {"/pages/index.htm", Kind::page, kOther},
        {"/board/list.php", Kind::page, kOther},
        {"/board/list.asp", Kind::page, kOther},
        {"/board/list.aspx", Kind::page, kOther},
        {"/board/list.jsp", Kind::page, kOther},
        {"/board/notes.nsf", Kind::page, kOther},
        {"/board/", Kind::page, kOther},
        {"/board/plain", Kind::page, kOther},
        {"/", Kind::page, kOther},
        {"/f/odd.wpd", Kind::attachment, kOther},
        {"/f/odd.hwp", Kind::attachment, kOther},
        {"/f/odd.dat", Kind::attachment, kOther},
        {"/f/odd.bin", Kind::attachment, kOther},
        {"/f/odd.xyz", Kind::attachment, kOther},
        {"/deep/a/b/c/plan.doc", Kind::attachment, bc::AttachmentClass::document},
        {"/q/file.doc?download=1", Kind::attachment, bc::AttachmentClass::document},
        {"/q/list.html?page=2", Kind::page, kOther},
        {"/q/data.xls?v=2&fmt=old", Kind::attachment, bc::AttachmentClass::spreadsheet},
        {"/f/a.b.c.txt", Kind::attachment, bc::AttachmentClass::text},
        {"/f/archive.tar.gz", Kind::attachment, bc::AttachmentClass::archive},
        {"/f/.hidden", Kind::attachment, kOther},
        {"/f/notice.TXT", Kind::attachment, bc::AttachmentClass::text},
        {"/f/Notice.Doc", Kind::attachment, bc::AttachmentClass::document},
        {"/f/DATA.XLS", Kind::attachment, bc::AttachmentClass::spreadsheet},
        {"/f/IMAGE.PNG", Kind::attachment, bc::AttachmentClass::image},
        {"/B/LIST.HTML", Kind::page, kOther},
        {"/f/report.pdf?sid=77", Kind::attachment, bc::AttachmentClass::document},
        {"/f/minutes.docx?x=1&y=2", Kind::attachment, bc::AttachmentClass::document},
        {"/f/noext?download=file.doc", Kind::page, kOther},
    };
    require(rows.size() == 50, "table must hold exactly 50 URLs, has " +
                                   std::to_string(rows.size()));

    const bc::SuffixTable table = bc::SuffixTable::defaults();
    for (const auto& row : rows) {
        std::string url = std::string("http://board.example") + row.path;
        auto base = bc::classify_link(bc::normalize_absolute_url(url), table);
        require(base.kind == row.kind, std::string("kind mismatch for ") + row.path);
        if (row.kind == Kind::attachment) {
            require(base.cls == row.cls, std::string("class mismatch for ") + row.path);
        }

        // Case invariance: upper-case the final path segment's suffix.
        std::string upper = url;
        auto dot = upper.rfind('.');
        auto query = upper.find('?');
        if (dot != std::string::npos && (query == std::string::npos || dot < query)) {
            for (auto i = dot; i < (query == std::string::npos ? upper.size() : query); ++i) {
                upper[i] = static_cast<char>(std::toupper(static_cast<unsigned char>(upper[i])));
            }
        }
        auto upper_decision = bc::classify_link(bc::normalize_absolute_url(upper), table);
        require(upper_decision.kind == base.kind, std::string("case variance on ") + row.path);
        if (base.kind == Kind::attachment) {
            require(upper_decision.cls == base.cls, std::string("case variance on ") + row.path);
        }

        // Query invariance.
        std::string with_query = url + (query == std::string::npos ? "?k=v" : "&k=v");
        auto query_decision = bc::classify_link(bc::normalize_absolute_url(with_query), table);
        require(query_decision.kind == base.kind, std::string("query variance on ") + row.path);
        if (base.kind == Kind::attachment) {
            require(query_decision.cls == base.cls, std::string("query variance on ") + row.path);
        }
    }
    ctx.detail = "50 URLs x {base, cased, queried} all as expected";
}

// --- 7. Search modification ---------------------------------------------

void run_search_modification(Context& ctx) {
    // Synthetic corpus with engineered lexical ties.
    std::vector<bc::IndexSource> sources;
    auto add = [&sources](const std::string& name, const std::string& text, double ar) {
        bc::IndexSource src;
        src.id = bc::make_attachment_id(
            *bc::normalize_absolute_url("http://s.example/" + name));
        src.cls = bc::AttachmentClass::document;
        src.containing_pages = {*bc::normalize_absolute_url("http://s.example/p.html")};
        src.ar = ar;
        src.text = text;
        sources.push_back(std::move(src));
    };
    add("a.doc", "exam schedule", 0.30);
    add("b.doc", "exam schedule", 0.90);
    add("c.doc", "exam schedule", 0.60);
    add("d.doc", "exam exam schedule", 0.10);
    add("e.doc", "budget exam", 0.50);
    auto index = bc::build_index_from_sources(sources, bc::default_stopwords());

    auto tied = bc::run_query(index, "exam schedule", 10, 1.0);
    std::vector<std::string> tied_urls;
    for (const auto& hit : tied.hits) tied_urls.push_back(hit.id.url);
    // Among the three equal-lexical docs, AR descending: b (0.9), c (0.6), a (0.3).
    std::vector<std::string> tied_only;
    for (const auto& url : tied_urls) {
        if (url.ends_with("a.doc") || url.ends_with("b.doc") || url.ends_with("c.doc")) {
            tied_only.push_back(url.substr(url.size() - 5));
        }
    }
    require(tied_only == std::vector<std::string>{"b.doc", "c.doc", "a.doc"},
            "equal-lexical hits must order by attachrank descending");

    // Lambda = 0 equals the pure lexical ordering, independently derived.
    std::vector<bc::SearchIndex> corpora;
    corpora.push_back(index);
    require(ctx.big_gt.has_value(), "criterion 5 must run first");
    corpora.push_back(bc::build_index(bc::Store::open(ctx.big_store)));

    const char* queries[] = {"exam schedule", "exam", "budget",
                             "meeting schedule", "notice office", "campus library deadline"};
    for (const auto& corpus : corpora) {
        std::vector<std::string> texts;
        for (const auto& doc : corpus.docs) texts.push_back(doc.text);
        for (const char* query : queries) {
            std::vector<std::pair<double, std::string>> reference;
            for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
                double score =
                    oracle::reference_score(texts, d, query, bc::default_stopwords());
                if (score > 0.0) reference.emplace_back(score, corpus.docs[d].id.url);
            }
            std::sort(reference.begin(), reference.end(), [](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first > b.first;
                return a.second < b.second;
            });
            if (reference.empty()) continue;
            auto result =
                bc::run_query(corpus, query, static_cast<int>(reference.size()), 0.0);
            require(result.hits.size() == reference.size(),
                    "lambda=0 must return every lexically matching doc");
            for (std::size_t i = 0; i < reference.size(); ++i) {
                require(result.hits[i].id.url == reference[i].second,
                        std::string("lambda=0 ordering diverges from lexical on \"") + query +
                            "\"");
                require(result.hits[i].final_score == result.hits[i].lexical,
                        "lambda=0 final score must equal the lexical score");
            }
            // With lambda = 1, equal-lexical neighbors must be AR-sorted.
            auto modified = bc::run_query(corpus, query, static_cast<int>(reference.size()), 1.0);
            for (std::size_t i = 1; i < modified.hits.size(); ++i) {
                if (modified.hits[i - 1].lexical == modified.hits[i].lexical) {
                    require(modified.hits[i - 1].ar >= modified.hits[i].ar,
                            "equal-lexical pair out of attachrank order");
                }
            }
        }
    }
    ctx.detail = "lambda=0 identical to lexical on 2 corpora x 6 queries; ties AR-ordered";
}

// --- 8. Precision property ----------------------------------------------

void run_precision_property(Context& ctx) {
    int strictly_better = 0;
    std::vector<std::string> per_seed;
    for (std::uint64_t seed : {1001ULL, 2002ULL, 3003ULL}) {
        auto site = ctx.work / ("prec_site_" + std::to_string(seed));
        auto store_dir = ctx.work / ("prec_store_" + std::to_string(seed));
        bc::FixtureSpec spec;
        spec.seed = seed;
        spec.n_pages = 260;
        spec.n_attachments = 320;
        spec.relevance_plan = bc::RelevancePlan{10, {}, 20, 6, 8};
        auto gt = bc::generate_site(spec, site);

        test_support::DirFetcher fetcher(site);
        bc::PipelineConfig config;
        config.crawl.seed = *bc::normalize_absolute_url(fetcher.url_of("index.html"));
        config.crawl.parallelism = 1;
        config.crawl.per_host_delay = std::chrono::milliseconds(0);
        config.store_dir = store_dir;
        bc::run_crawl_pipeline(config, fetcher);

        bc::Store store = bc::Store::open(store_dir);
        auto index = bc::build_index(store);

        auto precision_at_10 = [&](const bc::GtQuery& query, double lambda) {
            std::string text;
            for (const auto& term : query.terms) {
                if (!text.empty()) text += ' ';
                text += term;
            }
            auto result = bc::run_query(index, text, 10, lambda);
            std::set<std::string> relevant;
            for (const auto& path : query.relevant) {
                relevant.insert(fetcher.url_of(path));
            }
            int hits = 0;
            for (const auto& hit : result.hits) hits += relevant.count(hit.id.url) ? 1 : 0;
            return hits / 10.0;
        };

        double mean_plain = 0.0, mean_ranked = 0.0;
        for (const auto& query : gt.queries) {
            mean_plain += precision_at_10(query, 0.0);
            mean_ranked += precision_at_10(query, 1.0);
        }
        mean_plain /= gt.queries.size();
        mean_ranked /= gt.queries.size();
        require(mean_ranked >= mean_plain,
                "mean precision@10 with lambda=1 fell below lambda=0 on seed " +
                    std::to_string(seed));
        if (mean_ranked > mean_plain) ++strictly_better;
        per_seed.push_back(fmt(mean_plain) + "->" + fmt(mean_ranked));
    }
    require(strictly_better >= 2,
            "attachrank must strictly improve precision on at least 2 of 3 seeds");
    ctx.detail = "p@10 lambda 0->1 per seed: " + per_seed[0] + ", " + per_seed[1] + ", " +
                 per_seed[2];
}

// --- 9. Performance sanity bounds ---------------------------------------

void run_performance_bounds(Context& ctx) {
    require(ctx.big_gt.has_value(), "criterion 5 must run first");

    auto rerank_start = Clock::now();
    bc::rerank_store(ctx.big_store, bc::RankConfig{});
    double rerank_elapsed = seconds_since(rerank_start);
    require(rerank_elapsed < 1.0,
            "rerank of the 200-page store took " + fmt(rerank_elapsed) + "s (budget 1s)");

    auto index = bc::build_index(bc::Store::open(ctx.big_store));
    const char* queries[] = {"meeting schedule", "campus",       "library deadline",
                             "notice",           "office budget", "registration",
                             "semester holiday", "project",       "training committee",
                             "maintenance"};
    double worst = 0.0;
    for (const char* query : queries) {
        auto start = Clock::now();
        bc::run_query(index, query, 10, 1.0);
        double elapsed = seconds_since(start);
        worst = std::max(worst, elapsed);
        require(elapsed < 0.050,
                std::string("query \"") + query + "\" took " + fmt(elapsed * 1000) + "ms");
    }
    ctx.detail = "rerank " + fmt(rerank_elapsed * 1000) + "ms, slowest query " +
                 fmt(worst * 1000) + "ms";
}

// --- 10. Determinism ------------------------------------------------------

void run_determinism(Context& ctx) {
    // Same-seed generation twice: byte-identical trees.
    auto gen_a = ctx.work / "det_gen_a";
    auto gen_b = ctx.work / "det_gen_b";
    bc::FixtureSpec spec;
    spec.seed = 777;
    spec.n_pages = 50;
    spec.n_attachments = 80;
    spec.multi_containment_fraction = 0.1;
    bc::generate_site(spec, gen_a);
    bc::generate_site(spec, gen_b);
    auto tree_a = read_tree(gen_a);
    auto tree_b = read_tree(gen_b);
    require(tree_a.size() == tree_b.size(), "generated trees differ in file count");
    for (const auto& [path, bytes] : tree_a) {
        auto it = tree_b.find(path);
        require(it != tree_b.end(), "generated trees differ in file set: " + path);
        require(it->second == bytes, "generated file differs between runs: " + path);
    }

    // Single-threaded crawl twice: identical manifests (they carry no
    // timestamps by construction).
    auto store_a = ctx.work / "det_store_a";
    auto store_b = ctx.work / "det_store_b";
    for (const auto& store_dir : {store_a, store_b}) {
        test_support::DirFetcher fetcher(gen_a);
        bc::PipelineConfig config;
        config.crawl.seed = *bc::normalize_absolute_url(fetcher.url_of("index.html"));
        config.crawl.parallelism = 1;
        config.crawl.per_host_delay = std::chrono::milliseconds(0);
        config.store_dir = store_dir;
        bc::run_crawl_pipeline(config, fetcher);
    }
    require(read_file(store_a / "manifest.json") == read_file(store_b / "manifest.json"),
            "single-threaded crawls produced different manifests");
    ctx.detail = std::to_string(tree_a.size()) + " generated files identical; manifests identical";
}

struct Criterion {
    int number;
    std::string name;
    std::function<void(Context&)> run;
};

}  // namespace

int main() {
    Context ctx;
    const std::vector<Criterion> criteria = {
        {1, "pagerank-oracle-equivalence", run_oracle_equivalence},
        {2, "fixed-point-anchors", run_fixed_point_anchors},
        {3, "normalized-distribution", run_distribution},
        {4, "attachrank-law", run_attachrank_law},
        {5, "end-to-end-crawl-fidelity", run_crawl_fidelity},
        {6, "classifier-table", run_classifier_table},
        {7, "search-modification", run_search_modification},
        {8, "precision-property", run_precision_property},
        {9, "performance-bounds", run_performance_bounds},
        {10, "determinism", run_determinism},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        ctx.detail.clear();
        try {
            criterion.run(ctx);
            std::printf("[PASS] %2d %-28s %s\n", criterion.number, criterion.name.c_str(),
                        ctx.detail.c_str());
        } catch (const std::exception& e) {
            ++failed;
            std::printf("[FAIL] %2d %-28s %s\n", criterion.number, criterion.name.c_str(),
                        e.what());
        }
        std::fflush(stdout);
    }
    if (failed == 0) {
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
        return 0;
    }
    std::printf("acceptance: %d of %zu criteria FAILED\n", failed, criteria.size());
    return 1;
}
