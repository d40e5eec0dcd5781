#include "boardcrawl/pipeline.hpp"

#include <algorithm>
#include <map>

#include "boardcrawl/error.hpp"
#include "boardcrawl/graph.hpp"
#include "boardcrawl/url.hpp"

namespace bc {

namespace {

RankConfigEcho echo_of(const RankConfig& config, const RankVector& ranks) {
    RankConfigEcho echo;
    echo.config = config;
    echo.iterations_used = ranks.iterations_used;
    echo.final_residual = ranks.final_residual;
    echo.converged = ranks.converged;
    return echo;
}

}  // namespace

PipelineReport run_crawl_pipeline(const PipelineConfig& config, Fetcher& fetcher) {
    CrawlResult crawled = crawl(config.crawl, fetcher);

    std::optional<std::string> host_filter;
    if (config.crawl.host_scope) host_filter = url_host(config.crawl.seed);
    LinkGraph graph = seal_graph(crawled.pages, host_filter);
    RankVector ranks = compute_pagerank(graph, config.rank);
    AttachRankTable table = compute_attachrank(graph, ranks);

    std::map<AttachmentId, AttachmentClass> classes;
    for (const AttachmentRef& ref : crawled.refs) classes.emplace(ref.id, ref.cls);

    Store store = Store::create(config.store_dir);
    std::vector<const PageRecord*> ordered;
    ordered.reserve(crawled.pages.size());
    for (const auto& page : crawled.pages) ordered.push_back(&page);
    std::sort(ordered.begin(), ordered.end(),
              [](const PageRecord* a, const PageRecord* b) { return a->id < b->id; });
    for (const PageRecord* page : ordered) store.store_page(*page);

    std::size_t records = 0;
    for (const auto& [id, entry] : table.entries) {
        AttachmentRecord record;
        record.id = id;
        record.cls = classes.at(id);
        record.ar = entry.ar;
        record.containing_pages = entry.containing_pages;
        if (auto it = crawled.anchors.find(id); it != crawled.anchors.end()) {
            record.anchor_text = it->second;
        }
        if (auto it = crawled.payload_times.find(id); it != crawled.payload_times.end()) {
            record.fetched_at = it->second;
        }
        if (auto it = crawled.payloads.find(id); it != crawled.payloads.end()) {
            record.payload = it->second;
        }
        store.put_attachment(record);
        ++records;
    }

    PipelineReport report;
    report.stats = crawled.stats;
    report.rank_echo = echo_of(config.rank, ranks);
    report.pages_stored = store.manifest().pages.size();
    report.records_written = records;
    store.set_rank_echo(report.rank_echo);
    store.save_manifest();
    return report;
}

PipelineReport run_crawl_pipeline(const PipelineConfig& config) {
    PoliteHttpFetcher fetcher(config.crawl.per_host_delay, config.crawl.fetch_timeout);
    return run_crawl_pipeline(config, fetcher);
}

RankConfigEcho rerank_store(const std::filesystem::path& store_dir, const RankConfig& config) {
    Store store = Store::open(store_dir);
    std::vector<PageRecord> pages = store.load_all_pages();
    LinkGraph graph = seal_graph(pages);
    RankVector ranks = compute_pagerank(graph, config);
    AttachRankTable table = compute_attachrank(graph, ranks);

    for (const ManifestAttachment& entry : store.manifest().attachments) {
        AttachmentRecord record = read_attachment_record(store.root() / entry.path);
        auto it = table.entries.find(entry.id);
        if (it == table.entries.end()) {
            throw StructuralError("stored attachment is not reachable from stored pages: " +
                                  entry.id.url);
        }
        record.ar = it->second.ar;
        record.containing_pages = it->second.containing_pages;
        store.put_attachment(record);
    }
    RankConfigEcho echo = echo_of(config, ranks);
    store.set_rank_echo(echo);
    store.save_manifest();
    return echo;
}

QueryResult search_store(const std::filesystem::path& store_dir, std::string_view query_text,
                         int k, double lambda,
                         const std::optional<std::filesystem::path>& index_file) {
    if (index_file && std::filesystem::exists(*index_file)) {
        SearchIndex index = load_index(*index_file);
        return run_query(index, query_text, k, lambda);
    }
    Store store = Store::open(store_dir);
    SearchIndex index = build_index(store);
    if (index_file) save_index(index, *index_file);
    return run_query(index, query_text, k, lambda);
}

}  // namespace bc
