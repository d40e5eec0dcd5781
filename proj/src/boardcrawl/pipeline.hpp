#pragma once

#include <filesystem>

#include "boardcrawl/crawl.hpp"
#include "boardcrawl/rank.hpp"
#include "boardcrawl/search.hpp"
#include "boardcrawl/store.hpp"

namespace bc {

struct PipelineConfig {
    CrawlConfig crawl;
    RankConfig rank;
    std::filesystem::path store_dir;
};

struct PipelineReport {
    CrawlStats stats;
    RankConfigEcho rank_echo;
    std::size_t pages_stored = 0;
    std::size_t records_written = 0;
};

// Full run: crawl, seal the graph, compute PageRank and AttachRank, then
// write the classified store (pages, .rec records with relevance headers,
// manifest). Ranking is a batch pass after the crawl completes, so headers
// carry final fixed-point values.
PipelineReport run_crawl_pipeline(const PipelineConfig& config, Fetcher& fetcher);

// Same, with a PoliteHttpFetcher built from the crawl config.
PipelineReport run_crawl_pipeline(const PipelineConfig& config);

// Recomputes PR/AR from the stored pages and rewrites every record header
// and the manifest. Payload bytes and fetch timestamps are preserved.
RankConfigEcho rerank_store(const std::filesystem::path& store_dir, const RankConfig& config);

// Loads (or builds) the index for a store and runs one query. When
// index_file is given it is used as a cache: loaded when present, written
// after a fresh build otherwise.
QueryResult search_store(const std::filesystem::path& store_dir, std::string_view query_text,
                         int k, double lambda,
                         const std::optional<std::filesystem::path>& index_file = std::nullopt);

}  // namespace bc
