#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "boardcrawl/classify.hpp"
#include "boardcrawl/fetch.hpp"
#include "boardcrawl/types.hpp"

namespace bc {

// Host restriction derived from the seed. With restrict_host off everything
// is in scope.
struct Scope {
    bool restrict_host = true;
    std::string host;

    bool allows(const PageId& id) const;
};

struct CrawlConfig {
    PageId seed;
    bool host_scope = true;
    int max_pages = 10000;
    int parallelism = 4;
    std::chrono::milliseconds per_host_delay{200};
    std::chrono::milliseconds fetch_timeout{10000};
    bool honor_robots = false;
    SuffixTable suffixes = SuffixTable::defaults();

    void validate() const;  // throws ConfigError
};

// Discovered-but-unfetched page queue. No id is ever enqueued twice; `seen`
// is a superset of queue and fetched.
class Frontier {
public:
    // Appends iff never seen and within scope; marks the id seen either way.
    bool enqueue(const PageId& id, const Scope& scope);

    // FIFO head, moved to fetched; nullopt when the queue is empty.
    std::optional<PageId> next_url();

    bool queue_empty() const { return queue_.empty(); }
    bool was_seen(const PageId& id) const { return seen_.contains(id); }
    std::size_t seen_count() const { return seen_.size(); }
    std::size_t fetched_count() const { return fetched_.size(); }

private:
    std::deque<PageId> queue_;
    std::set<PageId> seen_;
    std::set<PageId> fetched_;
};

struct CrawlStats {
    std::uint64_t pages_fetched = 0;
    std::uint64_t attachments_found = 0;   // distinct attachment URLs
    std::uint64_t links_discarded = 0;     // non-page, non-attachment links
    std::uint64_t fetch_errors = 0;        // failed page fetches (includes skips)
    std::uint64_t fetch_skips = 0;         // 2xx responses not declared as HTML
    std::uint64_t links_offscope = 0;
    std::uint64_t duplicate_links = 0;
    std::uint64_t attachment_fetch_errors = 0;
    std::uint64_t robots_skipped = 0;
};

struct AttachmentRef {
    AttachmentId id;
    PageId containing_page;
    AttachmentClass cls = AttachmentClass::other;
};

struct CrawlResult {
    std::vector<PageRecord> pages;  // fetch order; BFS order when parallelism = 1
    std::vector<AttachmentRef> refs;
    std::map<AttachmentId, std::string> anchors;  // first-occurrence anchor text
    std::map<AttachmentId, std::string> payloads;
    std::map<AttachmentId, Timestamp> payload_times;
    CrawlStats stats;
};

// Runs the fetch loop from the seed until the frontier runs out (or
// max_pages is hit): every in-scope page reachable from the seed is fetched
// exactly once, every hyperlink on every fetched page is classified, and
// payloads of newly seen attachments are downloaded. Per-page fetch failures
// are recorded and skipped; a crawl that produces no pages at all throws
// SeedError.
CrawlResult crawl(const CrawlConfig& config, Fetcher& fetcher);

}  // namespace bc
