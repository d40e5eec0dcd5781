#include "boardcrawl/crawl.hpp"

#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "boardcrawl/error.hpp"
#include "boardcrawl/robots.hpp"
#include "boardcrawl/scan.hpp"
#include "boardcrawl/url.hpp"

namespace bc {

namespace {

struct ScannedAttachment {
    AttachmentId id;
    AttachmentClass cls = AttachmentClass::other;
    std::string anchor;
};

struct PageScan {
    PageRecord record;
    std::vector<ScannedAttachment> attachments;  // document order, per occurrence
};

struct SharedState {
    std::mutex mu;
    std::condition_variable cv;

    Frontier frontier;
    std::size_t dequeued = 0;
    int in_flight = 0;

    std::vector<PageScan> scans;
    std::set<AttachmentId> attachments_seen;
    std::map<AttachmentId, std::string> payloads;
    std::map<AttachmentId, Timestamp> payload_times;
    CrawlStats stats;
    std::string seed_failure;
};

}  // namespace

bool Scope::allows(const PageId& id) const {
    return !restrict_host || url_host(id) == host;
}

void CrawlConfig::validate() const {
    if (seed.empty()) throw ConfigError("crawl seed URL is required");
    if (max_pages < 1) throw ConfigError("max_pages must be at least 1");
    if (parallelism < 1) throw ConfigError("parallelism must be at least 1");
    if (per_host_delay.count() < 0) throw ConfigError("per_host_delay cannot be negative");
    if (fetch_timeout.count() <= 0) throw ConfigError("fetch_timeout must be positive");
    suffixes.validate();
}

bool Frontier::enqueue(const PageId& id, const Scope& scope) {
    bool fresh = seen_.insert(id).second;
    if (!fresh || !scope.allows(id)) return false;
    queue_.push_back(id);
    return true;
}

std::optional<PageId> Frontier::next_url() {
    if (queue_.empty()) return std::nullopt;
    PageId id = std::move(queue_.front());
    queue_.pop_front();
    fetched_.insert(id);
    return id;
}

namespace {

void process_page(const PageId& id, const CrawlConfig& config, const Scope& scope,
                  Fetcher& fetcher, const RobotsRules* robots, SharedState& shared) {
    FetchOutcome outcome = fetcher.get(id);

    auto record_page_failure = [&](const std::string& why, bool skip) {
        std::lock_guard lock(shared.mu);
        ++shared.stats.fetch_errors;
        if (skip) ++shared.stats.fetch_skips;
        if (id == config.seed) shared.seed_failure = why;
    };

    if (!fetch_ok(outcome)) {
        record_page_failure(fetch_failure(outcome).message, false);
        return;
    }
    const FetchedDoc& doc = fetch_doc(outcome);
    if (!is_html_content_type(doc.content_type)) {
        record_page_failure("content not declared as HTML: \"" + doc.content_type + "\"", true);
        return;
    }

    PageText text = extract_page_text(doc.body);
    std::vector<RawLink> links = extract_links(doc.body, id);

    std::vector<PageId> page_links;
    std::vector<AttachmentId> attachment_ids;
    std::vector<ScannedAttachment> scanned;
    std::uint64_t discarded = 0;
    for (const RawLink& link : links) {
        auto normalized = normalize_url(id, link.href);
        LinkDecision decision = classify_link(normalized, config.suffixes);
        switch (decision.kind) {
            case LinkDecision::Kind::page:
                page_links.push_back(decision.page);
                break;
            case LinkDecision::Kind::attachment:
                attachment_ids.push_back(decision.attachment);
                scanned.push_back({decision.attachment, decision.cls, link.anchor_text});
                break;
            case LinkDecision::Kind::discard:
                ++discarded;
                break;
        }
    }

    PageRecord record = make_page_record(id, text.title, text.body_text, now_utc_seconds(),
                                         doc.status, page_links, attachment_ids);

    // Payloads are fetched once per distinct attachment URL.
    std::vector<ScannedAttachment> to_fetch;
    {
        std::lock_guard lock(shared.mu);
        for (const ScannedAttachment& att : scanned) {
            if (shared.attachments_seen.insert(att.id).second) to_fetch.push_back(att);
        }
    }
    for (const ScannedAttachment& att : to_fetch) {
        PageId att_url = PageId::from_normalized(att.id.url);
        if (robots && !robots->allows(url_path(att_url))) {
            std::lock_guard lock(shared.mu);
            ++shared.stats.robots_skipped;
            shared.payloads[att.id] = {};
            shared.payload_times[att.id] = now_utc_seconds();
            continue;
        }
        FetchOutcome payload = fetcher.get(att_url);
        std::lock_guard lock(shared.mu);
        if (fetch_ok(payload)) {
            shared.payloads[att.id] = fetch_doc(payload).body;
        } else {
            shared.payloads[att.id] = {};
            ++shared.stats.attachment_fetch_errors;
        }
        shared.payload_times[att.id] = now_utc_seconds();
    }

    std::lock_guard lock(shared.mu);
    ++shared.stats.pages_fetched;
    shared.stats.links_discarded += discarded;
    for (const PageId& target : record.outlinks) {
        bool in_scope = scope.allows(target);
        bool fresh = !shared.frontier.was_seen(target);
        if (robots && in_scope && fresh && !robots->allows(url_path(target))) {
            ++shared.stats.robots_skipped;
            continue;
        }
        if (!shared.frontier.enqueue(target, scope)) {
            if (!in_scope && fresh) {
                ++shared.stats.links_offscope;
            } else {
                ++shared.stats.duplicate_links;
            }
        }
    }
    shared.scans.push_back({std::move(record), std::move(scanned)});
    shared.cv.notify_all();
}

void worker_loop(const CrawlConfig& config, const Scope& scope, Fetcher& fetcher,
                 const RobotsRules* robots, SharedState& shared) {
    std::unique_lock lock(shared.mu);
    for (;;) {
        bool can_dequeue = !shared.frontier.queue_empty() &&
                           shared.dequeued < static_cast<std::size_t>(config.max_pages);
        if (!can_dequeue) {
            if (shared.in_flight == 0) {
                shared.cv.notify_all();
                return;
            }
            shared.cv.wait(lock);
            continue;
        }
        PageId id = *shared.frontier.next_url();
        ++shared.dequeued;
        ++shared.in_flight;
        lock.unlock();
        process_page(id, config, scope, fetcher, robots, shared);
        lock.lock();
        --shared.in_flight;
        shared.cv.notify_all();
    }
}

}  // namespace

CrawlResult crawl(const CrawlConfig& config, Fetcher& fetcher) {
    config.validate();
    Scope scope{config.host_scope, url_host(config.seed)};

    RobotsRules robots;
    bool robots_active = false;
    if (config.honor_robots) {
        auto parts = split_url(config.seed.str());
        std::string robots_url = parts->scheme + "://" + parts->host +
                                 (parts->port != -1 ? ":" + std::to_string(parts->port) : "") +
                                 "/robots.txt";
        FetchOutcome outcome = fetcher.get(PageId::from_normalized(robots_url));
        if (fetch_ok(outcome)) {
            robots = RobotsRules::parse(fetch_doc(outcome).body, kUserAgent);
            robots_active = true;
        }
        if (robots_active && !robots.allows(url_path(config.seed))) {
            throw SeedError("seed is disallowed by robots.txt: " + config.seed.str());
        }
    }

    SharedState shared;
    shared.frontier.enqueue(config.seed, scope);

    const RobotsRules* robots_ptr = robots_active ? &robots : nullptr;
    if (config.parallelism == 1) {
        worker_loop(config, scope, fetcher, robots_ptr, shared);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(config.parallelism));
        for (int i = 0; i < config.parallelism; ++i) {
            workers.emplace_back(
                [&] { worker_loop(config, scope, fetcher, robots_ptr, shared); });
        }
        for (auto& w : workers) w.join();
    }

    if (shared.stats.pages_fetched == 0) {
        throw SeedError("seed fetch failed: " +
                        (shared.seed_failure.empty() ? "no pages fetched" : shared.seed_failure));
    }

    CrawlResult result;
    result.stats = shared.stats;
    result.stats.attachments_found = shared.attachments_seen.size();
    result.payloads = std::move(shared.payloads);
    result.payload_times = std::move(shared.payload_times);
    result.pages.reserve(shared.scans.size());
    for (auto& scan : shared.scans) result.pages.push_back(scan.record);

    // Refs and anchors are assembled over pages sorted by id, so the outcome
    // is identical for any parallelism once the fetched set is fixed.
    std::vector<const PageScan*> ordered;
    ordered.reserve(shared.scans.size());
    for (const auto& scan : shared.scans) ordered.push_back(&scan);
    std::sort(ordered.begin(), ordered.end(),
              [](const PageScan* a, const PageScan* b) { return a->record.id < b->record.id; });
    for (const PageScan* scan : ordered) {
        std::set<AttachmentId> in_page;
        for (const ScannedAttachment& att : scan->attachments) {
            if (!in_page.insert(att.id).second) continue;
            result.refs.push_back({att.id, scan->record.id, att.cls});
            result.anchors.emplace(att.id, att.anchor);
        }
    }
    return result;
}

}  // namespace bc
