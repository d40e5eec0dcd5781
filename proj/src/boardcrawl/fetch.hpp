#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <variant>

#include "boardcrawl/types.hpp"

namespace bc {

struct FetchedDoc {
    int status = 0;
    std::string content_type;
    std::string body;
};

struct FetchFailure {
    enum class Kind { timeout, connect, http_status, other };
    Kind kind = Kind::other;
    int status = 0;  // set for http_status failures
    std::string message;
};

using FetchOutcome = std::variant<FetchedDoc, FetchFailure>;

bool fetch_ok(const FetchOutcome& outcome);
const FetchedDoc& fetch_doc(const FetchOutcome& outcome);
const FetchFailure& fetch_failure(const FetchOutcome& outcome);

// Declared-HTML check: "text/html" with optional parameters.
bool is_html_content_type(std::string_view content_type);

// Page-fetching capability. The crawler accepts any implementation; tests
// inject in-memory or directory-backed fakes.
class Fetcher {
public:
    virtual ~Fetcher() = default;
    virtual FetchOutcome get(const PageId& url) = 0;
};

inline constexpr const char* kUserAgent = "boardcrawl/0.1";

// HTTP/1.1 GET with a per-host politeness delay: with a positive delay,
// requests to one host are serialized and each begins at least `delay`
// after the previous one to that host completed. Zero delay disables the
// coordination entirely.
class PoliteHttpFetcher : public Fetcher {
public:
    PoliteHttpFetcher(std::chrono::milliseconds per_host_delay, std::chrono::milliseconds timeout);
    ~PoliteHttpFetcher() override;

    FetchOutcome get(const PageId& url) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace bc
