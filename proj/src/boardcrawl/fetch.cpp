#include "boardcrawl/fetch.hpp"

#include <map>
#include <mutex>
#include <thread>

#include <httplib.h>

#include "boardcrawl/encoding.hpp"
#include "boardcrawl/url.hpp"

namespace bc {

bool fetch_ok(const FetchOutcome& outcome) { return std::holds_alternative<FetchedDoc>(outcome); }

const FetchedDoc& fetch_doc(const FetchOutcome& outcome) { return std::get<FetchedDoc>(outcome); }

const FetchFailure& fetch_failure(const FetchOutcome& outcome) {
    return std::get<FetchFailure>(outcome);
}

bool is_html_content_type(std::string_view content_type) {
    std::string lower = to_lower_ascii(content_type);
    std::string_view v = lower;
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    return v.rfind("text/html", 0) == 0;
}

struct PoliteHttpFetcher::Impl {
    std::chrono::milliseconds delay;
    std::chrono::milliseconds timeout;

    struct HostGate {
        std::mutex mu;
        std::chrono::steady_clock::time_point last_done{};
    };
    std::mutex gates_mu;
    std::map<std::string, std::shared_ptr<HostGate>> gates;

    std::shared_ptr<HostGate> gate_for(const std::string& host) {
        std::lock_guard lock(gates_mu);
        auto& gate = gates[host];
        if (!gate) gate = std::make_shared<HostGate>();
        return gate;
    }

    FetchOutcome request(const UrlParts& parts) {
        int port = parts.port != -1 ? parts.port : 80;
        httplib::Client client(parts.host, port);
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);
        client.set_write_timeout(timeout);

        std::string target = parts.path.empty() ? "/" : parts.path;
        if (parts.query) target += "?" + *parts.query;

        httplib::Headers headers{{"User-Agent", kUserAgent}};
        auto res = client.Get(target, headers);
        if (!res) {
            FetchFailure failure;
            switch (res.error()) {
                case httplib::Error::ConnectionTimeout:
                case httplib::Error::Read:
                case httplib::Error::Write:
                    failure.kind = FetchFailure::Kind::timeout;
                    break;
                case httplib::Error::Connection:
                    failure.kind = FetchFailure::Kind::connect;
                    break;
                default:
                    failure.kind = FetchFailure::Kind::other;
                    break;
            }
            failure.message = httplib::to_string(res.error());
            return failure;
        }
        if (res->status / 100 != 2) {
            return FetchFailure{FetchFailure::Kind::http_status, res->status,
                                "HTTP status " + std::to_string(res->status)};
        }
        return FetchedDoc{res->status, res->get_header_value("Content-Type"), res->body};
    }
};

PoliteHttpFetcher::PoliteHttpFetcher(std::chrono::milliseconds per_host_delay,
                                     std::chrono::milliseconds timeout)
    : impl_(std::make_unique<Impl>()) {
    impl_->delay = per_host_delay;
    impl_->timeout = timeout;
}

PoliteHttpFetcher::~PoliteHttpFetcher() = default;

FetchOutcome PoliteHttpFetcher::get(const PageId& url) {
    auto parts = split_url(url.str());
    if (!parts) {
        return FetchFailure{FetchFailure::Kind::other, 0, "unparseable URL: " + url.str()};
    }
    if (parts->scheme != "http") {
        return FetchFailure{FetchFailure::Kind::other, 0,
                            "scheme not supported by this build: " + parts->scheme};
    }
    if (impl_->delay.count() <= 0) return impl_->request(*parts);

    auto gate = impl_->gate_for(parts->host);
    std::lock_guard lock(gate->mu);
    if (gate->last_done.time_since_epoch().count() != 0) {
        std::this_thread::sleep_until(gate->last_done + impl_->delay);
    }
    FetchOutcome outcome = impl_->request(*parts);
    gate->last_done = std::chrono::steady_clock::now();
    return outcome;
}

}  // namespace bc
