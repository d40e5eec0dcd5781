#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "boardcrawl/types.hpp"

namespace bc {

// Plants queries whose relevant attachments sit on pages that receive extra
// in-links, so link popularity correlates with relevance.
struct RelevancePlan {
    int n_queries = 0;  // used when queries is empty
    std::vector<std::vector<std::string>> queries;
    int candidates_per_query = 20;
    int relevant_per_query = 6;
    int popularity_boost = 8;
};

struct FixtureSpec {
    std::uint64_t seed = 1;
    int n_pages = 50;
    int n_attachments = 100;
    double link_density = 3.0;
    std::map<AttachmentClass, double> class_mix = default_class_mix();
    double multi_containment_fraction = 0.0;
    std::optional<RelevancePlan> relevance_plan;

    static std::map<AttachmentClass, double> default_class_mix();
    static FixtureSpec from_json_file(const std::filesystem::path& file);
    void validate() const;  // throws ConfigError
};

struct GtPage {
    std::string path;
    std::string title;
    std::string body_sentence;             // always present in the page's visible text
    std::vector<std::string> outlinks;     // relative hrefs, document order
    std::vector<std::string> attachments;  // relative hrefs, document order
};

struct GtAttachment {
    std::string path;
    AttachmentClass cls = AttachmentClass::other;
    std::vector<std::string> containing_pages;  // page paths, sorted
    std::string sha256;
    std::string anchor;
};

struct GtQuery {
    std::vector<std::string> terms;
    std::vector<std::string> relevant;  // attachment paths
};

// Declared content of a generated site; written as ground_truth.json next to
// the site files. Checked against a re-parse of the generated tree before
// generate_site returns.
struct GroundTruth {
    std::vector<GtPage> pages;
    std::vector<GtAttachment> attachments;
    std::vector<GtQuery> queries;
    std::map<AttachmentClass, std::size_t> class_counts;

    void save(const std::filesystem::path& file) const;
    static GroundTruth load(const std::filesystem::path& file);
};

// Emits a static bulletin-board site realizing the spec exactly. Pure
// function of the spec: the same seed yields a byte-identical tree. Every
// page is link-reachable from index.html.
GroundTruth generate_site(const FixtureSpec& spec, const std::filesystem::path& out_dir);

// Static file server for generated sites. port 0 binds an ephemeral port;
// a taken fixed port throws PortInUseError. Serves concurrent requests and
// shuts down cleanly.
class FixtureServer {
public:
    FixtureServer(const std::filesystem::path& dir, int port);
    ~FixtureServer();

    FixtureServer(const FixtureServer&) = delete;
    FixtureServer& operator=(const FixtureServer&) = delete;

    int port() const;
    std::string base_url() const;  // "http://127.0.0.1:<port>/"
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace bc
