#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "boardcrawl/rank.hpp"
#include "boardcrawl/record.hpp"
#include "boardcrawl/types.hpp"

namespace bc {

struct ManifestPage {
    PageId id;
    std::string title;
    std::string path;  // store-relative
};

struct ManifestAttachment {
    AttachmentId id;
    AttachmentClass cls = AttachmentClass::other;
    double ar = 0.0;
    std::string path;  // store-relative
};

struct RankConfigEcho {
    RankConfig config;
    int iterations_used = 0;
    double final_residual = 0.0;
    bool converged = true;
};

// manifest.json content. Entries are kept sorted by id; the manifest itself
// carries no timestamps, so identical crawls produce identical manifests.
struct StoreManifest {
    int version = 1;
    std::vector<ManifestPage> pages;
    std::vector<ManifestAttachment> attachments;
    std::optional<RankConfigEcho> rank_config;
};

// On-disk layout:
//   <root>/manifest.json
//   <root>/pages/<hash>_<slug>.json
//   <root>/attachments/<class>/<hash>_<name>.rec
class Store {
public:
    // Starts a fresh store, clearing any previous manifest/pages/attachments
    // under root so re-crawls stay consistent with the new manifest.
    static Store create(const std::filesystem::path& root);

    // Opens an existing store; throws IoError when no manifest is present.
    static Store open(const std::filesystem::path& root);

    const std::filesystem::path& root() const { return root_; }
    const StoreManifest& manifest() const { return manifest_; }

    // Persists page text and metadata under pages/ and updates the manifest
    // entry. Re-storing the same id overwrites the same file.
    std::filesystem::path store_page(const PageRecord& page);

    // Writes the .rec container and updates the manifest entry.
    std::filesystem::path put_attachment(const AttachmentRecord& record);

    PageRecord load_page(const PageId& id) const;
    std::vector<PageRecord> load_all_pages() const;

    void set_rank_echo(const RankConfigEcho& echo);
    void save_manifest() const;

private:
    explicit Store(std::filesystem::path root) : root_(std::move(root)) {}

    std::filesystem::path root_;
    StoreManifest manifest_;
};

// Page persistence, exposed for tests.
std::filesystem::path page_relpath(const PageId& id);
void write_page_json(const std::filesystem::path& file, const PageRecord& page);
PageRecord read_page_json(const std::filesystem::path& file);

}  // namespace bc
