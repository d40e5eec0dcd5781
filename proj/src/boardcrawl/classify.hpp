#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "boardcrawl/types.hpp"

namespace bc {

// Suffix -> class mapping that drives link classification. The attachment
// and page key sets are disjoint; the empty suffix always reads as a page.
struct SuffixTable {
    std::map<std::string, AttachmentClass> attachment_suffixes;
    std::set<std::string> page_suffixes;

    static SuffixTable defaults();

    // Throws ConfigError when the two key sets overlap.
    void validate() const;
};

// Loads user overrides on top of the defaults. Schema (JSON):
//   { "replace": false,
//     "classes": { "document": ["md"], ... },
//     "page_suffixes": ["shtml"] }
// A suffix mentioned under "classes" is removed from page_suffixes and vice
// versa, so overrides win over defaults.
SuffixTable load_suffix_config(const std::filesystem::path& file);

// Per-link verdict: follow as page, fetch as classified attachment, or drop.
struct LinkDecision {
    enum class Kind { page, attachment, discard };

    Kind kind = Kind::discard;
    PageId page;
    AttachmentId attachment;
    AttachmentClass cls = AttachmentClass::other;
    std::string reason;

    static LinkDecision make_page(PageId id);
    static LinkDecision make_attachment(AttachmentId id, AttachmentClass cls);
    static LinkDecision make_discard(std::string reason);
};

// Total function: rejected URLs discard, known attachment suffixes map to
// their class, page suffixes and pathlike URLs (empty suffix) stay pages,
// and any other suffix is kept as Attachment(other).
LinkDecision classify_link(const std::optional<PageId>& normalized, const SuffixTable& table);

}  // namespace bc
