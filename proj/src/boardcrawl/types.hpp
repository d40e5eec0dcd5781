#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boardcrawl/encoding.hpp"

namespace bc {

// Normalized absolute URL of a board page. Two ids are equal iff their
// normalized texts are byte-equal; construction goes through the url module
// (normalize_url / normalize_absolute_url) except when rehydrating values
// that were normalized before being persisted.
class PageId {
public:
    PageId() = default;

    static PageId from_normalized(std::string normalized) { return PageId(std::move(normalized)); }

    const std::string& str() const { return value_; }
    bool empty() const { return value_.empty(); }

    friend bool operator==(const PageId&, const PageId&) = default;
    friend auto operator<=>(const PageId&, const PageId&) = default;

private:
    explicit PageId(std::string v) : value_(std::move(v)) {}
    std::string value_;
};

enum class AttachmentClass {
    document,
    spreadsheet,
    presentation,
    text,
    archive,
    image,
    other,
};

constexpr std::array<AttachmentClass, 7> kAllAttachmentClasses = {
    AttachmentClass::document, AttachmentClass::spreadsheet, AttachmentClass::presentation,
    AttachmentClass::text,     AttachmentClass::archive,     AttachmentClass::image,
    AttachmentClass::other,
};

std::string_view class_name(AttachmentClass cls);
std::optional<AttachmentClass> class_from_name(std::string_view name);

// Normalized absolute URL of an attachment plus its lowercase suffix. The
// suffix is derived from the URL path only (query ignored); equality and
// ordering follow the URL.
struct AttachmentId {
    std::string url;
    std::string suffix;

    friend bool operator==(const AttachmentId& a, const AttachmentId& b) { return a.url == b.url; }
    friend auto operator<=>(const AttachmentId& a, const AttachmentId& b) {
        return a.url <=> b.url;
    }
};

// One fetched bulletin-board page. outlinks and attachments are deduplicated
// in document order and never contain the page itself.
struct PageRecord {
    PageId id;
    std::string title;
    std::string body_text;
    Timestamp fetched_at{};
    int http_status = 0;
    std::vector<PageId> outlinks;
    std::vector<AttachmentId> attachments;
};

// Applies the record invariants: first occurrence wins for duplicate links,
// self-links are dropped.
PageRecord make_page_record(PageId id, std::string title, std::string body_text,
                            Timestamp fetched_at, int http_status, std::vector<PageId> outlinks,
                            std::vector<AttachmentId> attachments);

}  // namespace bc
