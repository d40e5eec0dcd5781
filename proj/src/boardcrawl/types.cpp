#include "boardcrawl/types.hpp"

#include <set>

namespace bc {

std::string_view class_name(AttachmentClass cls) {
    switch (cls) {
        case AttachmentClass::document: return "document";
        case AttachmentClass::spreadsheet: return "spreadsheet";
        case AttachmentClass::presentation: return "presentation";
        case AttachmentClass::text: return "text";
        case AttachmentClass::archive: return "archive";
        case AttachmentClass::image: return "image";
        case AttachmentClass::other: return "other";
    }
    return "other";
}

std::optional<AttachmentClass> class_from_name(std::string_view name) {
    for (AttachmentClass cls : kAllAttachmentClasses) {
        if (class_name(cls) == name) return cls;
    }
    return std::nullopt;
}

PageRecord make_page_record(PageId id, std::string title, std::string body_text,
                            Timestamp fetched_at, int http_status, std::vector<PageId> outlinks,
                            std::vector<AttachmentId> attachments) {
    PageRecord rec;
    rec.id = std::move(id);
    rec.title = std::move(title);
    rec.body_text = std::move(body_text);
    rec.fetched_at = fetched_at;
    rec.http_status = http_status;

    std::set<PageId> seen_links;
    for (auto& link : outlinks) {
        if (link == rec.id) continue;
        if (seen_links.insert(link).second) rec.outlinks.push_back(std::move(link));
    }
    std::set<AttachmentId> seen_atts;
    for (auto& att : attachments) {
        if (seen_atts.insert(att).second) rec.attachments.push_back(std::move(att));
    }
    return rec;
}

}  // namespace bc
