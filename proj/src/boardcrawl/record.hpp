#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "boardcrawl/types.hpp"

namespace bc {

// A stored attachment: classification, relevance header content, and the
// exact payload bytes as fetched.
struct AttachmentRecord {
    AttachmentId id;
    AttachmentClass cls = AttachmentClass::other;
    double ar = 0.0;
    std::vector<PageId> containing_pages;
    std::string anchor_text;
    Timestamp fetched_at{};
    std::string payload;
    std::string payload_sha256;  // filled from payload when left empty
};

// Relevance header alone (everything but the payload bytes).
struct RecordHeader {
    AttachmentId id;
    AttachmentClass cls = AttachmentClass::other;
    double ar = 0.0;
    std::vector<PageId> containing_pages;
    std::string anchor_text;
    Timestamp fetched_at{};
    std::string payload_sha256;
    std::size_t payload_length = 0;
};

// The .rec container: a line-oriented UTF-8 header in fixed key order
// (boardcrawl-record, url, class, attachrank, containing-pages, anchor-text,
// fetched-at, payload-sha256, payload-length), one empty line, then the raw
// payload bytes. attachrank carries 17 significant digits so the double
// round-trips exactly.
std::string serialize_record(const AttachmentRecord& record);

// Inverse of serialize_record. Throws CorruptRecordError naming the failing
// field on malformed headers, digest mismatches, or truncated payloads.
AttachmentRecord parse_record(std::string_view bytes);

// attachments/<class>/<sha256(url) prefix>_<basename>.rec; the URL hash
// keeps same-named attachments from different URLs apart.
std::filesystem::path record_relpath(const AttachmentId& id, AttachmentClass cls);

std::filesystem::path write_attachment_record(const std::filesystem::path& store_root,
                                              const AttachmentRecord& record);
AttachmentRecord read_attachment_record(const std::filesystem::path& file);
RecordHeader read_attachment_header(const std::filesystem::path& file);

}  // namespace bc
