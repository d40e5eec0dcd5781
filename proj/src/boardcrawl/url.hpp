#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "boardcrawl/types.hpp"

namespace bc {

// Parsed pieces of an http(s) URL. host and scheme are lowercase; port is -1
// when absent; query has no leading '?' and fragment is never kept.
struct UrlParts {
    std::string scheme;
    std::string host;
    int port = -1;
    std::string path;
    std::optional<std::string> query;
};

// Splits a normalized id back into parts. Ids produced by this module always
// parse; returns nullopt only for hand-built malformed strings.
std::optional<UrlParts> split_url(std::string_view url);

// Resolves href against a normalized base and canonicalizes the result:
// lowercase scheme/host, fragment stripped, default ports removed, dot
// segments resolved, unsafe bytes percent-encoded. Non-http(s) schemes
// (mailto, javascript, ftp, data, ...) and unparseable references yield
// nullopt ("not a fetchable URL").
std::optional<PageId> normalize_url(const PageId& base, std::string_view href);

// Same canonicalization for an absolute URL with no base (seed input).
std::optional<PageId> normalize_absolute_url(std::string_view url);

std::string url_host(const PageId& id);
std::string url_path(const PageId& id);

// Lowercase extension of the final path segment, query ignored, no leading
// dot; "" when the segment has no dot (including trailing-slash paths).
std::string url_suffix(const PageId& id);

AttachmentId make_attachment_id(const PageId& id);

// Last path segment with any query stripped; falls back to `fallback` when
// the path ends in '/'.
std::string url_basename(std::string_view url, std::string_view fallback = "item");

}  // namespace bc
