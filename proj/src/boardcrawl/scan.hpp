#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "boardcrawl/types.hpp"

namespace bc {

// One hyperlink as it appears in the document, before normalization.
struct RawLink {
    std::string href;
    std::string anchor_text;
    PageId base;
    std::size_t position = 0;
};

// Returns every `a href` reference in document order with its anchor text.
// The scanner is permissive: unquoted or single-quoted attributes, odd
// casing, stray markup and unterminated anchors degrade to fewer links,
// never to a failure.
std::vector<RawLink> extract_links(std::string_view html, const PageId& base);

struct PageText {
    std::string title;
    std::string body_text;
};

// Title element content plus visible text with tags stripped and whitespace
// collapsed. Script, style and comment content is not visible text.
PageText extract_page_text(std::string_view html);

}  // namespace bc
