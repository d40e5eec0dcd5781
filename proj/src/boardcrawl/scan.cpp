#include "boardcrawl/scan.hpp"

#include <cctype>

#include "boardcrawl/encoding.hpp"

namespace bc {

namespace {

constexpr auto npos = std::string_view::npos;

char lower(char c) { return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c; }

bool ci_equals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (lower(a[i]) != lower(b[i])) return false;
    }
    return true;
}

// Case-insensitive search for needle (given lowercase) at or after `from`.
std::size_t ci_find(std::string_view hay, std::string_view needle, std::size_t from) {
    if (needle.empty() || hay.size() < needle.size()) return npos;
    for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
        std::size_t j = 0;
        while (j < needle.size() && lower(hay[i + j]) == needle[j]) ++j;
        if (j == needle.size()) return i;
    }
    return npos;
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':';
}

void append_entity_decoded(std::string& out, std::string_view entity) {
    if (entity.empty()) return;
    if (entity[0] == '#') {
        long code = 0;
        bool ok = false;
        if (entity.size() > 1 && (entity[1] == 'x' || entity[1] == 'X')) {
            for (std::size_t i = 2; i < entity.size(); ++i) {
                int d = std::isdigit(static_cast<unsigned char>(entity[i])) ? entity[i] - '0'
                        : lower(entity[i]) >= 'a' && lower(entity[i]) <= 'f'
                            ? lower(entity[i]) - 'a' + 10
                            : -1;
                if (d < 0) return;
                code = code * 16 + d;
                ok = true;
            }
        } else {
            for (std::size_t i = 1; i < entity.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(entity[i]))) return;
                code = code * 10 + (entity[i] - '0');
                ok = true;
            }
        }
        if (!ok || code <= 0 || code > 0x10ffff) return;
        // UTF-8 encode.
        if (code < 0x80) {
            out.push_back(static_cast<char>(code));
        } else if (code < 0x800) {
            out.push_back(static_cast<char>(0xc0 | (code >> 6)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3f)));
        } else if (code < 0x10000) {
            out.push_back(static_cast<char>(0xe0 | (code >> 12)));
            out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3f)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3f)));
        } else {
            out.push_back(static_cast<char>(0xf0 | (code >> 18)));
            out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3f)));
            out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3f)));
            out.push_back(static_cast<char>(0x80 | (code & 0x3f)));
        }
        return;
    }
    if (ci_equals(entity, "amp")) out.push_back('&');
    else if (ci_equals(entity, "lt")) out.push_back('<');
    else if (ci_equals(entity, "gt")) out.push_back('>');
    else if (ci_equals(entity, "quot")) out.push_back('"');
    else if (ci_equals(entity, "apos")) out.push_back('\'');
    else if (ci_equals(entity, "nbsp")) out.push_back(' ');
    // Unknown entities vanish; board markup rarely uses more than these.
}

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '&') {
            out.push_back(s[i]);
            continue;
        }
        auto semi = s.find(';', i + 1);
        if (semi == npos || semi - i > 10) {
            out.push_back('&');
            continue;
        }
        append_entity_decoded(out, s.substr(i + 1, semi - i - 1));
        i = semi;
    }
    return out;
}

struct TagAttrs {
    std::string href;
    bool has_href = false;
    std::size_t end = npos;  // index just past '>' (or html.size() on truncation)
};

// Parses attributes from `pos` (just past the tag name) to the closing '>'.
TagAttrs parse_tag_attrs(std::string_view html, std::size_t pos) {
    TagAttrs out;
    while (pos < html.size() && html[pos] != '>') {
        char c = html[pos];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '/') {
            ++pos;
            continue;
        }
        if (!is_name_char(c)) {
            ++pos;
            continue;
        }
        std::size_t name_start = pos;
        while (pos < html.size() && is_name_char(html[pos])) ++pos;
        std::string_view name = html.substr(name_start, pos - name_start);
        while (pos < html.size() && std::isspace(static_cast<unsigned char>(html[pos]))) ++pos;
        std::string value;
        bool has_value = false;
        if (pos < html.size() && html[pos] == '=') {
            ++pos;
            while (pos < html.size() && std::isspace(static_cast<unsigned char>(html[pos]))) ++pos;
            if (pos < html.size() && (html[pos] == '"' || html[pos] == '\'')) {
                char quote = html[pos++];
                std::size_t start = pos;
                while (pos < html.size() && html[pos] != quote && html[pos] != '>') ++pos;
                value.assign(html.substr(start, pos - start));
                if (pos < html.size() && html[pos] == quote) ++pos;
                has_value = true;
            } else {
                std::size_t start = pos;
                while (pos < html.size() && !std::isspace(static_cast<unsigned char>(html[pos])) &&
                       html[pos] != '>') {
                    ++pos;
                }
                value.assign(html.substr(start, pos - start));
                has_value = true;
            }
        }
        if (has_value && !out.has_href && ci_equals(name, "href")) {
            out.href = decode_entities(value);
            out.has_href = true;
        }
    }
    out.end = pos < html.size() ? pos + 1 : html.size();
    return out;
}

// Visible text between `pos` and the matching </a> (or the next <a, or EOF),
// nested tags stripped. Returns the anchor text and advances pos.
std::string collect_anchor_text(std::string_view html, std::size_t& pos) {
    std::string text;
    while (pos < html.size()) {
        if (html[pos] == '<') {
            if (ci_find(html.substr(pos, 3), "</a", 0) == 0 &&
                (pos + 3 >= html.size() || !is_name_char(html[pos + 3]))) {
                auto gt = html.find('>', pos);
                pos = gt == npos ? html.size() : gt + 1;
                break;
            }
            if (pos + 1 < html.size() && (lower(html[pos + 1]) == 'a') &&
                (pos + 2 >= html.size() || !is_name_char(html[pos + 2]))) {
                break;  // a new anchor opens; recover by closing this one
            }
            auto gt = html.find('>', pos);
            if (gt == npos) {
                pos = html.size();
                break;
            }
            text.push_back(' ');
            pos = gt + 1;
            continue;
        }
        text.push_back(html[pos]);
        ++pos;
    }
    return collapse_whitespace(decode_entities(text));
}

std::size_t skip_comment(std::string_view html, std::size_t pos) {
    auto end = html.find("-->", pos);
    return end == npos ? html.size() : end + 3;
}

std::size_t skip_element(std::string_view html, std::size_t pos, std::string_view close_tag) {
    auto end = ci_find(html, close_tag, pos);
    if (end == npos) return html.size();
    auto gt = html.find('>', end);
    return gt == npos ? html.size() : gt + 1;
}

}  // namespace

std::vector<RawLink> extract_links(std::string_view html, const PageId& base) {
    std::vector<RawLink> links;
    std::size_t pos = 0;
    while (pos < html.size()) {
        pos = html.find('<', pos);
        if (pos == npos) break;
        if (html.substr(pos, 4) == "<!--") {
            pos = skip_comment(html, pos);
            continue;
        }
        if (ci_find(html.substr(pos, 7), "<script", 0) == 0) {
            pos = skip_element(html, pos + 7, "</script");
            continue;
        }
        if (ci_find(html.substr(pos, 6), "<style", 0) == 0) {
            pos = skip_element(html, pos + 6, "</style");
            continue;
        }
        if (pos + 1 < html.size() && lower(html[pos + 1]) == 'a' &&
            (pos + 2 >= html.size() || !is_name_char(html[pos + 2]))) {
            TagAttrs attrs = parse_tag_attrs(html, pos + 2);
            std::size_t body = attrs.end;
            std::string anchor = collect_anchor_text(html, body);
            if (attrs.has_href && !attrs.href.empty()) {
                RawLink link;
                link.href = attrs.href;
                link.anchor_text = std::move(anchor);
                link.base = base;
                link.position = links.size();
                links.push_back(std::move(link));
            }
            pos = body;
            continue;
        }
        ++pos;
    }
    return links;
}

PageText extract_page_text(std::string_view html) {
    PageText out;

    auto title_open = ci_find(html, "<title", 0);
    if (title_open != npos) {
        auto gt = html.find('>', title_open);
        if (gt != npos) {
            auto close = ci_find(html, "</title", gt);
            auto end = close == npos ? html.size() : close;
            out.title = collapse_whitespace(decode_entities(html.substr(gt + 1, end - gt - 1)));
        }
    }

    std::string text;
    std::size_t pos = 0;
    while (pos < html.size()) {
        if (html[pos] != '<') {
            text.push_back(html[pos]);
            ++pos;
            continue;
        }
        if (html.substr(pos, 4) == "<!--") {
            pos = skip_comment(html, pos);
            text.push_back(' ');
            continue;
        }
        if (ci_find(html.substr(pos, 7), "<script", 0) == 0) {
            pos = skip_element(html, pos + 7, "</script");
            text.push_back(' ');
            continue;
        }
        if (ci_find(html.substr(pos, 6), "<style", 0) == 0) {
            pos = skip_element(html, pos + 6, "</style");
            text.push_back(' ');
            continue;
        }
        if (ci_find(html.substr(pos, 6), "<title", 0) == 0) {
            pos = skip_element(html, pos + 6, "</title");
            text.push_back(' ');
            continue;
        }
        auto gt = html.find('>', pos);
        if (gt == npos) break;
        text.push_back(' ');
        pos = gt + 1;
    }
    out.body_text = collapse_whitespace(decode_entities(text));
    return out;
}

}  // namespace bc
