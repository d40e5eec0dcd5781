#include "boardcrawl/url.hpp"

#include <cctype>

#include "boardcrawl/encoding.hpp"

namespace bc {

namespace {

constexpr auto npos = std::string_view::npos;

struct Reference {
    std::optional<std::string> scheme;
    std::optional<std::string> authority;
    std::string path;
    std::optional<std::string> query;
};

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// RFC 3986 component split, fragment discarded. Accepts anything; validity
// of the pieces is checked later.
Reference split_reference(std::string_view ref) {
    Reference out;
    if (auto h = ref.find('#'); h != npos) ref = ref.substr(0, h);

    if (!ref.empty() && is_alpha(ref[0])) {
        std::size_t i = 1;
        while (i < ref.size() &&
               (is_alpha(ref[i]) || is_digit(ref[i]) || ref[i] == '+' || ref[i] == '-' ||
                ref[i] == '.')) {
            ++i;
        }
        if (i < ref.size() && ref[i] == ':') {
            out.scheme = to_lower_ascii(ref.substr(0, i));
            ref = ref.substr(i + 1);
        }
    }

    if (auto q = ref.find('?'); q != npos) {
        out.query = std::string(ref.substr(q + 1));
        ref = ref.substr(0, q);
    }

    if (ref.size() >= 2 && ref[0] == '/' && ref[1] == '/') {
        ref = ref.substr(2);
        auto slash = ref.find('/');
        out.authority = std::string(ref.substr(0, slash));
        ref = slash == npos ? std::string_view{} : ref.substr(slash);
    }

    out.path = std::string(ref);
    return out;
}

bool parse_port(std::string_view text, int& port) {
    if (text.empty() || text.size() > 5) return false;
    int value = 0;
    for (char c : text) {
        if (!is_digit(c)) return false;
        value = value * 10 + (c - '0');
    }
    if (value < 1 || value > 65535) return false;
    port = value;
    return true;
}

// host[:port], userinfo dropped, bracketed IPv6 literals kept whole.
bool parse_authority(std::string_view auth, UrlParts& out) {
    if (auto at = auth.rfind('@'); at != npos) auth = auth.substr(at + 1);
    if (!auth.empty() && auth[0] == '[') {
        auto rb = auth.find(']');
        if (rb == npos) return false;
        out.host = to_lower_ascii(auth.substr(0, rb + 1));
        auto rest = auth.substr(rb + 1);
        if (rest.empty()) return true;
        if (rest[0] != ':') return false;
        return parse_port(rest.substr(1), out.port);
    }
    auto colon = auth.rfind(':');
    if (colon != npos) {
        out.host = to_lower_ascii(auth.substr(0, colon));
        auto p = auth.substr(colon + 1);
        if (!p.empty() && !parse_port(p, out.port)) return false;
    } else {
        out.host = to_lower_ascii(auth);
    }
    return !out.host.empty();
}

// RFC 3986 section 5.2.4.
std::string remove_dot_segments(std::string_view path) {
    std::string input(path);
    std::string output;
    auto pop_segment = [&output] {
        auto slash = output.rfind('/');
        output.erase(slash == std::string::npos ? 0 : slash);
    };
    while (!input.empty()) {
        if (input.rfind("../", 0) == 0) {
            input.erase(0, 3);
        } else if (input.rfind("./", 0) == 0) {
            input.erase(0, 2);
        } else if (input.rfind("/./", 0) == 0) {
            input.replace(0, 3, "/");
        } else if (input == "/.") {
            input = "/";
        } else if (input.rfind("/../", 0) == 0) {
            input.replace(0, 4, "/");
            pop_segment();
        } else if (input == "/..") {
            input = "/";
            pop_segment();
        } else if (input == "." || input == "..") {
            input.clear();
        } else {
            std::size_t start = input[0] == '/' ? 1 : 0;
            std::size_t end = input.find('/', start);
            output += input.substr(0, end == std::string::npos ? input.size() : end);
            input.erase(0, end == std::string::npos ? input.size() : end);
        }
    }
    return output;
}

std::string merge_paths(const UrlParts& base, const std::string& ref_path) {
    if (base.path.empty()) return "/" + ref_path;
    auto slash = base.path.rfind('/');
    if (slash == std::string::npos) return ref_path;
    return base.path.substr(0, slash + 1) + ref_path;
}

// Percent-encodes bytes a canonical URL must not carry raw. '%' is left
// alone so canonicalization is idempotent on already-encoded text.
std::string encode_component(std::string_view s) {
    static const char* digits = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        bool unsafe = c <= 0x20 || c >= 0x7f || c == '"' || c == '<' || c == '>' || c == '\\' ||
                      c == '^' || c == '`' || c == '{' || c == '|' || c == '}';
        if (unsafe) {
            out.push_back('%');
            out.push_back(digits[c >> 4]);
            out.push_back(digits[c & 0xf]);
        } else {
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

std::optional<std::string> canonical_text(UrlParts parts) {
    if (parts.scheme != "http" && parts.scheme != "https") return std::nullopt;
    if (parts.host.empty()) return std::nullopt;
    if ((parts.scheme == "http" && parts.port == 80) ||
        (parts.scheme == "https" && parts.port == 443)) {
        parts.port = -1;
    }
    if (parts.path.empty()) parts.path = "/";
    std::string out = parts.scheme + "://" + parts.host;
    if (parts.port != -1) {
        out += ':';
        out += std::to_string(parts.port);
    }
    out += encode_component(parts.path);
    if (parts.query) {
        out += '?';
        out += encode_component(*parts.query);
    }
    return out;
}

// Tabs and line breaks inside an href are stripped, surrounding spaces
// trimmed (the lenient treatment board markup needs).
std::string clean_href(std::string_view href) {
    std::size_t b = 0, e = href.size();
    while (b < e && (href[b] == ' ' || href[b] == '\t' || href[b] == '\r' || href[b] == '\n')) ++b;
    while (e > b &&
           (href[e - 1] == ' ' || href[e - 1] == '\t' || href[e - 1] == '\r' || href[e - 1] == '\n')) {
        --e;
    }
    std::string out;
    out.reserve(e - b);
    for (std::size_t i = b; i < e; ++i) {
        char c = href[i];
        if (c == '\t' || c == '\r' || c == '\n') continue;
        out.push_back(c);
    }
    return out;
}

std::optional<UrlParts> resolve(const UrlParts& base, const Reference& ref) {
    UrlParts target;
    if (ref.scheme) {
        target.scheme = *ref.scheme;
        if (!ref.authority || !parse_authority(*ref.authority, target)) return std::nullopt;
        target.path = remove_dot_segments(ref.path);
        target.query = ref.query;
        return target;
    }
    target.scheme = base.scheme;
    if (ref.authority) {
        if (!parse_authority(*ref.authority, target)) return std::nullopt;
        target.path = remove_dot_segments(ref.path);
        target.query = ref.query;
        return target;
    }
    target.host = base.host;
    target.port = base.port;
    if (ref.path.empty()) {
        target.path = base.path;
        target.query = ref.query ? ref.query : base.query;
    } else if (ref.path[0] == '/') {
        target.path = remove_dot_segments(ref.path);
        target.query = ref.query;
    } else {
        target.path = remove_dot_segments(merge_paths(base, ref.path));
        target.query = ref.query;
    }
    return target;
}

}  // namespace

std::optional<UrlParts> split_url(std::string_view url) {
    Reference ref = split_reference(url);
    if (!ref.scheme || !ref.authority) return std::nullopt;
    UrlParts parts;
    parts.scheme = *ref.scheme;
    if (!parse_authority(*ref.authority, parts)) return std::nullopt;
    parts.path = ref.path;
    parts.query = ref.query;
    return parts;
}

std::optional<PageId> normalize_url(const PageId& base, std::string_view href) {
    auto base_parts = split_url(base.str());
    if (!base_parts) return std::nullopt;
    Reference ref = split_reference(clean_href(href));
    if (ref.scheme && *ref.scheme != "http" && *ref.scheme != "https") return std::nullopt;
    auto resolved = resolve(*base_parts, ref);
    if (!resolved) return std::nullopt;
    auto text = canonical_text(std::move(*resolved));
    if (!text) return std::nullopt;
    return PageId::from_normalized(std::move(*text));
}

std::optional<PageId> normalize_absolute_url(std::string_view url) {
    Reference ref = split_reference(clean_href(url));
    if (!ref.scheme || !ref.authority) return std::nullopt;
    if (*ref.scheme != "http" && *ref.scheme != "https") return std::nullopt;
    UrlParts parts;
    parts.scheme = *ref.scheme;
    if (!parse_authority(*ref.authority, parts)) return std::nullopt;
    parts.path = remove_dot_segments(ref.path);
    parts.query = ref.query;
    auto text = canonical_text(std::move(parts));
    if (!text) return std::nullopt;
    return PageId::from_normalized(std::move(*text));
}

std::string url_host(const PageId& id) {
    auto parts = split_url(id.str());
    return parts ? parts->host : std::string{};
}

std::string url_path(const PageId& id) {
    auto parts = split_url(id.str());
    if (!parts) return "/";
    return parts->path.empty() ? "/" : parts->path;
}

std::string url_suffix(const PageId& id) {
    std::string path = url_path(id);
    auto slash = path.rfind('/');
    std::string segment = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = segment.rfind('.');
    if (dot == std::string::npos) return {};
    return to_lower_ascii(std::string_view(segment).substr(dot + 1));
}

AttachmentId make_attachment_id(const PageId& id) {
    return AttachmentId{id.str(), url_suffix(id)};
}

std::string url_basename(std::string_view url, std::string_view fallback) {
    if (auto q = url.find('?'); q != npos) url = url.substr(0, q);
    auto slash = url.rfind('/');
    std::string_view segment = slash == npos ? url : url.substr(slash + 1);
    if (segment.empty()) return std::string(fallback);
    return std::string(segment);
}

}  // namespace bc
