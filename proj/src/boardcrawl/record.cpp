#include "boardcrawl/record.hpp"

#include <fstream>
#include <sstream>

#include "boardcrawl/encoding.hpp"
#include "boardcrawl/error.hpp"
#include "boardcrawl/sha256.hpp"
#include "boardcrawl/url.hpp"

namespace bc {

namespace {

constexpr std::string_view kMagicLine = "boardcrawl-record: 1";

std::string sanitize_filename(std::string_view name) {
    std::string out;
    for (char c : name) {
        bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-';
        out.push_back(ok ? c : '_');
        if (out.size() >= 40) break;
    }
    return out.empty() ? "attachment" : out;
}

struct HeaderReader {
    std::string_view bytes;
    std::size_t pos = 0;

    // Next header line without its newline; throws on EOF before the blank
    // separator line.
    std::string_view next_line(const char* missing_field) {
        if (pos >= bytes.size()) {
            throw CorruptRecordError(missing_field,
                                     std::string("record header truncated before \"") +
                                         missing_field + "\"");
        }
        auto nl = bytes.find('\n', pos);
        if (nl == std::string_view::npos) {
            throw CorruptRecordError(missing_field,
                                     std::string("record header truncated before \"") +
                                         missing_field + "\"");
        }
        std::string_view line = bytes.substr(pos, nl - pos);
        pos = nl + 1;
        return line;
    }

    std::string field(const char* key) {
        std::string_view line = next_line(key);
        std::string prefix = std::string(key) + ": ";
        if (line.substr(0, prefix.size()) != prefix) {
            throw CorruptRecordError(key, std::string("expected header line \"") + key +
                                              "\", got \"" + std::string(line) + "\"");
        }
        return std::string(line.substr(prefix.size()));
    }
};

RecordHeader parse_header(HeaderReader& reader) {
    RecordHeader header;
    std::string_view magic = reader.next_line("boardcrawl-record");
    if (magic != kMagicLine) {
        throw CorruptRecordError("boardcrawl-record", "not a boardcrawl record (bad magic line)");
    }

    std::string url = reader.field("url");
    if (url.empty()) throw CorruptRecordError("url", "record url is empty");
    header.id = make_attachment_id(PageId::from_normalized(url));

    std::string cls = reader.field("class");
    auto parsed_cls = class_from_name(cls);
    if (!parsed_cls) throw CorruptRecordError("class", "unknown attachment class: " + cls);
    header.cls = *parsed_cls;

    auto ar = parse_double(reader.field("attachrank"));
    if (!ar) throw CorruptRecordError("attachrank", "attachrank is not a number");
    header.ar = *ar;

    std::string pages = reader.field("containing-pages");
    std::size_t start = 0;
    while (start <= pages.size() && !pages.empty()) {
        auto comma = pages.find(',', start);
        auto end = comma == std::string::npos ? pages.size() : comma;
        auto decoded = header_field_decode(std::string_view(pages).substr(start, end - start));
        if (!decoded || decoded->empty()) {
            throw CorruptRecordError("containing-pages", "bad containing-pages entry");
        }
        header.containing_pages.push_back(PageId::from_normalized(*decoded));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (header.containing_pages.empty()) {
        throw CorruptRecordError("containing-pages", "containing-pages is empty");
    }

    auto anchor = header_field_decode(reader.field("anchor-text"));
    if (!anchor) throw CorruptRecordError("anchor-text", "bad percent-encoding in anchor-text");
    header.anchor_text = *anchor;

    auto fetched = parse_rfc3339(reader.field("fetched-at"));
    if (!fetched) throw CorruptRecordError("fetched-at", "fetched-at is not an RFC 3339 timestamp");
    header.fetched_at = *fetched;

    header.payload_sha256 = reader.field("payload-sha256");
    if (header.payload_sha256.size() != 64) {
        throw CorruptRecordError("payload-sha256", "payload-sha256 is not a sha256 hex digest");
    }

    std::string length = reader.field("payload-length");
    std::size_t parsed = 0;
    for (char c : length) {
        if (c < '0' || c > '9') {
            throw CorruptRecordError("payload-length", "payload-length is not a byte count");
        }
        parsed = parsed * 10 + static_cast<std::size_t>(c - '0');
    }
    if (length.empty()) throw CorruptRecordError("payload-length", "payload-length missing");
    header.payload_length = parsed;

    std::string_view blank = reader.next_line("payload");
    if (!blank.empty()) {
        throw CorruptRecordError("payload", "expected empty line between header and payload");
    }
    return header;
}

}  // namespace

std::string serialize_record(const AttachmentRecord& record) {
    std::string digest = sha256_hex(record.payload);
    if (!record.payload_sha256.empty() && record.payload_sha256 != digest) {
        throw StructuralError("record payload_sha256 does not match payload for " +
                              record.id.url);
    }
    if (record.containing_pages.empty()) {
        throw StructuralError("record has no containing pages: " + record.id.url);
    }
    std::string out;
    out.reserve(record.payload.size() + 512);
    out += kMagicLine;
    out += '\n';
    out += "url: " + record.id.url + '\n';
    out += "class: " + std::string(class_name(record.cls)) + '\n';
    out += "attachrank: " + format_double17(record.ar) + '\n';
    out += "containing-pages: ";
    for (std::size_t i = 0; i < record.containing_pages.size(); ++i) {
        if (i) out += ',';
        out += header_field_encode(record.containing_pages[i].str());
    }
    out += '\n';
    out += "anchor-text: " + header_field_encode(record.anchor_text) + '\n';
    out += "fetched-at: " + format_rfc3339(record.fetched_at) + '\n';
    out += "payload-sha256: " + digest + '\n';
    out += "payload-length: " + std::to_string(record.payload.size()) + '\n';
    out += '\n';
    out += record.payload;
    return out;
}

AttachmentRecord parse_record(std::string_view bytes) {
    HeaderReader reader{bytes};
    RecordHeader header = parse_header(reader);

    std::string_view payload = bytes.substr(reader.pos);
    if (payload.size() != header.payload_length) {
        throw CorruptRecordError("payload-length",
                                 "payload is " + std::to_string(payload.size()) +
                                     " bytes, header declares " +
                                     std::to_string(header.payload_length));
    }
    AttachmentRecord record;
    record.id = header.id;
    record.cls = header.cls;
    record.ar = header.ar;
    record.containing_pages = header.containing_pages;
    record.anchor_text = header.anchor_text;
    record.fetched_at = header.fetched_at;
    record.payload.assign(payload);
    record.payload_sha256 = sha256_hex(record.payload);
    if (record.payload_sha256 != header.payload_sha256) {
        throw CorruptRecordError("payload-sha256", "payload digest mismatch (corrupt payload)");
    }
    return record;
}

std::filesystem::path record_relpath(const AttachmentId& id, AttachmentClass cls) {
    std::string hash = sha256_hex(id.url).substr(0, 12);
    std::string name = sanitize_filename(url_basename(id.url, "attachment"));
    return std::filesystem::path("attachments") / std::string(class_name(cls)) /
           (hash + "_" + name + ".rec");
}

std::filesystem::path write_attachment_record(const std::filesystem::path& store_root,
                                              const AttachmentRecord& record) {
    std::filesystem::path rel = record_relpath(record.id, record.cls);
    std::filesystem::path full = store_root / rel;
    std::error_code ec;
    std::filesystem::create_directories(full.parent_path(), ec);
    if (ec) throw IoError("cannot create " + full.parent_path().string() + ": " + ec.message());
    std::ofstream out(full, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + full.string());
    std::string bytes = serialize_record(record);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + full.string());
    return rel;
}

AttachmentRecord read_attachment_record(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open record: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_record(buf.str());
}

RecordHeader read_attachment_header(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open record: " + file.string());
    std::string head;
    head.reserve(4096);
    std::string line;
    while (std::getline(in, line)) {
        head += line;
        head += '\n';
        if (line.empty()) break;
    }
    HeaderReader reader{head};
    return parse_header(reader);
}

}  // namespace bc
