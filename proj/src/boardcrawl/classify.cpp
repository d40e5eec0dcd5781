#include "boardcrawl/classify.hpp"

#include <fstream>

#include <json.hpp>

#include "boardcrawl/encoding.hpp"
#include "boardcrawl/error.hpp"
#include "boardcrawl/url.hpp"

namespace bc {

SuffixTable SuffixTable::defaults() {
    SuffixTable t;
    auto add = [&t](AttachmentClass cls, std::initializer_list<const char*> suffixes) {
        for (const char* s : suffixes) t.attachment_suffixes.emplace(s, cls);
    };
    add(AttachmentClass::document, {"doc", "docx", "pdf", "rtf"});
    add(AttachmentClass::spreadsheet, {"xls", "xlsx", "csv"});
    add(AttachmentClass::presentation, {"ppt", "pptx"});
    add(AttachmentClass::text, {"txt"});
    add(AttachmentClass::archive, {"zip", "rar", "7z", "tar", "gz"});
    add(AttachmentClass::image, {"jpg", "jpeg", "png", "gif", "bmp"});
    t.page_suffixes = {"html", "htm", "php", "asp", "aspx", "jsp", "nsf", ""};
    return t;
}

void SuffixTable::validate() const {
    for (const auto& [suffix, _] : attachment_suffixes) {
        if (page_suffixes.contains(suffix)) {
            throw ConfigError("suffix mapped as both page and attachment: \"" + suffix + "\"");
        }
    }
}

SuffixTable load_suffix_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open suffix config: " + file.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid suffix config " + file.string() + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("suffix config must be a JSON object");

    SuffixTable table = doc.value("replace", false) ? SuffixTable{} : SuffixTable::defaults();
    if (doc.value("replace", false)) table.page_suffixes.insert("");

    if (doc.contains("classes")) {
        if (!doc["classes"].is_object()) throw ConfigError("\"classes\" must be an object");
        for (auto& [name, suffixes] : doc["classes"].items()) {
            auto cls = class_from_name(name);
            if (!cls) throw ConfigError("unknown attachment class in suffix config: " + name);
            if (!suffixes.is_array()) throw ConfigError("class \"" + name + "\" must list suffixes");
            for (const auto& s : suffixes) {
                if (!s.is_string()) throw ConfigError("suffixes must be strings");
                std::string suffix = to_lower_ascii(s.get<std::string>());
                if (suffix.empty()) throw ConfigError("empty suffix cannot map to an attachment");
                table.page_suffixes.erase(suffix);
                table.attachment_suffixes[suffix] = *cls;
            }
        }
    }
    if (doc.contains("page_suffixes")) {
        if (!doc["page_suffixes"].is_array()) throw ConfigError("\"page_suffixes\" must be an array");
        for (const auto& s : doc["page_suffixes"]) {
            if (!s.is_string()) throw ConfigError("suffixes must be strings");
            std::string suffix = to_lower_ascii(s.get<std::string>());
            table.attachment_suffixes.erase(suffix);
            table.page_suffixes.insert(suffix);
        }
    }
    table.validate();
    return table;
}

LinkDecision LinkDecision::make_page(PageId id) {
    LinkDecision d;
    d.kind = Kind::page;
    d.page = std::move(id);
    return d;
}

LinkDecision LinkDecision::make_attachment(AttachmentId id, AttachmentClass cls) {
    LinkDecision d;
    d.kind = Kind::attachment;
    d.attachment = std::move(id);
    d.cls = cls;
    return d;
}

LinkDecision LinkDecision::make_discard(std::string reason) {
    LinkDecision d;
    d.kind = Kind::discard;
    d.reason = std::move(reason);
    return d;
}

LinkDecision classify_link(const std::optional<PageId>& normalized, const SuffixTable& table) {
    if (!normalized) return LinkDecision::make_discard("not a fetchable URL");
    std::string suffix = url_suffix(*normalized);
    if (auto it = table.attachment_suffixes.find(suffix); it != table.attachment_suffixes.end()) {
        return LinkDecision::make_attachment(make_attachment_id(*normalized), it->second);
    }
    if (suffix.empty() || table.page_suffixes.contains(suffix)) {
        return LinkDecision::make_page(*normalized);
    }
    return LinkDecision::make_attachment(make_attachment_id(*normalized), AttachmentClass::other);
}

}  // namespace bc
