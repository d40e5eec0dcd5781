#include "boardcrawl/store.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "boardcrawl/encoding.hpp"
#include "boardcrawl/error.hpp"
#include "boardcrawl/sha256.hpp"
#include "boardcrawl/url.hpp"

namespace bc {

namespace {

using nlohmann::json;

std::string slug_for(const PageId& id) {
    std::string base = url_basename(id.str(), "index");
    std::string out;
    for (char c : base) {
        bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-';
        out.push_back(ok ? c : '_');
        if (out.size() >= 40) break;
    }
    return out.empty() ? "index" : out;
}

json manifest_to_json(const StoreManifest& m) {
    json pages = json::array();
    for (const auto& p : m.pages) {
        pages.push_back({{"id", p.id.str()}, {"title", p.title}, {"path", p.path}});
    }
    json attachments = json::array();
    for (const auto& a : m.attachments) {
        attachments.push_back({{"id", a.id.url},
                               {"class", std::string(class_name(a.cls))},
                               {"attachrank", a.ar},
                               {"path", a.path}});
    }
    json doc{{"version", m.version}, {"pages", pages}, {"attachments", attachments}};
    if (m.rank_config) {
        doc["rank_config"] = {{"d", m.rank_config->config.damping},
                              {"epsilon", m.rank_config->config.epsilon},
                              {"max_iterations", m.rank_config->config.max_iterations},
                              {"iterations_used", m.rank_config->iterations_used},
                              {"final_residual", m.rank_config->final_residual},
                              {"converged", m.rank_config->converged}};
    } else {
        doc["rank_config"] = nullptr;
    }
    return doc;
}

StoreManifest manifest_from_json(const json& doc) {
    StoreManifest m;
    m.version = doc.at("version").get<int>();
    for (const auto& p : doc.at("pages")) {
        ManifestPage page;
        page.id = PageId::from_normalized(p.at("id").get<std::string>());
        page.title = p.at("title").get<std::string>();
        page.path = p.at("path").get<std::string>();
        m.pages.push_back(std::move(page));
    }
    for (const auto& a : doc.at("attachments")) {
        ManifestAttachment att;
        att.id = make_attachment_id(PageId::from_normalized(a.at("id").get<std::string>()));
        auto cls = class_from_name(a.at("class").get<std::string>());
        if (!cls) throw IoError("manifest lists unknown class: " + a.at("class").get<std::string>());
        att.cls = *cls;
        att.ar = a.at("attachrank").get<double>();
        att.path = a.at("path").get<std::string>();
        m.attachments.push_back(std::move(att));
    }
    if (doc.contains("rank_config") && !doc.at("rank_config").is_null()) {
        const auto& rc = doc.at("rank_config");
        RankConfigEcho echo;
        echo.config.damping = rc.at("d").get<double>();
        echo.config.epsilon = rc.at("epsilon").get<double>();
        echo.config.max_iterations = rc.at("max_iterations").get<int>();
        echo.iterations_used = rc.at("iterations_used").get<int>();
        echo.final_residual = rc.at("final_residual").get<double>();
        echo.converged = rc.at("converged").get<bool>();
        m.rank_config = echo;
    }
    return m;
}

void write_text_file(const std::filesystem::path& file, const std::string& content) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + file.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + file.string());
}

json read_json_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open: " + file.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw IoError("invalid JSON in " + file.string() + ": " + e.what());
    }
    return doc;
}

template <typename T, typename Key>
void upsert_sorted(std::vector<T>& entries, T entry, Key key) {
    auto it = std::lower_bound(entries.begin(), entries.end(), entry,
                               [&key](const T& a, const T& b) { return key(a) < key(b); });
    if (it != entries.end() && key(*it) == key(entry)) {
        *it = std::move(entry);
    } else {
        entries.insert(it, std::move(entry));
    }
}

}  // namespace

std::filesystem::path page_relpath(const PageId& id) {
    std::string hash = sha256_hex(id.str()).substr(0, 12);
    return std::filesystem::path("pages") / (hash + "_" + slug_for(id) + ".json");
}

void write_page_json(const std::filesystem::path& file, const PageRecord& page) {
    json outlinks = json::array();
    for (const auto& link : page.outlinks) outlinks.push_back(link.str());
    json attachments = json::array();
    for (const auto& att : page.attachments) attachments.push_back(att.url);
    json doc{{"id", page.id.str()},
             {"title", page.title},
             {"body_text", page.body_text},
             {"fetched_at", format_rfc3339(page.fetched_at)},
             {"http_status", page.http_status},
             {"outlinks", outlinks},
             {"attachments", attachments}};
    write_text_file(file, doc.dump(2) + "\n");
}

PageRecord read_page_json(const std::filesystem::path& file) {
    json doc = read_json_file(file);
    PageRecord page;
    try {
        page.id = PageId::from_normalized(doc.at("id").get<std::string>());
        page.title = doc.at("title").get<std::string>();
        page.body_text = doc.at("body_text").get<std::string>();
        auto fetched = parse_rfc3339(doc.at("fetched_at").get<std::string>());
        if (!fetched) throw IoError("bad fetched_at in " + file.string());
        page.fetched_at = *fetched;
        page.http_status = doc.at("http_status").get<int>();
        for (const auto& link : doc.at("outlinks")) {
            page.outlinks.push_back(PageId::from_normalized(link.get<std::string>()));
        }
        for (const auto& att : doc.at("attachments")) {
            page.attachments.push_back(
                make_attachment_id(PageId::from_normalized(att.get<std::string>())));
        }
    } catch (const json::exception& e) {
        throw IoError("invalid page file " + file.string() + ": " + e.what());
    }
    return page;
}

Store Store::create(const std::filesystem::path& root) {
    std::error_code ec;
    std::filesystem::create_directories(root, ec);
    if (ec) throw IoError("cannot create store root " + root.string() + ": " + ec.message());
    // Only artifacts this store owns are cleared.
    std::filesystem::remove(root / "manifest.json", ec);
    std::filesystem::remove_all(root / "pages", ec);
    std::filesystem::remove_all(root / "attachments", ec);
    std::filesystem::create_directories(root / "pages", ec);
    if (ec) throw IoError("cannot create pages dir: " + ec.message());
    std::filesystem::create_directories(root / "attachments", ec);
    if (ec) throw IoError("cannot create attachments dir: " + ec.message());
    return Store(root);
}

Store Store::open(const std::filesystem::path& root) {
    auto manifest_path = root / "manifest.json";
    if (!std::filesystem::exists(manifest_path)) {
        throw IoError("no store at " + root.string() + " (missing manifest.json)");
    }
    Store store(root);
    store.manifest_ = manifest_from_json(read_json_file(manifest_path));
    for (const auto& p : store.manifest_.pages) {
        if (!std::filesystem::exists(root / p.path)) {
            throw IoError("manifest references missing page file: " + (root / p.path).string());
        }
    }
    for (const auto& a : store.manifest_.attachments) {
        if (!std::filesystem::exists(root / a.path)) {
            throw IoError("manifest references missing record: " + (root / a.path).string());
        }
    }
    return store;
}

std::filesystem::path Store::store_page(const PageRecord& page) {
    std::filesystem::path rel = page_relpath(page.id);
    write_page_json(root_ / rel, page);
    upsert_sorted(manifest_.pages, ManifestPage{page.id, page.title, rel.generic_string()},
                  [](const ManifestPage& p) { return p.id; });
    return rel;
}

std::filesystem::path Store::put_attachment(const AttachmentRecord& record) {
    std::filesystem::path rel = write_attachment_record(root_, record);
    upsert_sorted(
        manifest_.attachments,
        ManifestAttachment{record.id, record.cls, record.ar, rel.generic_string()},
        [](const ManifestAttachment& a) { return a.id; });
    return rel;
}

PageRecord Store::load_page(const PageId& id) const {
    for (const auto& p : manifest_.pages) {
        if (p.id == id) return read_page_json(root_ / p.path);
    }
    throw IoError("page not in manifest: " + id.str());
}

std::vector<PageRecord> Store::load_all_pages() const {
    std::vector<PageRecord> pages;
    pages.reserve(manifest_.pages.size());
    for (const auto& p : manifest_.pages) pages.push_back(read_page_json(root_ / p.path));
    return pages;
}

void Store::set_rank_echo(const RankConfigEcho& echo) { manifest_.rank_config = echo; }

void Store::save_manifest() const {
    write_text_file(root_ / "manifest.json", manifest_to_json(manifest_).dump(2) + "\n");
}

}  // namespace bc
