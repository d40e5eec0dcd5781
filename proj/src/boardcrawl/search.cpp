#include "boardcrawl/search.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "boardcrawl/encoding.hpp"
#include "boardcrawl/error.hpp"
#include "boardcrawl/url.hpp"

namespace bc {

namespace {

using nlohmann::json;

bool is_token_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

int find_tf(const std::vector<std::pair<int, int>>& postings, int doc_index) {
    auto it = std::lower_bound(postings.begin(), postings.end(), doc_index,
                               [](const auto& entry, int doc) { return entry.first < doc; });
    if (it == postings.end() || it->first != doc_index) return 0;
    return it->second;
}

std::string make_snippet(const std::string& text, const std::vector<std::string>& terms) {
    std::string lower = to_lower_ascii(text);
    std::size_t best = std::string::npos;
    for (const auto& term : terms) {
        std::size_t pos = 0;
        while ((pos = lower.find(term, pos)) != std::string::npos) {
            bool starts = pos == 0 || !is_token_char(static_cast<unsigned char>(lower[pos - 1]));
            std::size_t end = pos + term.size();
            bool ends = end >= lower.size() || !is_token_char(static_cast<unsigned char>(lower[end]));
            if (starts && ends) {
                best = std::min(best, pos);
                break;
            }
            ++pos;
        }
    }
    std::size_t start = best == std::string::npos ? 0 : (best > 30 ? best - 30 : 0);
    std::size_t len = std::min<std::size_t>(110, text.size() - start);
    std::string snippet = collapse_whitespace(text.substr(start, len));
    if (start > 0) snippet.insert(0, "...");
    if (start + len < text.size()) snippet += "...";
    return snippet;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const std::set<std::string>& stopwords) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.size() >= 2 && !stopwords.contains(current)) tokens.push_back(current);
        current.clear();
    };
    for (unsigned char c : text) {
        if (is_token_char(c)) {
            current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                                   : static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words = {
        "an", "and", "are", "as",  "at",   "be",  "but", "by",   "for",  "from", "has",
        "have", "if", "in", "into", "is",  "it",  "its", "no",   "not",  "of",   "on",
        "or", "such", "that", "the", "their", "then", "there", "these", "they", "this",
        "to", "was", "were", "will", "with"};
    return words;
}

SearchIndex build_index_from_sources(std::vector<IndexSource> sources,
                                     const std::set<std::string>& stopwords) {
    std::sort(sources.begin(), sources.end(),
              [](const IndexSource& a, const IndexSource& b) { return a.id < b.id; });
    SearchIndex index;
    index.docs.reserve(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) {
        IndexSource& src = sources[i];
        std::vector<std::string> tokens = tokenize(src.text, stopwords);
        std::map<std::string, int> counts;
        for (const auto& t : tokens) ++counts[t];
        for (const auto& [term, tf] : counts) {
            index.postings[term].emplace_back(static_cast<int>(i), tf);
        }
        IndexedDoc doc;
        doc.id = std::move(src.id);
        doc.cls = src.cls;
        doc.containing_pages = std::move(src.containing_pages);
        doc.ar = src.ar;
        doc.text = std::move(src.text);
        doc.provenance = "anchor+" + std::to_string(doc.containing_pages.size()) + "p";
        doc.token_count = static_cast<int>(tokens.size());
        index.max_ar = std::max(index.max_ar, doc.ar);
        index.docs.push_back(std::move(doc));
    }
    return index;
}

SearchIndex build_index(const Store& store, const std::set<std::string>& stopwords) {
    const StoreManifest& manifest = store.manifest();
    std::vector<std::string> missing;

    std::map<PageId, PageRecord> pages;
    for (const auto& entry : manifest.pages) {
        auto path = store.root() / entry.path;
        if (!std::filesystem::exists(path)) {
            missing.push_back(path.string());
            continue;
        }
        pages.emplace(entry.id, read_page_json(path));
    }

    std::vector<IndexSource> sources;
    sources.reserve(manifest.attachments.size());
    for (const auto& entry : manifest.attachments) {
        auto path = store.root() / entry.path;
        if (!std::filesystem::exists(path)) {
            missing.push_back(path.string());
            continue;
        }
        RecordHeader header = read_attachment_header(path);
        IndexSource src;
        src.id = entry.id;
        src.cls = entry.cls;
        src.containing_pages = header.containing_pages;
        src.ar = header.ar;
        std::string text = header.anchor_text;
        for (const auto& page_id : header.containing_pages) {
            auto it = pages.find(page_id);
            if (it == pages.end()) continue;
            text += " " + it->second.title;
            text += " " + it->second.body_text;
        }
        src.text = std::move(text);
        sources.push_back(std::move(src));
    }

    if (!missing.empty()) {
        std::string what = "index build failed, missing files:";
        for (const auto& path : missing) what += "\n  " + path;
        throw StructuralError(what);
    }
    return build_index_from_sources(std::move(sources), stopwords);
}

double lexical_score(const SearchIndex& index, const std::vector<std::string>& terms,
                     int doc_index) {
    double score = 0.0;
    const double n = static_cast<double>(index.doc_count());
    for (const auto& term : terms) {
        auto it = index.postings.find(term);
        if (it == index.postings.end()) continue;
        int tf = find_tf(it->second, doc_index);
        if (tf == 0) continue;
        double df = static_cast<double>(it->second.size());
        score += static_cast<double>(tf) * std::log(1.0 + n / df);
    }
    return score;
}

QueryResult run_query(const SearchIndex& index, std::string_view query_text, int k, double lambda,
                      const std::set<std::string>& stopwords) {
    if (k < 1) throw ConfigError("result count k must be at least 1");
    if (lambda < 0.0) throw ConfigError("lambda cannot be negative");

    std::vector<std::string> raw = tokenize(query_text, stopwords);
    QueryResult result;
    for (const auto& term : raw) {
        if (std::find(result.terms.begin(), result.terms.end(), term) == result.terms.end()) {
            result.terms.push_back(term);
        }
    }
    if (result.terms.empty()) {
        throw EmptyQueryError("query has no searchable terms: \"" + std::string(query_text) + "\"");
    }

    std::set<int> candidates;
    for (const auto& term : result.terms) {
        auto it = index.postings.find(term);
        if (it == index.postings.end()) continue;
        for (const auto& [doc, _] : it->second) candidates.insert(doc);
    }

    for (int doc_index : candidates) {
        const IndexedDoc& doc = index.docs[static_cast<std::size_t>(doc_index)];
        SearchHit hit;
        hit.id = doc.id;
        hit.lexical = lexical_score(index, result.terms, doc_index);
        double ar_norm = index.max_ar > 0.0 ? doc.ar / index.max_ar : 0.0;
        hit.final_score = hit.lexical * (1.0 + lambda * ar_norm);
        hit.ar = doc.ar;
        hit.cls = doc.cls;
        hit.containing_page = doc.containing_pages.empty() ? PageId{} : doc.containing_pages.front();
        hit.snippet = make_snippet(doc.text, result.terms);
        result.hits.push_back(std::move(hit));
    }

    std::sort(result.hits.begin(), result.hits.end(), [](const SearchHit& a, const SearchHit& b) {
        if (a.final_score != b.final_score) return a.final_score > b.final_score;
        return a.id < b.id;
    });
    if (result.hits.size() > static_cast<std::size_t>(k)) {
        result.hits.resize(static_cast<std::size_t>(k));
    }
    return result;
}

void save_index(const SearchIndex& index, const std::filesystem::path& file) {
    json docs = json::array();
    for (const auto& doc : index.docs) {
        json pages = json::array();
        for (const auto& p : doc.containing_pages) pages.push_back(p.str());
        docs.push_back({{"id", doc.id.url},
                        {"class", std::string(class_name(doc.cls))},
                        {"pages", pages},
                        {"ar", doc.ar},
                        {"text", doc.text},
                        {"provenance", doc.provenance},
                        {"tokens", doc.token_count}});
    }
    json postings = json::object();
    for (const auto& [term, entries] : index.postings) {
        json list = json::array();
        for (const auto& [doc, tf] : entries) list.push_back({doc, tf});
        postings[term] = list;
    }
    json out{{"version", 1}, {"max_ar", index.max_ar}, {"docs", docs}, {"postings", postings}};
    std::ofstream stream(file, std::ios::binary | std::ios::trunc);
    if (!stream) throw IoError("cannot open for writing: " + file.string());
    stream << out.dump(2) << "\n";
    if (!stream) throw IoError("write failed: " + file.string());
}

SearchIndex load_index(const std::filesystem::path& file) {
    std::ifstream stream(file, std::ios::binary);
    if (!stream) throw IoError("cannot open index: " + file.string());
    json doc;
    try {
        stream >> doc;
    } catch (const json::exception& e) {
        throw IoError("invalid index file " + file.string() + ": " + e.what());
    }
    SearchIndex index;
    try {
        index.max_ar = doc.at("max_ar").get<double>();
        for (const auto& d : doc.at("docs")) {
            IndexedDoc idoc;
            idoc.id = make_attachment_id(PageId::from_normalized(d.at("id").get<std::string>()));
            auto cls = class_from_name(d.at("class").get<std::string>());
            if (!cls) throw IoError("index lists unknown class");
            idoc.cls = *cls;
            for (const auto& p : d.at("pages")) {
                idoc.containing_pages.push_back(PageId::from_normalized(p.get<std::string>()));
            }
            idoc.ar = d.at("ar").get<double>();
            idoc.text = d.at("text").get<std::string>();
            idoc.provenance = d.value("provenance", std::string{});
            idoc.token_count = d.at("tokens").get<int>();
            index.docs.push_back(std::move(idoc));
        }
        for (const auto& [term, entries] : doc.at("postings").items()) {
            auto& list = index.postings[term];
            for (const auto& entry : entries) {
                int doc_index = entry.at(0).get<int>();
                if (doc_index < 0 || doc_index >= static_cast<int>(index.docs.size())) {
                    throw IoError("index postings reference a document out of range");
                }
                list.emplace_back(doc_index, entry.at(1).get<int>());
            }
        }
    } catch (const json::exception& e) {
        throw IoError("invalid index file " + file.string() + ": " + e.what());
    }
    return index;
}

}  // namespace bc
