#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "boardcrawl/store.hpp"
#include "boardcrawl/types.hpp"

namespace bc {

// Lowercases, splits on non-alphanumeric runs, drops tokens shorter than
// two characters and stopwords.
std::vector<std::string> tokenize(std::string_view text, const std::set<std::string>& stopwords);

const std::set<std::string>& default_stopwords();

// Text basis for one indexed attachment: its anchor text plus the titles and
// body text of every containing page.
struct IndexSource {
    AttachmentId id;
    AttachmentClass cls = AttachmentClass::other;
    std::vector<PageId> containing_pages;
    double ar = 0.0;
    std::string text;
};

struct IndexedDoc {
    AttachmentId id;
    AttachmentClass cls = AttachmentClass::other;
    std::vector<PageId> containing_pages;
    double ar = 0.0;
    std::string text;
    std::string provenance;  // where the text came from, e.g. "anchor+2p"
    int token_count = 0;
};

// Lexical postings with per-attachment AttachRank for score modification.
// Immutable after build; concurrent queries are safe.
struct SearchIndex {
    std::vector<IndexedDoc> docs;  // ascending id order
    std::map<std::string, std::vector<std::pair<int, int>>> postings;  // term -> (doc, tf)
    double max_ar = 0.0;

    std::size_t doc_count() const { return docs.size(); }
};

SearchIndex build_index_from_sources(std::vector<IndexSource> sources,
                                     const std::set<std::string>& stopwords);

// Builds from a store manifest; throws StructuralError listing every
// referenced file that is missing.
SearchIndex build_index(const Store& store,
                        const std::set<std::string>& stopwords = default_stopwords());

// TF-IDF: sum over query terms t of tf(t, doc) * ln(1 + N / df(t)). Terms
// absent from the index contribute nothing.
double lexical_score(const SearchIndex& index, const std::vector<std::string>& terms,
                     int doc_index);

struct SearchHit {
    AttachmentId id;
    double lexical = 0.0;
    double final_score = 0.0;
    double ar = 0.0;
    AttachmentClass cls = AttachmentClass::other;
    PageId containing_page;
    std::string snippet;
};

struct QueryResult {
    std::vector<std::string> terms;
    std::vector<SearchHit> hits;  // final_score descending, ties by id ascending
};

// final_score = lexical * (1 + lambda * ar / max_ar); lambda = 0 reduces to
// pure lexical ranking. Queries that tokenize to nothing throw
// EmptyQueryError.
QueryResult run_query(const SearchIndex& index, std::string_view query_text, int k, double lambda,
                      const std::set<std::string>& stopwords = default_stopwords());

// Optional persisted form (index.json).
void save_index(const SearchIndex& index, const std::filesystem::path& file);
SearchIndex load_index(const std::filesystem::path& file);

}  // namespace bc
