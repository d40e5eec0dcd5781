#pragma once

// One-file TF-IDF reference scorer, independent of the search module: its
// own tokenizer and a direct count over raw document texts. Scores follow
//   sum over distinct query terms t of tf(t, doc) * ln(1 + N / df(t)).

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline std::vector<std::string> simple_tokens(const std::string& text,
                                              const std::set<std::string>& stopwords) {
    std::vector<std::string> out;
    std::string word;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        char c = i < text.size() ? text[i] : ' ';
        bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
        if (alnum) {
            word.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
        } else if (!word.empty()) {
            if (word.size() >= 2 && !stopwords.count(word)) out.push_back(word);
            word.clear();
        }
    }
    return out;
}

inline double reference_score(const std::vector<std::string>& corpus, std::size_t doc,
                              const std::string& query, const std::set<std::string>& stopwords) {
    std::vector<std::string> raw = simple_tokens(query, stopwords);
    std::vector<std::string> terms;
    for (const auto& t : raw) {
        bool seen = false;
        for (const auto& prev : terms) seen = seen || prev == t;
        if (!seen) terms.push_back(t);
    }

    std::vector<std::map<std::string, int>> tf(corpus.size());
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        for (const auto& token : simple_tokens(corpus[d], stopwords)) ++tf[d][token];
    }

    double score = 0.0;
    for (const auto& term : terms) {
        int df = 0;
        for (std::size_t d = 0; d < corpus.size(); ++d) df += tf[d].count(term) ? 1 : 0;
        if (df == 0) continue;
        auto it = tf[doc].find(term);
        if (it == tf[doc].end()) continue;
        score += it->second * std::log(1.0 + static_cast<double>(corpus.size()) / df);
    }
    return score;
}

}  // namespace oracle
