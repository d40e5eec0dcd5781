#include "boardcrawl/rank.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "boardcrawl/error.hpp"

namespace bc {

namespace {

// Sums after sorting by value: the result depends only on the multiset of
// summands, which keeps ranks bit-identical across node orderings and
// relabelings.
double stable_sum(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    double total = 0.0;
    for (double v : values) total += v;
    return total;
}

}  // namespace

void RankConfig::validate() const {
    if (!(damping > 0.0) || !(damping < 1.0)) {
        throw ConfigError("damping factor must lie strictly between 0 and 1");
    }
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
}

RankVector compute_pagerank(const LinkGraph& graph, const RankConfig& config) {
    config.validate();
    RankVector out;
    const std::size_t n = graph.nodes.size();
    if (n == 0) return out;

    std::map<PageId, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(graph.nodes[i], i);

    std::vector<std::vector<std::size_t>> in_edges(n);
    std::vector<double> share(n, 0.0);  // 1/C(source), 0 for dangling nodes
    for (const auto& [source, targets] : graph.edges) {
        if (targets.empty()) continue;
        std::size_t s = index.at(source);
        share[s] = 1.0 / static_cast<double>(targets.size());
        for (const auto& target : targets) in_edges[index.at(target)].push_back(s);
    }

    const double base = 1.0 - config.damping;
    std::vector<double> current(n, 1.0);
    std::vector<double> next(n, 0.0);
    std::vector<double> contributions;
    std::vector<double> deltas(n, 0.0);

    for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
        for (std::size_t i = 0; i < n; ++i) {
            contributions.clear();
            for (std::size_t s : in_edges[i]) contributions.push_back(current[s] * share[s]);
            next[i] = base + config.damping * stable_sum(contributions);
        }
        for (std::size_t i = 0; i < n; ++i) deltas[i] = std::abs(next[i] - current[i]);
        double residual = stable_sum(deltas);
        current.swap(next);
        out.iterations_used = iteration;
        out.final_residual = residual;
        if (residual < config.epsilon) break;
    }
    out.converged = out.final_residual < config.epsilon;

    for (std::size_t i = 0; i < n; ++i) out.values.emplace(graph.nodes[i], current[i]);
    return out;
}

AttachRankTable compute_attachrank(const LinkGraph& graph, const RankVector& ranks) {
    AttachRankTable table;
    for (const auto& [page, attachments] : graph.containment) {
        if (attachments.empty()) continue;
        if (!ranks.values.contains(page)) {
            throw StructuralError("containment references unranked page: " + page.str());
        }
        for (const auto& attachment : attachments) {
            table.entries[attachment].containing_pages.push_back(page);
        }
    }
    for (auto& [_, entry] : table.entries) {
        auto& pages = entry.containing_pages;
        std::sort(pages.begin(), pages.end());
        pages.erase(std::unique(pages.begin(), pages.end()), pages.end());
        double best = 0.0;
        for (const auto& page : pages) best = std::max(best, ranks.values.at(page));
        entry.ar = best;
    }
    return table;
}

std::map<PageId, double> normalize_ranks(const RankVector& ranks) {
    if (ranks.values.empty()) throw StructuralError("cannot normalize an empty rank vector");
    std::vector<double> values;
    values.reserve(ranks.values.size());
    for (const auto& [_, v] : ranks.values) values.push_back(v);
    double total = stable_sum(values);
    if (!(total > 0.0)) throw StructuralError("rank values sum to a non-positive total");
    std::map<PageId, double> out;
    for (const auto& [id, v] : ranks.values) out.emplace(id, v / total);
    return out;
}

}  // namespace bc
