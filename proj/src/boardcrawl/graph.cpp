#include "boardcrawl/graph.hpp"

#include <algorithm>
#include <set>

#include "boardcrawl/error.hpp"
#include "boardcrawl/url.hpp"

namespace bc {

bool LinkGraph::has_node(const PageId& id) const {
    return std::binary_search(nodes.begin(), nodes.end(), id);
}

std::size_t LinkGraph::out_degree(const PageId& id) const {
    auto it = edges.find(id);
    return it == edges.end() ? 0 : it->second.size();
}

std::size_t LinkGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& [_, targets] : edges) n += targets.size();
    return n;
}

LinkGraph seal_graph(const std::vector<PageRecord>& pages,
                     const std::optional<std::string>& host_filter) {
    LinkGraph graph;
    std::set<PageId> node_set;
    for (const auto& page : pages) {
        if (!node_set.insert(page.id).second) {
            throw StructuralError("duplicate page id while sealing graph: " + page.id.str());
        }
    }
    graph.nodes.assign(node_set.begin(), node_set.end());

    for (const auto& page : pages) {
        std::vector<PageId> kept;
        for (const auto& target : page.outlinks) {
            if (!node_set.contains(target)) continue;
            if (host_filter && url_host(target) != *host_filter) continue;
            kept.push_back(target);
        }
        graph.edges.emplace(page.id, std::move(kept));
        graph.containment.emplace(page.id, page.attachments);
    }
    return graph;
}

}  // namespace bc
