#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "boardcrawl/types.hpp"

namespace bc {

// Directed page graph plus page -> attachment containment. Sealed graphs
// satisfy: every edge endpoint ranks among nodes, node list sorted,
// containment keys are nodes. Immutable after seal_graph.
struct LinkGraph {
    std::vector<PageId> nodes;
    std::map<PageId, std::vector<PageId>> edges;
    std::map<PageId, std::vector<AttachmentId>> containment;

    bool has_node(const PageId& id) const;
    std::size_t out_degree(const PageId& id) const;
    std::size_t edge_count() const;
};

// Materializes the link graph from crawl output. Outlinks whose target was
// never fetched (or falls outside host_filter, when given) are pruned;
// containment is copied verbatim. Throws StructuralError on duplicate page
// ids, naming the id.
LinkGraph seal_graph(const std::vector<PageRecord>& pages,
                     const std::optional<std::string>& host_filter = std::nullopt);

}  // namespace bc
