#pragma once

#include <map>
#include <vector>

#include "boardcrawl/graph.hpp"
#include "boardcrawl/types.hpp"

namespace bc {

struct RankConfig {
    double damping = 0.85;
    double epsilon = 1e-8;      // L1 residual tolerance
    int max_iterations = 200;

    void validate() const;  // throws ConfigError outside 0 < damping < 1, epsilon > 0
};

// PageRank per page at the fixed point of
//   PR(A) = (1 - d) + d * sum over in-links T->A of PR(T) / C(T)
// with convergence metadata. Every value is >= 1 - d.
struct RankVector {
    std::map<PageId, double> values;
    int iterations_used = 0;
    double final_residual = 0.0;
    bool converged = true;
};

// AttachRank per attachment: the PageRank of its containing page, or the max
// over containing pages when an attachment appears on several.
struct AttachRankEntry {
    double ar = 0.0;
    std::vector<PageId> containing_pages;  // ascending PageId order
};

struct AttachRankTable {
    std::map<AttachmentId, AttachRankEntry> entries;
};

// Synchronous (Jacobi) iteration from PR = 1 everywhere. Dangling nodes
// (C = 0) contribute nothing to other pages' sums. Per-node in-link
// contributions are summed in value order, so results are independent of
// node enumeration order and invariant under relabeling. Empty graph yields
// an empty vector.
RankVector compute_pagerank(const LinkGraph& graph, const RankConfig& config = {});

// Projects page ranks onto attachments. Throws StructuralError when a
// containment edge references a page missing from `ranks`.
AttachRankTable compute_attachrank(const LinkGraph& graph, const RankVector& ranks);

// Probability view: values divided by their total, summing to 1. Throws
// StructuralError on an empty vector or non-positive total.
std::map<PageId, double> normalize_ranks(const RankVector& ranks);

}  // namespace bc
