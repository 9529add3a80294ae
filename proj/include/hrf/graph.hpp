#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hrf/raster.hpp"

namespace hrf {

struct RagNode {
    std::uint64_t pixel_count = 0;
    double intensity_sum = 0.0;

    double mean_intensity() const {
        return intensity_sum / static_cast<double>(pixel_count);
    }
};

struct RagEdge {
    std::uint32_t u = 0;
    std::uint32_t v = 0; // u < v
    double weight = 0.0;
    std::uint64_t boundary_length = 0; // shared 4-adjacent pixel pairs
};

// Region adjacency graph of a fine partition: one node per region, one edge
// per pair of regions sharing at least one 4-adjacent pixel pair. Edges are
// stored sorted by (u, v); their index is the canonical edge id.
struct Rag {
    std::uint32_t node_count = 0;
    std::vector<RagNode> nodes;
    std::vector<RagEdge> edges;
};

struct TreeEdge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    double weight = 0.0;
    std::uint32_t edge_id = 0; // canonical id: lexicographic rank of (min,max)
};

// Spanning tree of the Rag (node_count - 1 edges).
struct Tree {
    std::uint32_t node_count = 0;
    std::vector<TreeEdge> edges;
};

// Edge weights are |mean_intensity(u) - mean_intensity(v)|. Throws
// ValidationError on dimension mismatch or a single-region partition.
Rag build_rag(const LabelMap& labels, const Raster& image);

// Kruskal with ties broken by canonical edge id (sort key (weight, edge_id)).
// Ids are always recomputed from lexicographic (u,v) rank, so the result does
// not depend on the order edges are stored in. Throws ValidationError if the
// graph is disconnected (message reports the component count).
Tree minimum_spanning_tree(const Rag& rag);

// Debug dump: one "u,v,weight,boundary_length" line per edge.
void write_edges_csv(std::ostream& out, const Rag& rag);

} // namespace hrf
