#include "hrf/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "hrf/errors.hpp"
#include "hrf/union_find.hpp"

namespace hrf {

Rag build_rag(const LabelMap& labels, const Raster& image) {
    if (labels.width != image.width || labels.height != image.height)
        throw ValidationError("build_rag: label map and image dimensions differ");
    if (labels.region_count < 2)
        throw ValidationError("build_rag: partition has a single region, no adjacencies");

    Rag rag;
    rag.node_count = labels.region_count;
    rag.nodes.assign(rag.node_count, RagNode{});
    for (std::size_t i = 0; i < labels.size(); ++i) {
        RagNode& node = rag.nodes[labels.labels[i]];
        node.pixel_count += 1;
        node.intensity_sum += image.values[i];
    }

    // Count label-discontinuous 4-adjacent pixel pairs per region pair. The
    // ordered map yields edges sorted by (u,v), which is the canonical order.
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> boundary;
    const int w = labels.width, h = labels.height;
    auto touch = [&](std::uint32_t a, std::uint32_t b) {
        if (a == b) return;
        if (a > b) std::swap(a, b);
        ++boundary[{a, b}];
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint32_t l = labels.at(x, y);
            if (x + 1 < w) touch(l, labels.at(x + 1, y));
            if (y + 1 < h) touch(l, labels.at(x, y + 1));
        }
    }

    rag.edges.reserve(boundary.size());
    for (const auto& [pair, len] : boundary) {
        RagEdge e;
        e.u = pair.first;
        e.v = pair.second;
        e.boundary_length = len;
        e.weight = std::abs(rag.nodes[e.u].mean_intensity() - rag.nodes[e.v].mean_intensity());
        rag.edges.push_back(e);
    }
    return rag;
}

Tree minimum_spanning_tree(const Rag& rag) {
    // Canonical ids come from the lexicographic rank of (min(u,v), max(u,v)),
    // independent of how the edges are stored.
    const std::size_t m = rag.edges.size();
    std::vector<std::uint32_t> order(m);
    for (std::uint32_t i = 0; i < m; ++i) order[i] = i;
    auto key = [&](std::uint32_t i) {
        const RagEdge& e = rag.edges[i];
        return e.u < e.v ? std::make_pair(e.u, e.v) : std::make_pair(e.v, e.u);
    };
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
    std::vector<std::uint32_t> edge_id(m);
    for (std::uint32_t rank = 0; rank < m; ++rank) edge_id[order[rank]] = rank;

    std::vector<std::uint32_t> by_weight(order);
    std::sort(by_weight.begin(), by_weight.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (rag.edges[a].weight != rag.edges[b].weight)
            return rag.edges[a].weight < rag.edges[b].weight;
        return edge_id[a] < edge_id[b];
    });

    Tree tree;
    tree.node_count = rag.node_count;
    tree.edges.reserve(rag.node_count > 0 ? rag.node_count - 1 : 0);
    UnionFind uf(rag.node_count);
    for (std::uint32_t i : by_weight) {
        const RagEdge& e = rag.edges[i];
        if (uf.unite(e.u, e.v)) {
            auto [u, v] = key(i);
            tree.edges.push_back({u, v, e.weight, edge_id[i]});
            if (tree.edges.size() == rag.node_count - 1) break;
        }
    }
    if (tree.edges.size() != rag.node_count - 1)
        throw ValidationError("minimum_spanning_tree: graph is disconnected (" +
                              std::to_string(uf.components()) + " components)");
    return tree;
}

void write_edges_csv(std::ostream& out, const Rag& rag) {
    out << "u,v,weight,boundary_length\n";
    char buf[64];
    for (const RagEdge& e : rag.edges) {
        std::snprintf(buf, sizeof(buf), "%.12g", e.weight);
        out << e.u << ',' << e.v << ',' << buf << ',' << e.boundary_length << '\n';
    }
}

} // namespace hrf
