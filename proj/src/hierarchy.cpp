#include "hrf/hierarchy.hpp"

#include <algorithm>

#include "hrf/errors.hpp"
#include "hrf/union_find.hpp"

namespace hrf {

namespace {

std::uint64_t pair_key(std::uint32_t u, std::uint32_t v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::vector<std::uint32_t> sweep_order(const Tree& tree, const HierarchyValuation& valuation) {
    std::vector<std::uint32_t> order(tree.edges.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (valuation.p[a] != valuation.p[b]) return valuation.p[a] < valuation.p[b];
        return tree.edges[a].edge_id < tree.edges[b].edge_id;
    });
    return order;
}

void check_valuation(const Tree& tree, const HierarchyValuation& valuation) {
    if (valuation.p.size() != tree.edges.size())
        throw ValidationError("hierarchy: valuation does not cover every tree edge");
}

// Densify component roots to {0..k-1} in first-occurrence order over node ids.
std::vector<std::uint32_t> densify_components(UnionFind& uf) {
    std::vector<std::uint32_t> out(uf.size());
    for (std::uint32_t v = 0; v < uf.size(); ++v) out[v] = uf.find(v);
    densify_labels(out);
    return out;
}

} // namespace

Ultrametric::Ultrametric(std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs,
                         std::vector<double> values)
    : pairs_(std::move(pairs)), values_(std::move(values)) {
    index_.reserve(pairs_.size());
    for (std::size_t i = 0; i < pairs_.size(); ++i)
        index_[pair_key(pairs_[i].first, pairs_[i].second)] = values_[i];
}

double Ultrametric::saliency(std::uint32_t u, std::uint32_t v) const {
    auto it = index_.find(pair_key(u, v));
    if (it == index_.end())
        throw ValidationError("ultrametric: no saliency for region pair (" + std::to_string(u) +
                              ", " + std::to_string(v) + ")");
    return it->second;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> adjacent_pairs(const Rag& rag) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(rag.edges.size());
    for (const RagEdge& e : rag.edges) pairs.emplace_back(e.u, e.v);
    return pairs;
}

Ultrametric ultrametric(const Tree& tree, const HierarchyValuation& valuation,
                        const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
    check_valuation(tree, valuation);
    const std::uint32_t n = tree.node_count;

    // Kruskal sweep builds the merge dendrogram: every union creates an
    // internal node valued at the merging p. d(u,v) is then the value at the
    // lowest common ancestor of the two leaves.
    const std::uint32_t total = n > 0 ? 2 * n - 1 : 0;
    std::vector<std::uint32_t> parent(total, total); // total = none
    std::vector<double> value(total, 0.0);
    std::vector<std::uint32_t> comp_node(n); // union-find root -> dendrogram node
    for (std::uint32_t v = 0; v < n; ++v) comp_node[v] = v;

    UnionFind uf(n);
    std::uint32_t next = n;
    for (std::uint32_t i : sweep_order(tree, valuation)) {
        const TreeEdge& e = tree.edges[i];
        std::uint32_t ru = uf.find(e.u), rv = uf.find(e.v);
        std::uint32_t a = comp_node[ru], b = comp_node[rv];
        uf.unite(e.u, e.v);
        std::uint32_t root = uf.find(e.u);
        parent[a] = next;
        parent[b] = next;
        value[next] = valuation.p[i];
        comp_node[root] = next;
        ++next;
    }

    // Depths, then binary lifting for LCA queries.
    std::vector<std::uint32_t> depth(total, 0);
    std::vector<std::uint32_t> topo(total);
    for (std::uint32_t v = 0; v < total; ++v) topo[v] = v;
    // Internal nodes are created bottom-up, so iterating ids downward visits
    // parents before children.
    for (std::uint32_t v = total; v-- > 0;)
        if (parent[v] != total) depth[v] = depth[parent[v]] + 1;

    int levels = 1;
    while ((1u << levels) < total) ++levels;
    std::vector<std::vector<std::uint32_t>> up(levels + 1,
                                               std::vector<std::uint32_t>(total, total));
    for (std::uint32_t v = 0; v < total; ++v) up[0][v] = parent[v];
    for (int k = 1; k <= levels; ++k)
        for (std::uint32_t v = 0; v < total; ++v)
            up[k][v] = up[k - 1][v] == total ? total : up[k - 1][up[k - 1][v]];

    auto lca = [&](std::uint32_t a, std::uint32_t b) {
        if (depth[a] < depth[b]) std::swap(a, b);
        std::uint32_t diff = depth[a] - depth[b];
        for (int k = 0; diff; ++k, diff >>= 1)
            if (diff & 1) a = up[k][a];
        if (a == b) return a;
        for (int k = levels; k >= 0; --k)
            if (up[k][a] != total && up[k][a] != up[k][b]) {
                a = up[k][a];
                b = up[k][b];
            }
        return parent[a];
    };

    std::vector<double> d(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [u, v] = pairs[i];
        if (u >= n || v >= n)
            throw ValidationError("ultrametric: pair references node outside the tree");
        d[i] = u == v ? 0.0 : value[lca(u, v)];
    }
    return Ultrametric(pairs, std::move(d));
}

std::vector<std::uint32_t> threshold_components(const Tree& tree,
                                                const HierarchyValuation& valuation,
                                                double threshold) {
    check_valuation(tree, valuation);
    UnionFind uf(tree.node_count);
    for (std::size_t i = 0; i < tree.edges.size(); ++i)
        if (!(valuation.p[i] > threshold)) uf.unite(tree.edges[i].u, tree.edges[i].v);
    return densify_components(uf);
}

std::vector<std::uint32_t> k_components(const Tree& tree, const HierarchyValuation& valuation,
                                        std::uint32_t k) {
    check_valuation(tree, valuation);
    if (k < 1 || k > tree.node_count)
        throw ValidationError("cut_k: k = " + std::to_string(k) + " outside [1, " +
                              std::to_string(tree.node_count) + "]");
    // Drop the k-1 edges with largest (p, edge_id); keep the rest.
    std::vector<std::uint32_t> order = sweep_order(tree, valuation);
    UnionFind uf(tree.node_count);
    const std::size_t keep = tree.edges.size() - (k - 1);
    for (std::size_t i = 0; i < keep; ++i)
        uf.unite(tree.edges[order[i]].u, tree.edges[order[i]].v);
    return densify_components(uf);
}

std::vector<std::uint32_t> marker_components(const Tree& tree,
                                             const HierarchyValuation& valuation,
                                             const std::vector<std::uint32_t>& markers) {
    check_valuation(tree, valuation);
    if (markers.empty())
        throw ValidationError("marker_cut: empty marker set");
    std::vector<char> marked(tree.node_count, 0);
    for (std::uint32_t m : markers) {
        if (m >= tree.node_count)
            throw ValidationError("marker_cut: marker " + std::to_string(m) +
                                  " outside the node range");
        marked[m] = 1;
    }
    // Merge in increasing (p, edge_id), refusing edges whose two components
    // both already hold a marker; the refused edges are the cuts.
    UnionFind uf(tree.node_count);
    for (std::uint32_t m = 0; m < tree.node_count; ++m)
        if (marked[m]) uf.mutable_stats(m).pixel_count = 1; // marker flag

    for (std::uint32_t i : sweep_order(tree, valuation)) {
        const TreeEdge& e = tree.edges[i];
        bool both = uf.stats(e.u).pixel_count > 0 && uf.stats(e.v).pixel_count > 0;
        if (!both) uf.unite(e.u, e.v);
    }
    return densify_components(uf);
}

LabelMap project_partition(const LabelMap& fine, const std::vector<std::uint32_t>& node_labels) {
    if (node_labels.size() != fine.region_count)
        throw ValidationError("project_partition: node partition does not cover every region");
    LabelMap out(fine.width, fine.height);
    for (std::size_t i = 0; i < fine.size(); ++i)
        out.labels[i] = node_labels[fine.labels[i]];
    std::uint32_t regions = 0;
    for (std::uint32_t l : node_labels) regions = std::max(regions, l + 1);
    out.region_count = regions;
    return out;
}

LabelMap cut_threshold(const Tree& tree, const HierarchyValuation& valuation, double threshold,
                       const LabelMap& fine) {
    return project_partition(fine, threshold_components(tree, valuation, threshold));
}

LabelMap cut_k(const Tree& tree, const HierarchyValuation& valuation, std::uint32_t k,
               const LabelMap& fine) {
    return project_partition(fine, k_components(tree, valuation, k));
}

LabelMap marker_cut(const Tree& tree, const HierarchyValuation& valuation,
                    const std::vector<std::uint32_t>& markers, const LabelMap& fine) {
    return project_partition(fine, marker_components(tree, valuation, markers));
}

SaliencyGrid render_ucm(const LabelMap& fine, const Ultrametric& saliencies) {
    const int w = fine.width, h = fine.height;
    SaliencyGrid grid(2 * w + 1, 2 * h + 1);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint32_t l = fine.at(x, y);
            if (x + 1 < w) {
                std::uint32_t r = fine.at(x + 1, y);
                if (l != r) grid.at(2 * x + 2, 2 * y + 1) = saliencies.saliency(l, r);
            }
            if (y + 1 < h) {
                std::uint32_t b = fine.at(x, y + 1);
                if (l != b) grid.at(2 * x + 1, 2 * y + 2) = saliencies.saliency(l, b);
            }
        }
    }

    // Corner cells close the curves: max of the (up to 4) incident boundary
    // cells.
    for (int gy = 0; gy <= 2 * h; gy += 2) {
        for (int gx = 0; gx <= 2 * w; gx += 2) {
            double m = 0.0;
            if (gx > 0) m = std::max(m, grid.at(gx - 1, gy));
            if (gx < 2 * w) m = std::max(m, grid.at(gx + 1, gy));
            if (gy > 0) m = std::max(m, grid.at(gx, gy - 1));
            if (gy < 2 * h) m = std::max(m, grid.at(gx, gy + 1));
            grid.at(gx, gy) = m;
        }
    }
    return grid;
}

} // namespace hrf
