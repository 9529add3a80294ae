#pragma once

// Shared test fixtures: synthetic rasters, random graphs/trees, and naive
// reference implementations kept deliberately independent of the library's
// code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "hrf/graph.hpp"
#include "hrf/raster.hpp"
#include "hrf/rng.hpp"

namespace support {

inline std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("hrf_test_" + name);
    std::filesystem::create_directories(dir);
    return dir;
}

inline hrf::Raster make_raster(int w, int h, const std::vector<double>& v) {
    hrf::Raster r(w, h);
    r.values = v;
    return r;
}

inline hrf::LabelMap make_labels(int w, int h, const std::vector<std::uint32_t>& v) {
    hrf::LabelMap l(w, h);
    l.labels = v;
    l.region_count = hrf::densify_labels(l.labels);
    return l;
}

// Deterministic pseudo-natural grayscale image: a few octaves of smoothly
// interpolated value noise plus a grain component so the gradient has plenty
// of regional minima. Samples in [0, 255].
inline hrf::Raster synth_natural(int w, int h, std::uint64_t seed) {
    hrf::SplitMix64 rng(seed);
    hrf::Raster out(w, h);

    auto lattice_noise = [&](int cell) {
        int gw = w / cell + 2, gh = h / cell + 2;
        std::vector<double> grid(static_cast<std::size_t>(gw) * gh);
        for (double& g : grid) g = rng.uniform01();
        hrf::Raster layer(w, h);
        for (int y = 0; y < h; ++y) {
            double fy = static_cast<double>(y) / cell;
            int y0 = static_cast<int>(fy);
            double ty = fy - y0;
            for (int x = 0; x < w; ++x) {
                double fx = static_cast<double>(x) / cell;
                int x0 = static_cast<int>(fx);
                double tx = fx - x0;
                auto g = [&](int gx, int gy) { return grid[static_cast<std::size_t>(gy) * gw + gx]; };
                double a = g(x0, y0) * (1 - tx) + g(x0 + 1, y0) * tx;
                double b = g(x0, y0 + 1) * (1 - tx) + g(x0 + 1, y0 + 1) * tx;
                layer.at(x, y) = a * (1 - ty) + b * ty;
            }
        }
        return layer;
    };

    hrf::Raster coarse = lattice_noise(32);
    hrf::Raster mid = lattice_noise(8);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double v = 0.55 * coarse.at(x, y) + 0.3 * mid.at(x, y) + 0.15 * rng.uniform01();
            out.at(x, y) = std::floor(v * 255.0 + 0.5);
        }
    }
    return out;
}

// --- random graphs -----------------------------------------------------

struct TestGraph {
    std::uint32_t nodes = 0;
    std::vector<hrf::RagEdge> edges;
};

// Connected simple graph: a random spanning tree plus extra random edges.
// Integer weights so totals compare exactly; small range to exercise ties.
inline hrf::Rag random_connected_rag(std::mt19937& gen, std::uint32_t nodes,
                                     std::uint32_t extra_edges, int max_weight = 8) {
    hrf::Rag rag;
    rag.node_count = nodes;
    rag.nodes.assign(nodes, hrf::RagNode{1, 0.0});
    std::set<std::pair<std::uint32_t, std::uint32_t>> used;
    std::uniform_int_distribution<int> weight(0, max_weight);
    auto add = [&](std::uint32_t a, std::uint32_t b) {
        if (a > b) std::swap(a, b);
        if (a == b || used.count({a, b})) return false;
        used.insert({a, b});
        rag.edges.push_back({a, b, static_cast<double>(weight(gen)), 1});
        return true;
    };
    for (std::uint32_t v = 1; v < nodes; ++v) {
        std::uniform_int_distribution<std::uint32_t> pick(0, v - 1);
        add(pick(gen), v);
    }
    std::uniform_int_distribution<std::uint32_t> any(0, nodes - 1);
    for (std::uint32_t i = 0; i < extra_edges; ++i) add(any(gen), any(gen));
    // Canonical storage order, ids = index.
    std::sort(rag.edges.begin(), rag.edges.end(), [](const auto& a, const auto& b) {
        return std::make_pair(a.u, a.v) < std::make_pair(b.u, b.v);
    });
    return rag;
}

// Random spanning tree over n nodes with weights drawn from `weight_values`
// (duplicates produce tie batches). Edge ids are the lexicographic rank.
inline hrf::Tree random_tree(std::mt19937& gen, std::uint32_t nodes,
                             const std::vector<double>& weight_values) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t v = 1; v < nodes; ++v) {
        std::uniform_int_distribution<std::uint32_t> pick(0, v - 1);
        std::uint32_t u = pick(gen);
        pairs.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(pairs.begin(), pairs.end());
    hrf::Tree tree;
    tree.node_count = nodes;
    std::uniform_int_distribution<std::size_t> widx(0, weight_values.size() - 1);
    for (std::uint32_t i = 0; i < pairs.size(); ++i)
        tree.edges.push_back({pairs[i].first, pairs[i].second, weight_values[widx(gen)], i});
    return tree;
}

// --- naive oracles ------------------------------------------------------

// Components of the tree after removing every edge with weight >= cutoff.
// Plain DFS, no union-find.
inline std::vector<std::uint32_t> naive_components_below(const hrf::Tree& tree, double cutoff) {
    std::vector<std::vector<std::uint32_t>> adj(tree.node_count);
    for (const auto& e : tree.edges) {
        if (e.weight < cutoff) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
    }
    std::vector<std::uint32_t> comp(tree.node_count, UINT32_MAX);
    std::uint32_t next = 0;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < tree.node_count; ++s) {
        if (comp[s] != UINT32_MAX) continue;
        comp[s] = next;
        stack.assign(1, s);
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            for (std::uint32_t w : adj[v])
                if (comp[w] == UINT32_MAX) {
                    comp[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    return comp;
}

// Closed-form valuation computed the slow way: for every edge, literally cut
// all edges of weight >= its own, sum measures over both DFS components.
inline std::vector<double> naive_sws_valuation(const hrf::Tree& tree,
                                               const std::vector<double>& lambda,
                                               const std::vector<double>* chi = nullptr) {
    std::vector<double> p(tree.edges.size());
    for (std::size_t i = 0; i < tree.edges.size(); ++i) {
        const auto& e = tree.edges[i];
        auto comp = naive_components_below(tree, e.weight);
        double ls = 0.0, lt = 0.0;
        for (std::uint32_t v = 0; v < tree.node_count; ++v) {
            if (comp[v] == comp[e.u]) ls += lambda[v];
            if (comp[v] == comp[e.v]) lt += lambda[v];
        }
        double c = chi ? (*chi)[i] : 1.0;
        double val = 1.0 - std::exp(-c * ls) - std::exp(-c * lt) + std::exp(-c * (ls + lt));
        p[i] = std::clamp(val, 0.0, 1.0);
    }
    return p;
}

// Max edge probability on the tree path between a and b, by DFS path
// enumeration.
inline double naive_path_max(const hrf::Tree& tree, const std::vector<double>& p,
                             std::uint32_t a, std::uint32_t b) {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(tree.node_count);
    for (std::size_t i = 0; i < tree.edges.size(); ++i) {
        adj[tree.edges[i].u].emplace_back(tree.edges[i].v, p[i]);
        adj[tree.edges[i].v].emplace_back(tree.edges[i].u, p[i]);
    }
    std::vector<char> seen(tree.node_count, 0);
    double best = -1.0;
    auto dfs = [&](auto&& self, std::uint32_t v, double maxp) -> void {
        if (v == b) {
            best = maxp;
            return;
        }
        for (auto [w, pe] : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                self(self, w, std::max(maxp, pe));
            }
    };
    seen[a] = 1;
    dfs(dfs, a, 0.0);
    return best;
}

// Brute-force regional minima counter: a plateau (4-connected equal-value
// component) is a minimum when no member has a strictly lower 4-neighbor.
inline std::uint32_t naive_minima_count(const hrf::Raster& r) {
    const int w = r.width, h = r.height;
    std::vector<char> visited(r.size(), 0);
    std::uint32_t minima = 0;
    for (std::size_t s = 0; s < r.size(); ++s) {
        if (visited[s]) continue;
        std::vector<std::size_t> plateau{s};
        visited[s] = 1;
        bool is_min = true;
        for (std::size_t i = 0; i < plateau.size(); ++i) {
            int x = static_cast<int>(plateau[i] % w), y = static_cast<int>(plateau[i] / w);
            const int dx[4] = {0, -1, 1, 0}, dy[4] = {-1, 0, 0, 1};
            for (int d = 0; d < 4; ++d) {
                int nx = x + dx[d], ny = y + dy[d];
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                std::size_t q = static_cast<std::size_t>(ny) * w + nx;
                if (r.values[q] < r.values[plateau[i]]) is_min = false;
                if (r.values[q] == r.values[plateau[i]] && !visited[q]) {
                    visited[q] = 1;
                    plateau.push_back(q);
                }
            }
        }
        if (is_min) ++minima;
    }
    return minima;
}

// Two partitions describe the same grouping (bijective label correspondence).
inline bool same_partition(const std::vector<std::uint32_t>& a,
                           const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return false;
    std::unordered_map<std::uint32_t, std::uint32_t> fwd, bwd;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto [fit, fnew] = fwd.try_emplace(a[i], b[i]);
        if (!fnew && fit->second != b[i]) return false;
        auto [bit, bnew] = bwd.try_emplace(b[i], a[i]);
        if (!bnew && bit->second != a[i]) return false;
    }
    return true;
}

inline std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

} // namespace support
