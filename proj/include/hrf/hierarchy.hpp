#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hrf/graph.hpp"
#include "hrf/raster.hpp"
#include "hrf/sws.hpp"

namespace hrf {

// Saliency of adjacent region pairs: d(u,v) is the maximum cut probability on
// the tree path between u and v, an ultrametric on the requested pairs.
class Ultrametric {
public:
    Ultrametric() = default;
    Ultrametric(std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs,
                std::vector<double> values);

    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs() const { return pairs_; }
    const std::vector<double>& values() const { return values_; }

    // Throws ValidationError if the pair was not requested.
    double saliency(std::uint32_t u, std::uint32_t v) const;

private:
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;
    std::vector<double> values_;
    std::unordered_map<std::uint64_t, double> index_;
};

// All adjacent region pairs of the Rag, in canonical edge order.
std::vector<std::pair<std::uint32_t, std::uint32_t>> adjacent_pairs(const Rag& rag);

// Path-max saliency for each requested pair, resolved by a Kruskal-order
// union-find sweep over edges sorted by increasing (p, edge_id): a pair's
// saliency is the p value that first connects its endpoints.
Ultrametric ultrametric(const Tree& tree, const HierarchyValuation& valuation,
                        const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs);

// Node-level partitions (dense component id per tree node, first-occurrence
// order by node index).
std::vector<std::uint32_t> threshold_components(const Tree& tree,
                                                const HierarchyValuation& valuation,
                                                double threshold);
std::vector<std::uint32_t> k_components(const Tree& tree, const HierarchyValuation& valuation,
                                        std::uint32_t k);
std::vector<std::uint32_t> marker_components(const Tree& tree,
                                             const HierarchyValuation& valuation,
                                             const std::vector<std::uint32_t>& markers);

// Maps a node-level partition through the fine partition onto pixels.
LabelMap project_partition(const LabelMap& fine, const std::vector<std::uint32_t>& node_labels);

// Pixel-level convenience wrappers.
// cut_threshold removes tree edges with p > threshold (so threshold=1 keeps
// everything); cut_k removes the k-1 edges with largest (p, edge_id);
// marker_cut refuses to merge two components that both hold a marker.
LabelMap cut_threshold(const Tree& tree, const HierarchyValuation& valuation, double threshold,
                       const LabelMap& fine);
LabelMap cut_k(const Tree& tree, const HierarchyValuation& valuation, std::uint32_t k,
               const LabelMap& fine);
LabelMap marker_cut(const Tree& tree, const HierarchyValuation& valuation,
                    const std::vector<std::uint32_t>& markers, const LabelMap& fine);

// Khalimsky-grid contour map: each inter-pixel cell separating two regions
// carries their saliency, each corner cell the max of its incident boundary
// cells, everything else 0. Thresholding the result always yields closed
// curves consistent with cut_threshold.
SaliencyGrid render_ucm(const LabelMap& fine, const Ultrametric& saliencies);

} // namespace hrf
