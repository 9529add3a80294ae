#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hrf {

// Per-component accumulator, additive under union. lambda is the expected
// marker count of the component; the prior moments feed the transition
// modulation (mean and population standard deviation of pixel prior values).
struct RegionStats {
    std::uint64_t pixel_count = 0;
    double lambda = 0.0;
    double prior_sum = 0.0;
    double prior_sum_sq = 0.0;

    RegionStats& operator+=(const RegionStats& o) {
        pixel_count += o.pixel_count;
        lambda += o.lambda;
        prior_sum += o.prior_sum;
        prior_sum_sq += o.prior_sum_sq;
        return *this;
    }
};

// Union-find with union by rank and path compression. Each root carries the
// sum of its members' RegionStats.
class UnionFind {
public:
    explicit UnionFind(std::uint32_t n)
        : parent_(n), rank_(n, 0), stats_(n), components_(n) {
        for (std::uint32_t i = 0; i < n; ++i) parent_[i] = i;
    }

    explicit UnionFind(std::vector<RegionStats> stats)
        : parent_(stats.size()), rank_(stats.size(), 0), stats_(std::move(stats)),
          components_(static_cast<std::uint32_t>(parent_.size())) {
        for (std::uint32_t i = 0; i < parent_.size(); ++i) parent_[i] = i;
    }

    std::uint32_t find(std::uint32_t a) {
        std::uint32_t root = a;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[a] != root) {
            std::uint32_t next = parent_[a];
            parent_[a] = root;
            a = next;
        }
        return root;
    }

    // Returns false if a and b were already in the same component.
    bool unite(std::uint32_t a, std::uint32_t b) {
        std::uint32_t ra = find(a), rb = find(b);
        if (ra == rb) return false;
        if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
        parent_[rb] = ra;
        stats_[ra] += stats_[rb];
        if (rank_[ra] == rank_[rb]) ++rank_[ra];
        --components_;
        return true;
    }

    const RegionStats& stats(std::uint32_t node) { return stats_[find(node)]; }
    RegionStats& mutable_stats(std::uint32_t node) { return stats_[find(node)]; }
    std::uint32_t components() const { return components_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(parent_.size()); }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint8_t> rank_;
    std::vector<RegionStats> stats_;
    std::uint32_t components_;
};

} // namespace hrf
