#pragma once

#include <cstdint>
#include <vector>

#include "hrf/dd.hpp"
#include "hrf/raster.hpp"

namespace hrf {

// Per-pixel max minus min over the 3x3 neighborhood, borders replicated.
Raster morphological_gradient(const Raster& image);

// Flooding watershed of a gradient raster. One region per regional minimum
// (an equal-altitude plateau with no strictly lower 4-neighbor seeds one
// region); remaining pixels are flooded through a hierarchical priority queue
// keyed by (altitude, FIFO insertion order), each taking the label of the
// neighbor that queued it. Every pixel ends up in a region (no watershed
// lines) and labels come out dense in first-occurrence raster order.
LabelMap watershed(const Raster& gradient);

// Per-region prior statistics. Sums are kept in double-double so that the
// region mass of a constant prior cancels exactly against the total in the
// density normalization; the sum of squares feeds standard deviations and
// needs no such care.
struct RegionPriorMeans {
    std::vector<std::uint64_t> pixel_count;
    std::vector<DD> prior_sum;
    std::vector<double> prior_sum_sq;

    std::uint32_t region_count() const {
        return static_cast<std::uint32_t>(pixel_count.size());
    }
    double mean(std::uint32_t r) const {
        return prior_sum[r].to_double() / static_cast<double>(pixel_count[r]);
    }
};

// Exact per-region mean of the prior. Throws ValidationError on a dimension
// mismatch between the label map and the prior raster.
RegionPriorMeans region_prior_means(const LabelMap& labels, const Raster& prior);

} // namespace hrf
