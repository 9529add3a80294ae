#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace hrf {

// 2D scalar grid, row-major. Image intensities keep their raw sample values;
// prior maps hold probabilities in [0,1].
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    Raster() = default;
    Raster(int w, int h, double fill = 0.0)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

    std::size_t size() const { return values.size(); }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
    double at(int x, int y) const { return values[index(x, y)]; }
    double& at(int x, int y) { return values[index(x, y)]; }
};

// Partition of the pixel domain. Labels are dense: used labels are exactly
// {0..region_count-1}, and each label's pixel set is 4-connected.
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint32_t> labels;
    std::uint32_t region_count = 0;

    LabelMap() = default;
    LabelMap(int w, int h)
        : width(w), height(h), labels(static_cast<std::size_t>(w) * h, 0) {}

    std::size_t size() const { return labels.size(); }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
    std::uint32_t at(int x, int y) const { return labels[index(x, y)]; }
    std::uint32_t& at(int x, int y) { return labels[index(x, y)]; }
};

// Inter-pixel (Khalimsky) grid over a WxH image: (2W+1)x(2H+1) cells.
// Pixel (x,y) sits at cell (2x+1, 2y+1); cells between two pixel cells are
// boundary cells, cells with both coordinates even are corners.
struct SaliencyGrid {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    SaliencyGrid() = default;
    SaliencyGrid(int w, int h)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, 0.0) {}

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
    double at(int x, int y) const { return values[index(x, y)]; }
    double& at(int x, int y) { return values[index(x, y)]; }
};

// Remaps arbitrary label values to dense {0..R-1} in first-occurrence order.
// Returns the number of distinct labels.
inline std::uint32_t densify_labels(std::vector<std::uint32_t>& labels) {
    // Labels may span the whole uint32 range, so map rather than index.
    std::unordered_map<std::uint32_t, std::uint32_t> remap;
    remap.reserve(256);
    std::uint32_t next = 0;
    for (auto& l : labels) {
        auto [it, inserted] = remap.try_emplace(l, next);
        if (inserted) ++next;
        l = it->second;
    }
    return next;
}

} // namespace hrf
