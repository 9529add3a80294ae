#include "hrf/fine_partition.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

#include "hrf/errors.hpp"

namespace hrf {

Raster morphological_gradient(const Raster& image) {
    Raster out(image.width, image.height);
    const int w = image.width, h = image.height;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -std::numeric_limits<double>::infinity();
            for (int dy = -1; dy <= 1; ++dy) {
                int yy = std::clamp(y + dy, 0, h - 1);
                for (int dx = -1; dx <= 1; ++dx) {
                    int xx = std::clamp(x + dx, 0, w - 1);
                    double v = image.at(xx, yy);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
            out.at(x, y) = hi - lo;
        }
    }
    return out;
}

namespace {

constexpr std::uint32_t kUnlabeled = std::numeric_limits<std::uint32_t>::max();

// Fixed 4-neighbor scan order: up, left, right, down.
constexpr int kDx[4] = {0, -1, 1, 0};
constexpr int kDy[4] = {-1, 0, 0, 1};

struct FloodItem {
    double altitude;
    std::uint64_t seq; // FIFO tie-break inside equal-altitude levels
    std::uint32_t pixel;
    std::uint32_t label;
};

struct FloodOrder {
    bool operator()(const FloodItem& a, const FloodItem& b) const {
        return std::tie(a.altitude, a.seq) > std::tie(b.altitude, b.seq);
    }
};

} // namespace

LabelMap watershed(const Raster& gradient) {
    const int w = gradient.width, h = gradient.height;
    const std::size_t n = gradient.size();

    LabelMap out(w, h);
    std::vector<std::uint32_t>& labels = out.labels;
    labels.assign(n, kUnlabeled);

    // Seed detection: scan equal-altitude plateaus; a plateau with no strictly
    // lower 4-neighbor is a regional minimum and becomes one seed. Scanning in
    // raster order makes seed ids follow first occurrence.
    std::vector<char> visited(n, 0);
    std::vector<std::uint32_t> plateau;
    std::uint32_t next_seed = 0;
    for (std::size_t start = 0; start < n; ++start) {
        if (visited[start]) continue;
        const double level = gradient.values[start];
        plateau.clear();
        plateau.push_back(static_cast<std::uint32_t>(start));
        visited[start] = 1;
        bool is_minimum = true;
        for (std::size_t i = 0; i < plateau.size(); ++i) {
            std::uint32_t p = plateau[i];
            int x = static_cast<int>(p % w), y = static_cast<int>(p / w);
            for (int d = 0; d < 4; ++d) {
                int nx = x + kDx[d], ny = y + kDy[d];
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                std::uint32_t q = static_cast<std::uint32_t>(ny) * w + nx;
                double v = gradient.values[q];
                if (v < level) {
                    is_minimum = false;
                } else if (v == level && !visited[q]) {
                    visited[q] = 1;
                    plateau.push_back(q);
                }
            }
        }
        if (is_minimum) {
            for (std::uint32_t p : plateau) labels[p] = next_seed;
            ++next_seed;
        }
    }

    // Flood the rest. Pixels enter the queue once, with the label of the
    // neighbor that inserted them, and are assigned in (altitude, insertion)
    // order.
    std::priority_queue<FloodItem, std::vector<FloodItem>, FloodOrder> queue;
    std::vector<char> queued(n, 0);
    std::uint64_t seq = 0;

    auto push_neighbors = [&](std::uint32_t p, std::uint32_t label) {
        int x = static_cast<int>(p % w), y = static_cast<int>(p / w);
        for (int d = 0; d < 4; ++d) {
            int nx = x + kDx[d], ny = y + kDy[d];
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            std::uint32_t q = static_cast<std::uint32_t>(ny) * w + nx;
            if (labels[q] == kUnlabeled && !queued[q]) {
                queued[q] = 1;
                queue.push({gradient.values[q], seq++, q, label});
            }
        }
    };

    for (std::size_t p = 0; p < n; ++p)
        if (labels[p] != kUnlabeled) push_neighbors(static_cast<std::uint32_t>(p), labels[p]);

    while (!queue.empty()) {
        FloodItem item = queue.top();
        queue.pop();
        labels[item.pixel] = item.label;
        push_neighbors(item.pixel, item.label);
    }

    // Seed ids follow plateau discovery order, but flooded areas can put a
    // later seed's pixels earlier in the raster; re-densify to the canonical
    // first-occurrence order.
    out.region_count = densify_labels(labels);
    return out;
}

RegionPriorMeans region_prior_means(const LabelMap& labels, const Raster& prior) {
    if (labels.width != prior.width || labels.height != prior.height)
        throw ValidationError("region_prior_means: label map is " + std::to_string(labels.width) +
                              "x" + std::to_string(labels.height) + " but prior is " +
                              std::to_string(prior.width) + "x" + std::to_string(prior.height));
    RegionPriorMeans out;
    out.pixel_count.assign(labels.region_count, 0);
    out.prior_sum.assign(labels.region_count, DD{});
    out.prior_sum_sq.assign(labels.region_count, 0.0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        std::uint32_t r = labels.labels[i];
        double v = prior.values[i];
        out.pixel_count[r] += 1;
        out.prior_sum[r] = dd_add(out.prior_sum[r], v);
        out.prior_sum_sq[r] += v * v;
    }
    return out;
}

} // namespace hrf
