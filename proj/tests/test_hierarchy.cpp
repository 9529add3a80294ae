#include "doctest.h"

#include <algorithm>
#include <random>

#include "hrf/errors.hpp"
#include "hrf/fine_partition.hpp"
#include "hrf/hierarchy.hpp"
#include "support.hpp"

using namespace hrf;

namespace {

Tree path_tree(const std::vector<double>& weights) {
    Tree t;
    t.node_count = static_cast<std::uint32_t>(weights.size() + 1);
    for (std::uint32_t i = 0; i < weights.size(); ++i)
        t.edges.push_back({i, i + 1, weights[i], i});
    return t;
}

HierarchyValuation valuation_of(const std::vector<double>& p) {
    HierarchyValuation v;
    v.p = p;
    v.chi.assign(p.size(), 1.0);
    return v;
}

} // namespace

TEST_CASE("saliency is the path maximum") {
    Tree t = path_tree({0.0, 0.0});
    HierarchyValuation val = valuation_of({0.2, 0.9});
    Ultrametric um = ultrametric(t, val, {{0, 2}, {0, 1}, {1, 2}});
    CHECK(um.saliency(0, 2) == 0.9);
    CHECK(um.saliency(0, 1) == 0.2); // tree edge: its own p
    CHECK(um.saliency(1, 2) == 0.9);
    CHECK_THROWS_AS(um.saliency(5, 0), ValidationError);
}

TEST_CASE("ultrametric equals brute-force path enumeration on a random tree") {
    std::mt19937 gen(31);
    for (int iter = 0; iter < 10; ++iter) {
        Tree t = support::random_tree(gen, 10, {1.0, 2.0, 3.0, 4.0});
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> p;
        for (std::size_t i = 0; i < t.edges.size(); ++i) p.push_back(u(gen));
        HierarchyValuation val = valuation_of(p);

        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
        for (std::uint32_t a = 0; a < t.node_count; ++a)
            for (std::uint32_t b = a + 1; b < t.node_count; ++b) pairs.emplace_back(a, b);
        Ultrametric um = ultrametric(t, val, pairs);
        for (auto [a, b] : pairs)
            CHECK(um.saliency(a, b) == support::naive_path_max(t, p, a, b));
    }
}

TEST_CASE("ultrametric satisfies the strong triangle inequality") {
    std::mt19937 gen(37);
    Tree t = support::random_tree(gen, 30, {1.0, 2.0, 3.0});
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p;
    for (std::size_t i = 0; i < t.edges.size(); ++i) p.push_back(u(gen));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t a = 0; a < t.node_count; ++a)
        for (std::uint32_t b = a + 1; b < t.node_count; ++b) pairs.emplace_back(a, b);
    Ultrametric um = ultrametric(t, valuation_of(p), pairs);

    std::uniform_int_distribution<std::uint32_t> pick(0, t.node_count - 1);
    for (int i = 0; i < 10000; ++i) {
        std::uint32_t a = pick(gen), b = pick(gen), c = pick(gen);
        if (a == b || b == c || a == c) continue;
        CHECK(um.saliency(a, c) <= std::max(um.saliency(a, b), um.saliency(b, c)) + 0.0);
    }
}

TEST_CASE("threshold cuts") {
    Tree t = path_tree({0.0, 0.0, 0.0});
    HierarchyValuation val = valuation_of({0.3, 0.7, 0.5});
    LabelMap fine = support::make_labels(4, 1, {0, 1, 2, 3});

    CHECK(cut_threshold(t, val, 1.0, fine).region_count == 1);
    CHECK(cut_threshold(t, val, 0.1, fine).region_count == 4); // below min p
    // region count = 1 + #{p > lambda}
    CHECK(cut_threshold(t, val, 0.5, fine).region_count == 2);
    CHECK(cut_threshold(t, val, 0.4, fine).region_count == 3);
}

TEST_CASE("cut_k yields exactly k regions with edge-id tie-breaks") {
    Tree t = path_tree({0.0, 0.0, 0.0});
    HierarchyValuation val = valuation_of({0.5, 0.5, 0.5});
    LabelMap fine = support::make_labels(4, 1, {0, 1, 2, 3});

    CHECK(cut_k(t, val, 1, fine).region_count == 1);
    CHECK(cut_k(t, val, 4, fine).region_count == 4);
    // ties: with k=2 the removed edge is the one with the largest edge_id
    LabelMap two = cut_k(t, val, 2, fine);
    CHECK(two.labels == std::vector<std::uint32_t>{0, 0, 0, 1});
    CHECK_THROWS_AS(cut_k(t, val, 0, fine), ValidationError);
    CHECK_THROWS_AS(cut_k(t, val, 5, fine), ValidationError);
}

TEST_CASE("cut_k is exact for every k on a 500-node random tree") {
    std::mt19937 gen(41);
    Tree t = support::random_tree(gen, 500, {1.0, 2.0});
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p;
    for (std::size_t i = 0; i < t.edges.size(); ++i) p.push_back(u(gen) < 0.3 ? 0.5 : u(gen));
    HierarchyValuation val = valuation_of(p);
    for (std::uint32_t k = 1; k <= t.node_count; ++k) {
        auto comp = k_components(t, val, k);
        CHECK(*std::max_element(comp.begin(), comp.end()) + 1 == k);
    }
}

TEST_CASE("nested thresholds nest the partitions") {
    std::mt19937 gen(43);
    Tree t = support::random_tree(gen, 40, {1.0, 2.0, 3.0});
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p;
    for (std::size_t i = 0; i < t.edges.size(); ++i) p.push_back(u(gen));
    HierarchyValuation val = valuation_of(p);
    for (int i = 0; i + 1 < 10; ++i) {
        double l1 = i / 10.0, l2 = (i + 1) / 10.0;
        auto fine = threshold_components(t, val, l1);
        auto coarse = threshold_components(t, val, l2);
        // each fine component maps into exactly one coarse component
        std::unordered_map<std::uint32_t, std::uint32_t> into;
        for (std::uint32_t v = 0; v < t.node_count; ++v) {
            auto it = into.try_emplace(fine[v], coarse[v]).first;
            CHECK(it->second == coarse[v]);
        }
    }
}

TEST_CASE("marker cuts") {
    Tree t = path_tree({0.0, 0.0, 0.0});
    HierarchyValuation val = valuation_of({0.1, 0.9, 0.2});
    LabelMap fine = support::make_labels(4, 1, {0, 1, 2, 3});

    // single marker: everything merges
    CHECK(marker_cut(t, val, {1}, fine).region_count == 1);
    // markers everywhere: the fine partition
    CHECK(marker_cut(t, val, {0, 1, 2, 3}, fine).region_count == 4);
    // two markers: the highest edge on the path is cut
    LabelMap two = marker_cut(t, val, {0, 3}, fine);
    CHECK(two.labels == std::vector<std::uint32_t>{0, 0, 1, 1});
    CHECK_THROWS_AS(marker_cut(t, val, {}, fine), ValidationError);
    CHECK_THROWS_AS(marker_cut(t, val, {9}, fine), ValidationError);
}

TEST_CASE("markers anywhere inside their domains give the same partition") {
    // 4-node path, dominant middle edge: domains {0,1} and {2,3}
    Tree t = path_tree({0.0, 0.0, 0.0});
    HierarchyValuation val = valuation_of({0.1, 0.9, 0.2});
    LabelMap fine = support::make_labels(4, 1, {0, 1, 2, 3});
    std::vector<std::uint32_t> expected{0, 0, 1, 1};
    for (std::uint32_t a : {0u, 1u})
        for (std::uint32_t b : {2u, 3u})
            CHECK(marker_cut(t, val, {a, b}, fine).labels == expected);
}

TEST_CASE("render_ucm of a single region is all zero") {
    LabelMap fine = support::make_labels(2, 2, {0, 0, 0, 0});
    Ultrametric um({}, {});
    SaliencyGrid g = render_ucm(fine, um);
    CHECK(g.width == 5);
    CHECK(g.height == 5);
    for (double v : g.values) CHECK(v == 0.0);
}

TEST_CASE("render_ucm lays out one boundary and its corners") {
    LabelMap fine = support::make_labels(2, 1, {0, 1});
    Ultrametric um({{0, 1}}, {0.7});
    SaliencyGrid g = render_ucm(fine, um);
    REQUIRE(g.width == 5);
    REQUIRE(g.height == 3);
    // boundary cell between the two pixels plus its two corner cells
    CHECK(g.at(2, 1) == 0.7);
    CHECK(g.at(2, 0) == 0.7);
    CHECK(g.at(2, 2) == 0.7);
    int nonzero = 0;
    for (double v : g.values)
        if (v != 0.0) ++nonzero;
    CHECK(nonzero == 3);
}

TEST_CASE("missing adjacency saliency is an error") {
    LabelMap fine = support::make_labels(2, 1, {0, 1});
    Ultrametric um({}, {});
    CHECK_THROWS_AS(render_ucm(fine, um), ValidationError);
}

TEST_CASE("thresholding the UCM reproduces cut_threshold exactly") {
    // end-to-end on a small synthetic image
    Raster img = support::synth_natural(40, 28, 9);
    LabelMap fine = watershed(morphological_gradient(img));
    REQUIRE(fine.region_count >= 2);
    Rag rag = build_rag(fine, img);
    Tree tree = minimum_spanning_tree(rag);
    DensityField d = uniform_density(fine, static_cast<double>(fine.region_count));
    HierarchyValuation val = sws_valuation(tree, d);
    Ultrametric um = ultrametric(tree, val, adjacent_pairs(rag));
    SaliencyGrid ucm = render_ucm(fine, um);

    std::mt19937 gen(51);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int iter = 0; iter < 20; ++iter) {
        double lambda = u(gen);
        LabelMap expect = cut_threshold(tree, val, lambda, fine);

        // extract the partition from the UCM: pixels are 4-connected when the
        // boundary cell between them is <= lambda
        LabelMap got(fine.width, fine.height);
        std::vector<std::uint32_t>& out = got.labels;
        out.assign(fine.size(), UINT32_MAX);
        std::uint32_t next = 0;
        std::vector<std::size_t> stack;
        for (std::size_t s = 0; s < fine.size(); ++s) {
            if (out[s] != UINT32_MAX) continue;
            out[s] = next;
            stack.assign(1, s);
            while (!stack.empty()) {
                std::size_t p = stack.back();
                stack.pop_back();
                int x = static_cast<int>(p % fine.width), y = static_cast<int>(p / fine.width);
                auto visit = [&](int nx, int ny, double boundary) {
                    if (nx < 0 || nx >= fine.width || ny < 0 || ny >= fine.height) return;
                    if (boundary > lambda) return;
                    std::size_t q = static_cast<std::size_t>(ny) * fine.width + nx;
                    if (out[q] == UINT32_MAX) {
                        out[q] = next;
                        stack.push_back(q);
                    }
                };
                visit(x + 1, y, x + 1 < fine.width ? ucm.at(2 * x + 2, 2 * y + 1) : 1.0);
                visit(x - 1, y, x > 0 ? ucm.at(2 * x, 2 * y + 1) : 1.0);
                visit(x, y + 1, y + 1 < fine.height ? ucm.at(2 * x + 1, 2 * y + 2) : 1.0);
                visit(x, y - 1, y > 0 ? ucm.at(2 * x + 1, 2 * y) : 1.0);
            }
            ++next;
        }
        got.region_count = next;
        CHECK(got.labels == expect.labels);
        CHECK(got.region_count == expect.region_count);
    }
}
