#include "hrf/sws.hpp"

#include <algorithm>
#include <cmath>

#include "hrf/errors.hpp"
#include "hrf/union_find.hpp"

namespace hrf {

DensityField uniform_density(const LabelMap& labels, double expected_markers) {
    if (!(expected_markers > 0.0))
        throw ValidationError("uniform_density: expected marker count must be > 0");
    std::vector<std::uint64_t> counts(labels.region_count, 0);
    for (std::uint32_t l : labels.labels) counts[l] += 1;

    DensityField out;
    out.lambda.resize(labels.region_count);
    const DD total(static_cast<double>(labels.size()));
    for (std::uint32_t r = 0; r < labels.region_count; ++r) {
        // Same ratio primitive as prior_density, so a constant prior reduces
        // to this field bit-for-bit.
        double share = dd_ratio(DD(static_cast<double>(counts[r])), total);
        out.lambda[r] = expected_markers * share;
    }
    return out;
}

DensityField prior_density(const RegionPriorMeans& means, double expected_markers) {
    if (!(expected_markers > 0.0))
        throw ValidationError("prior_density: expected marker count must be > 0");
    DD total;
    for (const DD& s : means.prior_sum) total = dd_add(total, s);
    if (!(total.to_double() > 0.0))
        throw ValidationError("prior_density: degenerate prior, every region mass is zero");

    DensityField out;
    out.lambda.resize(means.region_count());
    for (std::uint32_t r = 0; r < means.region_count(); ++r)
        out.lambda[r] = expected_markers * dd_ratio(means.prior_sum[r], total);
    return out;
}

Raster combine_priors(const Raster& a, const Raster& b) {
    if (a.width != b.width || a.height != b.height)
        throw ValidationError("combine_priors: dimensions differ");
    Raster out(a.width, a.height);
    for (std::size_t i = 0; i < out.size(); ++i)
        out.values[i] = (a.values[i] + b.values[i]) / 2.0;
    return out;
}

double cut_probability(double lambda_s, double lambda_t) {
    double p = 1.0 - std::exp(-lambda_s) - std::exp(-lambda_t) + std::exp(-(lambda_s + lambda_t));
    return std::clamp(p, 0.0, 1.0);
}

double transition_chi(double mean_s, double mean_t, double sigma_s, double sigma_t,
                      double epsilon) {
    double hi = std::max(mean_s, mean_t);
    double lo = std::min(mean_s, mean_t);
    return hi * (1.0 - lo) / (epsilon + sigma_s * sigma_t);
}

namespace {

double component_mean(const RegionStats& s) {
    return s.prior_sum / static_cast<double>(s.pixel_count);
}

double component_sigma(const RegionStats& s) {
    double m = component_mean(s);
    double var = s.prior_sum_sq / static_cast<double>(s.pixel_count) - m * m;
    return std::sqrt(std::max(var, 0.0));
}

HierarchyValuation valuation_sweep(const Tree& tree, const DensityField& density,
                                   const RegionPriorMeans* prior, const ChiParams& params) {
    if (density.lambda.size() != tree.node_count)
        throw ValidationError("valuation: density does not cover every tree node");
    if (params.mode == ChiMode::Transition) {
        if (prior == nullptr || prior->region_count() != tree.node_count)
            throw ValidationError("valuation: transition mode needs prior moments per node");
        if (!(params.epsilon > 0.0))
            throw ValidationError("valuation: epsilon must be > 0");
    }

    std::vector<RegionStats> stats(tree.node_count);
    for (std::uint32_t r = 0; r < tree.node_count; ++r) {
        stats[r].lambda = density.lambda[r];
        if (params.mode == ChiMode::Transition) {
            stats[r].pixel_count = prior->pixel_count[r];
            stats[r].prior_sum = prior->prior_sum[r].to_double();
            stats[r].prior_sum_sq = prior->prior_sum_sq[r];
        }
    }
    UnionFind uf(std::move(stats));

    // Increasing (weight, edge_id); equal weights form one batch that is
    // valued against the pre-batch components and merged afterwards.
    std::vector<std::uint32_t> order(tree.edges.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (tree.edges[a].weight != tree.edges[b].weight)
            return tree.edges[a].weight < tree.edges[b].weight;
        return tree.edges[a].edge_id < tree.edges[b].edge_id;
    });

    HierarchyValuation val;
    val.p.assign(tree.edges.size(), 0.0);
    val.chi.assign(tree.edges.size(), 1.0);

    std::size_t batch_begin = 0;
    while (batch_begin < order.size()) {
        std::size_t batch_end = batch_begin + 1;
        const double w = tree.edges[order[batch_begin]].weight;
        while (batch_end < order.size() && tree.edges[order[batch_end]].weight == w)
            ++batch_end;

        for (std::size_t i = batch_begin; i < batch_end; ++i) {
            const TreeEdge& e = tree.edges[order[i]];
            const RegionStats& cs = uf.stats(e.u);
            const RegionStats& ct = uf.stats(e.v);
            double chi = 1.0;
            switch (params.mode) {
            case ChiMode::None:
                break;
            case ChiMode::Volume:
                chi = e.weight;
                break;
            case ChiMode::Transition:
                chi = transition_chi(component_mean(cs), component_mean(ct),
                                     component_sigma(cs), component_sigma(ct), params.epsilon);
                break;
            }
            val.chi[order[i]] = chi;
            val.p[order[i]] = cut_probability(chi * cs.lambda, chi * ct.lambda);
        }
        for (std::size_t i = batch_begin; i < batch_end; ++i)
            uf.unite(tree.edges[order[i]].u, tree.edges[order[i]].v);
        batch_begin = batch_end;
    }
    return val;
}

} // namespace

HierarchyValuation sws_valuation(const Tree& tree, const DensityField& density) {
    return valuation_sweep(tree, density, nullptr, ChiParams{ChiMode::None, 0.01});
}

HierarchyValuation chi_valuation(const Tree& tree, const DensityField& density,
                                 const RegionPriorMeans& prior, const ChiParams& params) {
    return valuation_sweep(tree, density, &prior, params);
}

Tree chain(const Tree& tree, const HierarchyValuation& valuation) {
    if (valuation.p.size() != tree.edges.size())
        throw ValidationError("chain: valuation does not cover every tree edge");
    Tree out = tree;
    for (std::size_t i = 0; i < out.edges.size(); ++i)
        out.edges[i].weight = valuation.p[i];
    return out;
}

} // namespace hrf
