#include "hrf/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "hrf/errors.hpp"
#include "hrf/union_find.hpp"

namespace hrf {

namespace {

// Sequential search below this mean; above, split into independent chunks.
constexpr double kPoissonChunk = 30.0;

std::uint64_t poisson_small(SplitMix64& rng, double lambda) {
    double u = rng.uniform01();
    double p = std::exp(-lambda);
    double cum = p;
    std::uint64_t k = 0;
    while (u >= cum) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cum += p;
        if (p == 0.0) break; // tail exhausted below double precision
    }
    return k;
}

} // namespace

std::uint64_t sample_poisson(SplitMix64& rng, double lambda) {
    std::uint64_t count = 0;
    while (lambda > kPoissonChunk) {
        count += poisson_small(rng, kPoissonChunk);
        lambda -= kPoissonChunk;
    }
    return count + poisson_small(rng, lambda);
}

std::vector<std::uint64_t> sample_markers(const DensityField& density, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::uint64_t> counts(density.lambda.size());
    for (std::size_t r = 0; r < counts.size(); ++r)
        counts[r] = sample_poisson(rng, density.lambda[r]);
    return counts;
}

namespace {

struct SweepPlan {
    std::vector<std::uint32_t> order;        // edge indices by (weight, edge_id)
    std::vector<std::size_t> batch_end;      // exclusive end per batch, in order
};

SweepPlan plan_sweep(const Tree& tree) {
    SweepPlan plan;
    plan.order.resize(tree.edges.size());
    for (std::uint32_t i = 0; i < plan.order.size(); ++i) plan.order[i] = i;
    std::sort(plan.order.begin(), plan.order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (tree.edges[a].weight != tree.edges[b].weight)
            return tree.edges[a].weight < tree.edges[b].weight;
        return tree.edges[a].edge_id < tree.edges[b].edge_id;
    });
    std::size_t i = 0;
    while (i < plan.order.size()) {
        std::size_t j = i + 1;
        const double w = tree.edges[plan.order[i]].weight;
        while (j < plan.order.size() && tree.edges[plan.order[j]].weight == w) ++j;
        plan.batch_end.push_back(j);
        i = j;
    }
    return plan;
}

// At least one marker on this side once the rate is scaled by chi.
bool side_present(SplitMix64& rng, std::uint64_t base_markers, double lambda, double chi) {
    if (chi == 1.0) return base_markers > 0;
    if (chi <= 0.0) return false;
    if (chi < 1.0) {
        // Thin: each existing marker survives with probability chi.
        bool any = false;
        for (std::uint64_t i = 0; i < base_markers; ++i)
            if (rng.uniform01() < chi) any = true;
        return any;
    }
    // Superpose extra markers at rate (chi-1)*lambda on top of the base set.
    if (base_markers > 0) return true;
    return sample_poisson(rng, (chi - 1.0) * lambda) > 0;
}

TrialReport run_trials(const Tree& tree, const DensityField& density,
                       const std::vector<double>* chi, std::uint64_t trials,
                       std::uint64_t seed) {
    if (trials < 1)
        throw ValidationError("estimate_cut_frequencies: trials must be >= 1");
    if (density.lambda.size() != tree.node_count)
        throw ValidationError("estimate_cut_frequencies: density does not cover every node");
    if (chi && chi->size() != tree.edges.size())
        throw ValidationError("estimate_cut_frequencies: chi does not cover every edge");

    const SweepPlan plan = plan_sweep(tree);
    TrialReport report;
    report.trials = trials;
    report.cut_count.assign(tree.edges.size(), 0);

    std::vector<std::uint64_t> markers;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng(mix_seed(seed, t));
        markers.resize(tree.node_count);
        for (std::uint32_t r = 0; r < tree.node_count; ++r)
            markers[r] = sample_poisson(rng, density.lambda[r]);

        // Components from strictly smaller weights; a batch is decided before
        // any of its merges.
        UnionFind uf(tree.node_count);
        for (std::uint32_t r = 0; r < tree.node_count; ++r) {
            RegionStats& s = uf.mutable_stats(r);
            s.pixel_count = markers[r];
            s.lambda = density.lambda[r];
        }
        std::size_t batch_begin = 0;
        for (std::size_t end : plan.batch_end) {
            for (std::size_t i = batch_begin; i < end; ++i) {
                const std::uint32_t ei = plan.order[i];
                const TreeEdge& e = tree.edges[ei];
                const RegionStats& cs = uf.stats(e.u);
                const RegionStats& ct = uf.stats(e.v);
                const double c = chi ? (*chi)[ei] : 1.0;
                bool cut = side_present(rng, cs.pixel_count, cs.lambda, c) &&
                           side_present(rng, ct.pixel_count, ct.lambda, c);
                if (cut) ++report.cut_count[ei];
            }
            for (std::size_t i = batch_begin; i < end; ++i)
                uf.unite(tree.edges[plan.order[i]].u, tree.edges[plan.order[i]].v);
            batch_begin = end;
        }
    }

    report.frequency.resize(tree.edges.size());
    report.std_error.resize(tree.edges.size());
    for (std::size_t i = 0; i < tree.edges.size(); ++i) {
        double f = static_cast<double>(report.cut_count[i]) / static_cast<double>(trials);
        report.frequency[i] = f;
        report.std_error[i] = std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
    }
    return report;
}

} // namespace

TrialReport estimate_cut_frequencies(const Tree& tree, const DensityField& density,
                                     std::uint64_t trials, std::uint64_t seed) {
    return run_trials(tree, density, nullptr, trials, seed);
}

TrialReport estimate_cut_frequencies_chi(const Tree& tree, const DensityField& density,
                                         const std::vector<double>& chi, std::uint64_t trials,
                                         std::uint64_t seed) {
    return run_trials(tree, density, &chi, trials, seed);
}

void write_trial_report_csv(std::ostream& out, const Tree& tree, const TrialReport& report,
                            const HierarchyValuation& valuation) {
    out << "edge_id,u,v,p_closed_form,frequency,std_err\n";
    char buf[128];
    for (std::size_t i = 0; i < tree.edges.size(); ++i) {
        const TreeEdge& e = tree.edges[i];
        std::snprintf(buf, sizeof(buf), "%u,%u,%u,%.12g,%.12g,%.12g", e.edge_id, e.u, e.v,
                      valuation.p[i], report.frequency[i], report.std_error[i]);
        out << buf << '\n';
    }
}

} // namespace hrf
