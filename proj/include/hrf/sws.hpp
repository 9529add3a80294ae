#pragma once

#include <cstdint>
#include <vector>

#include "hrf/fine_partition.hpp"
#include "hrf/graph.hpp"
#include "hrf/raster.hpp"

namespace hrf {

// Expected Poisson marker count per fine region. Additive over regions; after
// normalization the total equals the requested marker count.
struct DensityField {
    std::vector<double> lambda;

    double total() const {
        double t = 0.0;
        for (double l : lambda) t += l;
        return t;
    }
};

// lambda_r = N * pixel_count(r) / (width * height).
DensityField uniform_density(const LabelMap& labels, double expected_markers);

// lambda_r = N * mass_r / total_mass with mass_r the exact sum of prior values
// over the region. Throws ValidationError if every region mass is zero.
DensityField prior_density(const RegionPriorMeans& means, double expected_markers);

// Per-pixel (a+b)/2, staying in [0,1]. The halving is a global scaling and is
// absorbed by the density normalization.
Raster combine_priors(const Raster& a, const Raster& b);

// Probability that two disjoint regions with expected marker counts lambda_s
// and lambda_t each receive at least one Poisson marker:
//   1 - exp(-lambda_s) - exp(-lambda_t) + exp(-(lambda_s + lambda_t))
// clamped to [0,1] against stray rounding.
double cut_probability(double lambda_s, double lambda_t);

// Per-edge cut probabilities, aligned with Tree::edges (the tree keeps the
// original weights and canonical edge ids). chi records the per-edge marker
// rate modulation actually applied (1 when none).
struct HierarchyValuation {
    std::vector<double> p;
    std::vector<double> chi;
};

enum class ChiMode {
    None,       // plain stochastic watershed
    Volume,     // chi = edge weight (volume-based variant)
    Transition  // chi from component prior statistics, see transition_chi
};

struct ChiParams {
    ChiMode mode = ChiMode::None;
    double epsilon = 0.01; // stabilizer in the transition denominator
};

// max(m_s,m_t) * (1 - min(m_s,m_t)) / (epsilon + sigma_s * sigma_t):
// high when one side looks like foreground and the other like background,
// low when both sides agree or are incoherent.
double transition_chi(double mean_s, double mean_t, double sigma_s, double sigma_t,
                      double epsilon);

// Values every tree edge with its probability of being cut by Poisson markers.
// Edges are processed in increasing (weight, edge_id) order in batches of
// equal weight; each edge sees the components as they stand before any merge
// of its batch (components are built from strictly smaller weights), then the
// whole batch merges.
HierarchyValuation sws_valuation(const Tree& tree, const DensityField& density);

// Same sweep with per-edge marker rates scaled by chi. The prior moments are
// consulted only in Transition mode.
HierarchyValuation chi_valuation(const Tree& tree, const DensityField& density,
                                 const RegionPriorMeans& prior, const ChiParams& params);

// Re-values the tree with the cut probabilities as the new dissimilarities
// (weights := p), ready to feed into another valuation pass.
Tree chain(const Tree& tree, const HierarchyValuation& valuation);

} // namespace hrf
