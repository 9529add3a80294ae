#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hrf/graph.hpp"
#include "hrf/rng.hpp"
#include "hrf/sws.hpp"

namespace hrf {

// Aggregated Monte-Carlo cut statistics, aligned with Tree::edges.
struct TrialReport {
    std::uint64_t trials = 0;
    std::vector<std::uint64_t> cut_count;
    std::vector<double> frequency;  // cut_count / trials
    std::vector<double> std_error;  // sqrt(f(1-f)/trials)
};

// One Poisson draw. Inversion by sequential search; means above 30 are split
// into chunks (Poisson superposition), keeping the sequential search in a
// range where exp(-lambda) stays well away from underflow.
std::uint64_t sample_poisson(SplitMix64& rng, double lambda);

// Independent Poisson(lambda_r) marker count per region, ascending region
// order, generator fully determined by the seed.
std::vector<std::uint64_t> sample_markers(const DensityField& density, std::uint64_t seed);

// Simulates the marker process `trials` times (trial i replays from
// mix_seed(seed, i)). An edge counts as cut when, with all edges of weight >=
// its own removed, both of its side components hold at least one marker --
// the same strictly-smaller-weight component structure the closed form uses.
TrialReport estimate_cut_frequencies(const Tree& tree, const DensityField& density,
                                     std::uint64_t trials, std::uint64_t seed);

// Variant with a per-edge marker rate factor chi (aligned with Tree::edges).
// Each side's presence is re-decided at rate chi*lambda: by thinning the
// sampled markers (keep probability chi) when chi <= 1, and by superposing an
// extra Poisson((chi-1)*lambda) population when chi > 1. This keeps the
// simulation independent of the closed-form path.
TrialReport estimate_cut_frequencies_chi(const Tree& tree, const DensityField& density,
                                         const std::vector<double>& chi, std::uint64_t trials,
                                         std::uint64_t seed);

// CSV dump: edge_id,u,v,p_closed_form,frequency,std_err (one row per tree
// edge, in tree order).
void write_trial_report_csv(std::ostream& out, const Tree& tree, const TrialReport& report,
                            const HierarchyValuation& valuation);

} // namespace hrf
