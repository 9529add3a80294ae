#include "hrf/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "hrf/errors.hpp"
#include "hrf/fine_partition.hpp"
#include "hrf/graph.hpp"
#include "hrf/hierarchy.hpp"
#include "hrf/mc_oracle.hpp"
#include "hrf/raster_io.hpp"
#include "hrf/sws.hpp"

namespace hrf {

Mode parse_mode(const std::string& name) {
    if (name == "uniform") return Mode::Uniform;
    if (name == "volume") return Mode::Volume;
    if (name == "hrf") return Mode::Hrf;
    if (name == "hrf-transition") return Mode::HrfTransition;
    throw ConfigError("unknown mode '" + name +
                      "' (expected uniform, volume, hrf or hrf-transition)");
}

namespace {

const char* mode_name(Mode m) {
    switch (m) {
    case Mode::Uniform: return "uniform";
    case Mode::Volume: return "volume";
    case Mode::Hrf: return "hrf";
    case Mode::HrfTransition: return "hrf-transition";
    }
    return "?";
}

class StageClock {
public:
    explicit StageClock(std::ostream& log) : log_(log), last_(clock::now()) {}

    void done(const std::string& stage, const std::string& info = "") {
        auto now = clock::now();
        double ms = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.1f", ms);
        log_ << "[stage] " << stage << (info.empty() ? "" : ": " + info) << " (" << buf
             << " ms)\n";
    }

private:
    using clock = std::chrono::steady_clock;
    std::ostream& log_;
    clock::time_point last_;
};

void validate_common(const PipelineConfig& c) {
    if (c.input.empty())
        throw ConfigError("--input is required");
    const bool needs_prior = c.mode == Mode::Hrf || c.mode == Mode::HrfTransition;
    if (needs_prior && c.prior.empty())
        throw ConfigError(std::string("mode ") + mode_name(c.mode) + " requires --prior");
    if (!c.prior2.empty() && c.prior.empty())
        throw ConfigError("--prior2 given without --prior");
    if (c.markers < 0.0)
        throw ConfigError("--markers must be > 0 (or omitted for one per region)");
    if (c.chain_depth < 0)
        throw ConfigError("--chain must be >= 0");
}

// Everything the segment and oracle entry points share: files in, valued
// hierarchy out.
struct Hierarchy {
    LabelMap fine;
    Rag rag;
    Tree tree;
    DensityField density;
    RegionPriorMeans prior_moments; // populated when a prior is loaded
    bool has_prior = false;
    HierarchyValuation valuation;
};

HierarchyValuation value_tree(const Hierarchy& h, const Tree& tree, Mode mode) {
    switch (mode) {
    case Mode::Uniform:
    case Mode::Hrf:
        return sws_valuation(tree, h.density);
    case Mode::Volume:
        return chi_valuation(tree, h.density, h.prior_moments, {ChiMode::Volume, 0.01});
    case Mode::HrfTransition:
        return chi_valuation(tree, h.density, h.prior_moments, {ChiMode::Transition, 0.01});
    }
    throw ConfigError("unhandled mode");
}

Hierarchy build_hierarchy(const PipelineConfig& c, StageClock& clock) {
    Hierarchy h;

    Raster image = load_raster(c.input, RasterKind::Image);
    clock.done("load", std::to_string(image.width) + "x" + std::to_string(image.height));

    if (!c.labels_in.empty()) {
        h.fine = load_label_map(c.labels_in);
        if (h.fine.width != image.width || h.fine.height != image.height)
            throw ValidationError("external label map dimensions do not match the image");
        clock.done("fine-partition", std::to_string(h.fine.region_count) + " regions (external)");
    } else {
        Raster gradient = morphological_gradient(image);
        h.fine = watershed(gradient);
        clock.done("fine-partition", std::to_string(h.fine.region_count) + " regions");
    }

    h.rag = build_rag(h.fine, image);
    clock.done("rag", std::to_string(h.rag.edges.size()) + " edges");

    h.tree = minimum_spanning_tree(h.rag);
    clock.done("mst", std::to_string(h.tree.edges.size()) + " edges");

    if (!c.dump_edges.empty()) {
        std::ofstream csv(c.dump_edges, std::ios::trunc);
        if (!csv)
            throw IoError("cannot open " + c.dump_edges + " for writing");
        write_edges_csv(csv, h.rag);
    }

    const double n_markers =
        c.markers > 0.0 ? c.markers : static_cast<double>(h.fine.region_count);

    if (!c.prior.empty()) {
        Raster prior = load_raster(c.prior, RasterKind::Prior);
        if (prior.width != image.width || prior.height != image.height)
            throw ValidationError("prior dimensions do not match the image");
        if (!c.prior2.empty()) {
            Raster second = load_raster(c.prior2, RasterKind::Prior);
            if (second.width != image.width || second.height != image.height)
                throw ValidationError("second prior dimensions do not match the image");
            prior = combine_priors(prior, second);
        }
        h.prior_moments = region_prior_means(h.fine, prior);
        h.has_prior = true;
    }

    const bool prior_weighted = h.has_prior && c.mode != Mode::Uniform;
    if (prior_weighted)
        h.density = prior_density(h.prior_moments, n_markers);
    else
        h.density = uniform_density(h.fine, n_markers);
    {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", n_markers);
        clock.done("density", std::string(prior_weighted ? "prior" : "uniform") + ", N = " + buf);
    }

    h.valuation = value_tree(h, h.tree, c.mode);
    for (int pass = 0; pass < c.chain_depth; ++pass) {
        h.tree = chain(h.tree, h.valuation);
        h.valuation = value_tree(h, h.tree, c.mode);
    }
    clock.done("valuation", std::string(mode_name(c.mode)) +
                                (c.chain_depth > 0
                                     ? " (+" + std::to_string(c.chain_depth) + " chained)"
                                     : ""));
    return h;
}

} // namespace

void run_segment(const PipelineConfig& c, std::ostream& log) {
    validate_common(c);
    const bool want_labels = !c.out_labels.empty();
    const bool has_k = c.k != 0;
    const bool has_threshold = c.threshold >= 0.0;
    if (want_labels && has_k == has_threshold)
        throw ConfigError("--out-labels needs exactly one of --k / --threshold");
    if (!want_labels && (has_k || has_threshold))
        throw ConfigError("--k / --threshold given without --out-labels");
    if (has_threshold && c.threshold > 1.0)
        throw ConfigError("--threshold must lie in [0,1]");
    if (has_k && c.k < 1)
        throw ConfigError("--k must be >= 1");

    StageClock clock(log);
    Hierarchy h = build_hierarchy(c, clock);

    if (!c.out_ucm.empty()) {
        Ultrametric um = ultrametric(h.tree, h.valuation, adjacent_pairs(h.rag));
        SaliencyGrid ucm = render_ucm(h.fine, um);
        save_ucm(ucm, c.out_ucm);
        clock.done("ucm", c.out_ucm);
    }
    if (want_labels) {
        LabelMap cut;
        if (has_k) {
            if (c.k > static_cast<std::int64_t>(h.tree.node_count))
                throw ConfigError("--k exceeds the fine region count (" +
                                  std::to_string(h.tree.node_count) + ")");
            cut = cut_k(h.tree, h.valuation, static_cast<std::uint32_t>(c.k), h.fine);
        } else {
            cut = cut_threshold(h.tree, h.valuation, c.threshold, h.fine);
        }
        save_label_map(cut, c.out_labels);
        clock.done("partition", std::to_string(cut.region_count) + " regions -> " + c.out_labels);
    }
}

bool run_oracle(const PipelineConfig& c, std::ostream& csv_out, std::ostream& log) {
    validate_common(c);
    if (c.trials < 1)
        throw ConfigError("--trials must be >= 1");

    StageClock clock(log);
    Hierarchy h = build_hierarchy(c, clock);

    // The sampler is independent of the closed form; in the chi modes it
    // reuses the closed-form per-edge chi as the rate factor.
    TrialReport report;
    if (c.mode == Mode::Volume || c.mode == Mode::HrfTransition)
        report = estimate_cut_frequencies_chi(h.tree, h.density, h.valuation.chi, c.trials,
                                              c.seed);
    else
        report = estimate_cut_frequencies(h.tree, h.density, c.trials, c.seed);
    clock.done("oracle", std::to_string(c.trials) + " trials");

    write_trial_report_csv(csv_out, h.tree, report, h.valuation);

    // 4-standard-error agreement, standard error taken from the closed form.
    double worst = 0.0;
    bool pass = true;
    for (std::size_t i = 0; i < h.tree.edges.size(); ++i) {
        const double p = h.valuation.p[i];
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(report.trials));
        const double diff = std::abs(report.frequency[i] - p);
        if (se == 0.0) {
            if (diff != 0.0) pass = false;
        } else {
            worst = std::max(worst, diff / se);
            if (diff > 4.0 * se) pass = false;
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", worst);
    csv_out << "# check: " << (pass ? "PASS" : "FAIL") << " (max |frequency - p| = " << buf
            << " standard errors)\n";
    return pass;
}

} // namespace hrf
