#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace hrf {

enum class Mode {
    Uniform,       // plain stochastic watershed, uniform marker density
    Volume,        // chi = edge weight (default; uses the prior density when given)
    Hrf,           // prior-weighted marker density (requires a prior)
    HrfTransition  // prior density + transition chi (requires a prior)
};

Mode parse_mode(const std::string& name); // throws ConfigError

struct PipelineConfig {
    std::string input;      // grayscale PGM image
    std::string prior;      // optional prior map (PGM, rescaled to [0,1])
    std::string prior2;     // optional second prior, combined with the first
    std::string labels_in;  // optional external fine partition (LBL)
    Mode mode = Mode::Volume;
    double markers = 0.0;   // expected marker count; 0 = one per fine region
    int chain_depth = 0;    // extra valuation passes on the re-valued tree
    std::string out_ucm;    // optional UCM output (16-bit PGM)
    std::string out_labels; // optional partition output (LBL)
    double threshold = -1.0; // cut level for out_labels (exclusive with k)
    std::int64_t k = 0;      // region count for out_labels (exclusive with threshold)
    std::uint64_t seed = 0;  // oracle only
    std::uint64_t trials = 10000; // oracle only
    std::string dump_edges;  // optional RAG edge CSV
};

// image -> fine partition -> RAG -> MST -> valuation (mode, priors, chaining)
// -> UCM and/or partition files. Stage progress, region counts and timings go
// to `log`. Throws ConfigError / FormatError / ValidationError / IoError.
void run_segment(const PipelineConfig& config, std::ostream& log);

// Same front end, then Monte-Carlo cut frequencies on the final tree. Writes
// the trial CSV to `csv_out` followed by a `# check:` line reporting whether
// every edge frequency sits within 4 standard errors of the closed form.
// Returns true when that check passes.
bool run_oracle(const PipelineConfig& config, std::ostream& csv_out, std::ostream& log);

} // namespace hrf
