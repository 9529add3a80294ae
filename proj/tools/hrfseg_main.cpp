// hrfseg: hierarchical image segmentation with prior-weighted stochastic
// watershed valuations. `segment` produces UCMs and partitions; `oracle`
// cross-checks the closed-form probabilities against Monte-Carlo frequencies.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "hrf/errors.hpp"
#include "hrf/pipeline.hpp"

namespace {

// 0 success, 2 config error, 3 format error, 4 validation error,
// 5 I/O failure, 1 anything else.
int run(int argc, char** argv) {
    CLI::App app{"Prior-weighted stochastic watershed hierarchies"};
    app.require_subcommand(1);

    hrf::PipelineConfig cfg;
    std::string mode = "volume";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", cfg.input, "input grayscale image (PGM P2/P5)")->required();
        cmd->add_option("--prior", cfg.prior, "prior probability map (PGM, rescaled to [0,1])");
        cmd->add_option("--prior2", cfg.prior2, "second prior, combined with the first");
        cmd->add_option("--labels-in", cfg.labels_in, "external fine partition (LBL)");
        cmd->add_option("--mode", mode, "uniform | volume | hrf | hrf-transition");
        cmd->add_option("--markers", cfg.markers,
                        "expected marker count (default: one per fine region)");
        cmd->add_option("--chain", cfg.chain_depth, "extra chained valuation passes");
        cmd->add_option("--dump-edges", cfg.dump_edges, "write RAG edges as CSV");
    };

    CLI::App* segment = app.add_subcommand("segment", "compute UCM and/or partition outputs");
    add_common(segment);
    segment->add_option("--out-ucm", cfg.out_ucm, "ultrametric contour map output (16-bit PGM)");
    segment->add_option("--out-labels", cfg.out_labels, "partition output (LBL)");
    segment->add_option("--k", cfg.k, "partition region count");
    segment->add_option("--threshold", cfg.threshold, "partition cut level in [0,1]");

    CLI::App* oracle = app.add_subcommand("oracle", "Monte-Carlo check of edge probabilities");
    add_common(oracle);
    oracle->add_option("--trials", cfg.trials, "Monte-Carlo trials (default 10000)");
    oracle->add_option("--seed", cfg.seed, "random seed (default 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) // --help
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    cfg.mode = hrf::parse_mode(mode);
    if (segment->parsed())
        hrf::run_segment(cfg, std::cerr);
    else
        hrf::run_oracle(cfg, std::cout, std::cerr);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const hrf::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hrf::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const hrf::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const hrf::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
