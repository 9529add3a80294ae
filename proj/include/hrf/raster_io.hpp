#pragma once

#include <string>

#include "hrf/raster.hpp"

namespace hrf {

enum class RasterKind {
    Image, // sample values kept as-is
    Prior  // divided by maxval, result in [0,1]
};

// Reads a PGM file (P2 or P5, maxval 255 or 65535, 16-bit samples big-endian).
// Comment lines starting with '#' are allowed between header tokens.
// Throws FormatError (with byte offset) on malformed input, IoError if the
// file cannot be read.
Raster load_raster(const std::string& path, RasterKind kind);

// Writes a P5 PGM with the given maxval (255 or 65535). Values are rounded to
// the nearest integer and must land in [0, maxval].
void save_pgm(const Raster& raster, const std::string& path, int maxval);

// LBL format: ASCII header "LBL <width> <height>\n" followed by width*height
// little-endian uint32 labels, row-major. On load, labels are remapped to
// dense {0..R-1} in first-occurrence raster order; every label's pixel set
// must be 4-connected (ValidationError names the offending input label).
LabelMap load_label_map(const std::string& path);
void save_label_map(const LabelMap& labels, const std::string& path);

// UCM stored as 16-bit P5: sample = floor(s * 65535 + 0.5) (round half up).
// All saliencies must lie in [0,1].
void save_ucm(const SaliencyGrid& ucm, const std::string& path);

} // namespace hrf
