#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "cdoc/image.hpp"

namespace cdoc {

using Histogram = std::array<std::uint64_t, 256>;

Histogram histogram_of(const GrayImage& img);

// Threshold t splits intensities into [0..t] and (t..255]. Maximizes
// between-class variance; ties resolve to the smallest t. All mass in one
// bin returns that bin's index. Comparisons use exact 128-bit integer
// cross-multiplication whenever the pixel count permits, so tie handling
// does not depend on floating-point rounding.
int otsu_threshold(const Histogram& hist);

// Bin with the largest perpendicular distance from the chord joining the
// histogram peak to the farthest non-empty tail bin; the longer tail side
// is used, ties between sides prefer the bright side, ties between bins
// prefer the bin nearest the peak.
int triangle_threshold(const Histogram& hist);

enum class BinarizeMethod { otsu, triangle };

std::string to_string(BinarizeMethod m);

struct BinarizeResult {
  BinaryImage mask;
  BinarizeMethod method = BinarizeMethod::otsu;
  int threshold = 0;
};

// Light backgrounds (mean intensity >= 128) use Otsu with foreground below
// the threshold; dark backgrounds use the triangle method with foreground
// above it. A single-intensity image has no distinguishable ink and yields
// an empty foreground.
BinarizeResult binarize_auto(const GrayImage& img);

// 0/255 rendering of a mask (ink black on white when light_background).
GrayImage render_mask(const BinaryImage& mask, bool light_background);

}  // namespace cdoc
