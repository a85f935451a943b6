#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wmark/colorspace.hpp"

namespace wmark {

enum class AttackChannels { luma, all };

struct CompressionAttackSpec {
    double threshold = 0.0;  // detail coefficients with |d| <= threshold are zeroed
    int levels = 3;
    AttackChannels channels = AttackChannels::all;
};

struct CropAttackSpec {
    std::size_t x = 0;
    std::size_t y = 0;
    std::size_t width = 0;
    std::size_t height = 0;
    std::uint8_t fill = 0;
};

// Hard-thresholds every detail subband of the selected YCbCr channels, leaves
// the approximation untouched, and returns the clamped 8-bit result.
RgbImage wavelet_compress(const RgbImage& image, const CompressionAttackSpec& spec);

// Replaces the pixels inside the rectangle with `fill` in all channels.
RgbImage crop(const RgbImage& image, const CropAttackSpec& spec);

// Top-left quarter, centre quarter, bottom quarter-height strip.
std::vector<CropAttackSpec> standard_crop_rects(std::size_t width, std::size_t height);

// Short stable labels used in reports, e.g. "compress:3.0000", "crop:0:0:128:128:fill0".
std::string describe(const CompressionAttackSpec& spec);
std::string describe(const CropAttackSpec& spec);

}  // namespace wmark
