#pragma once

#include <filesystem>
#include <functional>
#include <string>

#include "wmark/arnold.hpp"
#include "wmark/colorspace.hpp"

namespace wmark {

// Receives non-fatal notices such as "alpha channel dropped". Defaults to stderr.
using WarningSink = std::function<void(const std::string&)>;
void set_warning_sink(WarningSink sink);

// Reads an 8-bit PNG (gray, gray+alpha, RGB, RGBA, palette) or an uncompressed
// 8/24-bit BMP. Gray inputs are replicated to three channels and alpha is
// dropped with a warning. 16-bit PNGs are rejected.
RgbImage load_rgb(const std::filesystem::path& path);

// Square image thresholded at 128 on luminance (the gray value itself for gray pixels).
BitMatrix load_watermark(const std::filesystem::path& path);
BitMatrix binarize_watermark(const RgbImage& image);

// PNG output. Samples are clamped and rounded to 8 bits.
void save_rgb(const RgbImage& image, const std::filesystem::path& path);
// 8-bit grayscale PNG, 1 -> 255 and 0 -> 0.
void save_watermark(const BitMatrix& bits, const std::filesystem::path& path);

}  // namespace wmark
