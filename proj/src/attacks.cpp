#include "wmark/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wmark/dwt.hpp"
#include "wmark/error.hpp"

namespace wmark {

namespace {

void hard_threshold(Plane& band, double threshold) {
    for (double& v : band.samples()) {
        if (std::abs(v) <= threshold) v = 0.0;
    }
}

Plane compress_plane(const Plane& plane, const CompressionAttackSpec& spec) {
    SubbandPyramid pyr = dwt2_forward(plane, spec.levels);
    for (DetailBands& level : pyr.details) {
        hard_threshold(level.lh, spec.threshold);
        hard_threshold(level.hl, spec.threshold);
        hard_threshold(level.hh, spec.threshold);
    }
    return dwt2_inverse(pyr);
}

}  // namespace

RgbImage wavelet_compress(const RgbImage& image, const CompressionAttackSpec& spec) {
    if (!(spec.threshold >= 0.0) || !std::isfinite(spec.threshold)) {
        throw InvalidArgument("compression threshold must be a finite non-negative number");
    }
    if (spec.levels < 1 || spec.levels > 30) throw InvalidArgument("compression levels must be >= 1");
    const std::size_t min_side = std::size_t{1} << spec.levels;
    if (image.width() < min_side || image.height() < min_side) {
        throw InvalidArgument("image " + std::to_string(image.width()) + "x" + std::to_string(image.height()) +
                              " is too small for " + std::to_string(spec.levels) + "-level compression");
    }
    YcbcrImage ycc = rgb_to_ycbcr(image);
    ycc.y = compress_plane(ycc.y, spec);
    if (spec.channels == AttackChannels::all) {
        ycc.cb = compress_plane(ycc.cb, spec);
        ycc.cr = compress_plane(ycc.cr, spec);
    }
    return round_to_8bit(ycbcr_to_rgb(ycc));
}

RgbImage crop(const RgbImage& image, const CropAttackSpec& spec) {
    if (spec.width == 0 || spec.height == 0) throw InvalidArgument("crop rectangle must have positive area");
    if (spec.x >= image.width() || spec.y >= image.height() || spec.width > image.width() - spec.x ||
        spec.height > image.height() - spec.y) {
        throw InvalidArgument("crop rectangle " + describe(spec) + " is outside the " +
                              std::to_string(image.width()) + "x" + std::to_string(image.height()) + " image");
    }
    RgbImage out = image;
    const double fill = spec.fill;
    for (std::size_t y = spec.y; y < spec.y + spec.height; ++y) {
        for (std::size_t x = spec.x; x < spec.x + spec.width; ++x) out.set_pixel(x, y, {fill, fill, fill});
    }
    return out;
}

std::vector<CropAttackSpec> standard_crop_rects(std::size_t width, std::size_t height) {
    const std::size_t hw = std::max<std::size_t>(width / 2, 1);
    const std::size_t hh = std::max<std::size_t>(height / 2, 1);
    const std::size_t strip = std::max<std::size_t>(height / 4, 1);
    return {
        {0, 0, hw, hh, 0},
        {(width - hw) / 2, (height - hh) / 2, hw, hh, 0},
        {0, height - strip, width, strip, 0},
    };
}

std::string describe(const CompressionAttackSpec& spec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "compress:%.4f", spec.threshold);
    std::string out = buf;
    if (spec.levels != 3) out += ":L" + std::to_string(spec.levels);
    if (spec.channels == AttackChannels::luma) out += ":y";
    return out;
}

std::string describe(const CropAttackSpec& spec) {
    return "crop:" + std::to_string(spec.x) + ":" + std::to_string(spec.y) + ":" + std::to_string(spec.width) +
           ":" + std::to_string(spec.height) + ":fill" + std::to_string(spec.fill);
}

}  // namespace wmark
