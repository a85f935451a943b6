#include "wmark/colorspace.hpp"

#include <algorithm>
#include <cmath>

#include "wmark/error.hpp"

namespace wmark {

namespace {

void require_same_shape(const Plane& a, const Plane& b, const Plane& c) {
    if (a.empty() || !a.same_shape(b) || !a.same_shape(c)) {
        throw InvalidArgument("color planes must be non-empty and share dimensions");
    }
}

}  // namespace

YcbcrPixel to_ycbcr(const RgbPixel& p) {
    const auto& m = kRgbToYcbcr;
    return {m[0][0] * p.r + m[0][1] * p.g + m[0][2] * p.b,
            m[1][0] * p.r + m[1][1] * p.g + m[1][2] * p.b,
            m[2][0] * p.r + m[2][1] * p.g + m[2][2] * p.b};
}

RgbPixel to_rgb(const YcbcrPixel& p) {
    const auto& m = kYcbcrToRgb;
    return {m[0][0] * p.y + m[0][1] * p.cb + m[0][2] * p.cr,
            m[1][0] * p.y + m[1][1] * p.cb + m[1][2] * p.cr,
            m[2][0] * p.y + m[2][1] * p.cb + m[2][2] * p.cr};
}

RgbImage::RgbImage(Plane red, Plane green, Plane blue)
    : r(std::move(red)), g(std::move(green)), b(std::move(blue)) {
    require_same_shape(r, g, b);
}

YcbcrImage::YcbcrImage(Plane luma, Plane blue_diff, Plane red_diff)
    : y(std::move(luma)), cb(std::move(blue_diff)), cr(std::move(red_diff)) {
    require_same_shape(y, cb, cr);
}

YcbcrImage rgb_to_ycbcr(const RgbImage& img) {
    require_same_shape(img.r, img.g, img.b);
    Plane y(img.width(), img.height());
    Plane cb(img.width(), img.height());
    Plane cr(img.width(), img.height());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const YcbcrPixel p = to_ycbcr({img.r[i], img.g[i], img.b[i]});
        y[i] = p.y;
        cb[i] = p.cb;
        cr[i] = p.cr;
    }
    return {std::move(y), std::move(cb), std::move(cr)};
}

RgbImage ycbcr_to_rgb(const YcbcrImage& img) {
    require_same_shape(img.y, img.cb, img.cr);
    RgbImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.y.size(); ++i) {
        const RgbPixel p = to_rgb({img.y[i], img.cb[i], img.cr[i]});
        out.r[i] = std::clamp(p.r, 0.0, 255.0);
        out.g[i] = std::clamp(p.g, 0.0, 255.0);
        out.b[i] = std::clamp(p.b, 0.0, 255.0);
    }
    return out;
}

double to_8bit(double v) {
    return std::floor(std::clamp(v, 0.0, 255.0) + 0.5);
}

RgbImage round_to_8bit(const RgbImage& img) {
    RgbImage out = img;
    for (Plane* p : {&out.r, &out.g, &out.b}) {
        for (double& v : p->samples()) v = to_8bit(v);
    }
    return out;
}

}  // namespace wmark
