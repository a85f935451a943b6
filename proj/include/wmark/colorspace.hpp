#pragma once

#include <array>
#include <cstddef>

#include "wmark/plane.hpp"

namespace wmark {

using Matrix3 = std::array<std::array<double, 3>, 3>;

// RGB -> YCbCr analysis matrix. Cb/Cr carry no +128 offset; the last entry of
// the Cr row is -0.08131 so that every chroma row sums to zero.
inline constexpr Matrix3 kRgbToYcbcr = {{
    {0.29890, 0.58660, 0.11450},
    {-0.16874, -0.33126, 0.50000},
    {0.50000, -0.41869, -0.08131},
}};

constexpr Matrix3 invert(const Matrix3& m) {
    const double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    const double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    const double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    const double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
    return {{
        {c00 / det, (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det,
         (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det},
        {c01 / det, (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det,
         (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det},
        {c02 / det, (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det,
         (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det},
    }};
}

// YCbCr -> RGB synthesis matrix. This is the exact inverse of kRgbToYcbcr; it
// matches the familiar 1 / 1.402 / -0.34414 / -0.71414 / 1.772 table to within
// 1.1e-3 per entry, and unlike that rounded table it round-trips exactly, so a
// color conversion pair never moves luma wavelet coefficients.
inline constexpr Matrix3 kYcbcrToRgb = invert(kRgbToYcbcr);

struct RgbPixel {
    double r = 0, g = 0, b = 0;
};

struct YcbcrPixel {
    double y = 0, cb = 0, cr = 0;
};

// Pure linear maps, no clamping.
YcbcrPixel to_ycbcr(const RgbPixel& p);
RgbPixel to_rgb(const YcbcrPixel& p);

struct RgbImage {
    Plane r, g, b;

    RgbImage() = default;
    RgbImage(Plane red, Plane green, Plane blue);
    RgbImage(std::size_t width, std::size_t height, double fill = 0.0)
        : r(width, height, fill), g(width, height, fill), b(width, height, fill) {}

    std::size_t width() const { return r.width(); }
    std::size_t height() const { return r.height(); }

    RgbPixel pixel(std::size_t x, std::size_t y) const { return {r(x, y), g(x, y), b(x, y)}; }
    void set_pixel(std::size_t x, std::size_t y, const RgbPixel& p) {
        r(x, y) = p.r;
        g(x, y) = p.g;
        b(x, y) = p.b;
    }

    bool operator==(const RgbImage&) const = default;
};

struct YcbcrImage {
    Plane y, cb, cr;

    YcbcrImage() = default;
    YcbcrImage(Plane luma, Plane blue_diff, Plane red_diff);

    std::size_t width() const { return y.width(); }
    std::size_t height() const { return y.height(); }

    bool operator==(const YcbcrImage&) const = default;
};

// Full real precision; no rounding and no offset.
YcbcrImage rgb_to_ycbcr(const RgbImage& img);

// Clamps every channel to [0, 255]. Rounding is left to round_to_8bit.
RgbImage ycbcr_to_rgb(const YcbcrImage& img);

// Clamp to [0, 255] and round half up; the 8-bit materialization step.
double to_8bit(double v);
RgbImage round_to_8bit(const RgbImage& img);

}  // namespace wmark
