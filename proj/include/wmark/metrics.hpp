#pragma once

#include <limits>

#include "wmark/arnold.hpp"
#include "wmark/colorspace.hpp"
#include "wmark/plane.hpp"

namespace wmark {

// PSNR of identical inputs.
inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

double mse(const Plane& a, const Plane& b);
// Pools all 3 * width * height samples into one mean.
double mse(const RgbImage& a, const RgbImage& b);

// 10 log10(255^2 / MSE); kInfinitePsnr when MSE is zero.
double psnr_from_mse(double mse);
double psnr(const Plane& a, const Plane& b);
double psnr(const RgbImage& a, const RgbImage& b);

// Pearson correlation coefficient. Throws InvalidArgument if either input is constant.
double pearson(const Plane& a, const Plane& b);
double pearson(const RgbImage& a, const RgbImage& b);

// sum(w * w_star) / sum(w^2). Not symmetric. Throws for an all-zero reference.
double nc(const BitMatrix& w, const BitMatrix& w_star);

// Percentage of differing cells.
double error_bits_pct(const BitMatrix& w, const BitMatrix& w_star);

enum class PsnrChannels { rgb, luma };

struct QualityReport {
    double psnr_db = kInfinitePsnr;
    double mse = 0.0;
    double correlation = 1.0;
};

struct RobustnessReport {
    double nc = 1.0;
    double error_bits_pct = 0.0;
};

QualityReport assess_quality(const RgbImage& host, const RgbImage& marked,
                             PsnrChannels channels = PsnrChannels::rgb);
RobustnessReport assess_robustness(const BitMatrix& original, const BitMatrix& extracted);

}  // namespace wmark
