#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "wmark/plane.hpp"

namespace wmark {

// CDF 9/7 lifting constants (the JPEG2000 irreversible pair).
namespace cdf97 {
inline constexpr double kAlpha = -1.586134342059924;
inline constexpr double kBeta = -0.052980118572961;
inline constexpr double kGamma = 0.882911075530934;
inline constexpr double kDelta = 0.443506852043971;
inline constexpr double kK = 1.230174104914001;
}  // namespace cdf97

// DC gain of the low-pass branch in one dimension. A 2-D level therefore
// scales a constant plane by 2, and LL_L by 2^L.
inline constexpr double kLowpassDcGain = std::numbers::sqrt2;

// One decomposition level. The first letter names the horizontal filter and the
// second the vertical one: hl is horizontally high-pass, vertically low-pass.
struct DetailBands {
    Plane lh;
    Plane hl;
    Plane hh;
};

struct SubbandPyramid {
    Plane ll;                          // coarsest approximation LL_L
    std::vector<DetailBands> details;  // details[0] is level 1 (finest)

    std::size_t levels() const { return details.size(); }
    std::size_t subband_count() const { return 3 * details.size() + 1; }
};

// 1-D analysis of `signal` (length >= 1) into ceil(n/2) low and floor(n/2) high
// samples, with whole-point symmetric extension at both ends.
void analyze_1d(std::span<const double> signal, std::span<double> low, std::span<double> high);

// Inverse of analyze_1d; `signal` has length low.size() + high.size().
void synthesize_1d(std::span<const double> low, std::span<const double> high, std::span<double> signal);

// Separable analysis, rows first then columns, recursing on LL. Requires
// width and height >= 2^levels and levels >= 1.
SubbandPyramid dwt2_forward(const Plane& plane, int levels);

// Throws InvalidArgument when subband dimensions are inconsistent.
Plane dwt2_inverse(const SubbandPyramid& pyramid);

// Zero-detail pyramid with the same layout as `like`, holding `ll` as approximation.
SubbandPyramid approximation_only(const SubbandPyramid& like, Plane ll);

}  // namespace wmark
