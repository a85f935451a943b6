#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "wmark/colorspace.hpp"

using namespace wmark;

TEST_CASE("forward matrix rows sum to (1, 0, 0)") {
    for (std::size_t r = 0; r < 3; ++r) {
        const double sum = kRgbToYcbcr[r][0] + kRgbToYcbcr[r][1] + kRgbToYcbcr[r][2];
        CHECK(sum == doctest::Approx(r == 0 ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("inverse matrix is the inverse and close to the rounded table") {
    const Matrix3 printed = {{{1.0, 0.0, 1.40200}, {1.0, -0.34414, -0.71414}, {1.0, 1.77200, 0.0}}};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            double prod = 0.0;
            for (std::size_t k = 0; k < 3; ++k) prod += kYcbcrToRgb[i][k] * kRgbToYcbcr[k][j];
            CHECK(prod == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
            CHECK(std::abs(kYcbcrToRgb[i][j] - printed[i][j]) < 1.2e-3);
        }
    }
}

TEST_CASE("hand-evaluated pixels") {
    const auto black = to_ycbcr({0, 0, 0});
    CHECK(black.y == 0.0);
    CHECK(black.cb == 0.0);
    CHECK(black.cr == 0.0);

    const auto white = to_ycbcr({255, 255, 255});
    CHECK(white.y == doctest::Approx(255.0));
    CHECK(white.cb == doctest::Approx(0.0));
    CHECK(white.cr == doctest::Approx(0.0));

    const auto red = to_ycbcr({255, 0, 0});
    CHECK(red.y == doctest::Approx(76.2195).epsilon(1e-9));
    CHECK(red.cb == doctest::Approx(-43.0287).epsilon(1e-9));
    CHECK(red.cr == doctest::Approx(127.5).epsilon(1e-9));

    const auto grey = to_rgb({255, 0, 0});
    CHECK(grey.r == doctest::Approx(255.0));
    CHECK(grey.g == doctest::Approx(255.0));
    CHECK(grey.b == doctest::Approx(255.0));
}

TEST_CASE("pixel round trip within 0.01 before clamping") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(0.0, 255.0);
    for (int i = 0; i < 10000; ++i) {
        const RgbPixel p{d(rng), d(rng), d(rng)};
        const RgbPixel q = to_rgb(to_ycbcr(p));
        CHECK(std::abs(q.r - p.r) <= 0.01);
        CHECK(std::abs(q.g - p.g) <= 0.01);
        CHECK(std::abs(q.b - p.b) <= 0.01);
    }
}

TEST_CASE("chroma range for valid input") {
    std::mt19937_64 rng(12);
    const RgbImage img = test::random_rgb(40, 40, rng);
    const YcbcrImage ycc = rgb_to_ycbcr(img);
    for (std::size_t i = 0; i < ycc.y.size(); ++i) {
        CHECK(ycc.y[i] >= -1e-9);
        CHECK(ycc.y[i] <= 255.0 + 1e-9);
        CHECK(std::abs(ycc.cb[i]) <= 127.5 + 1e-9);
        CHECK(std::abs(ycc.cr[i]) <= 127.5 + 1e-9);
    }
}

TEST_CASE("image conversion clamps and 8-bit rounding") {
    YcbcrImage ycc(Plane(1, 1, 300.0), Plane(1, 1, 0.0), Plane(1, 1, 0.0));
    const RgbImage rgb = ycbcr_to_rgb(ycc);
    CHECK(rgb.r[0] == 255.0);
    CHECK(to_8bit(-3.0) == 0.0);
    CHECK(to_8bit(2.5) == 3.0);
    CHECK(to_8bit(2.49) == 2.0);
    CHECK_THROWS(RgbImage(Plane(2, 2), Plane(2, 2), Plane(3, 2)));
}
