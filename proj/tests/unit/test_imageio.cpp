#include <doctest.h>

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "wmark/error.hpp"
#include "wmark/imageio.hpp"

using namespace wmark;

namespace {

struct CollectWarnings {
    std::vector<std::string> seen;
    CollectWarnings() {
        set_warning_sink([this](const std::string& m) { seen.push_back(m); });
    }
    ~CollectWarnings() { set_warning_sink(nullptr); }
};

void check_tiny_rgb(const RgbImage& img) {
    REQUIRE(img.width() == 3);
    REQUIRE(img.height() == 2);
    CHECK(img.r(0, 0) == 10);
    CHECK(img.g(0, 0) == 20);
    CHECK(img.b(0, 0) == 30);
    CHECK(img.b(2, 0) == 90);
    CHECK(img.r(0, 1) == 255);
    CHECK(img.g(1, 1) == 255);
    CHECK(img.b(2, 1) == 255);
    CHECK(img.r(2, 1) == 0);
}

}  // namespace

TEST_CASE("loads PNG and BMP test images") {
    check_tiny_rgb(load_rgb(test::data_path("tiny_rgb.png")));
    check_tiny_rgb(load_rgb(test::data_path("tiny_rgb.bmp")));

    const RgbImage gray = load_rgb(test::data_path("tiny_gray.png"));
    CHECK(gray.r(1, 0) == 127);
    CHECK(gray.g(1, 0) == 127);
    CHECK(gray.b(2, 1) == 5);
    CHECK(load_rgb(test::data_path("tiny_palette.bmp")) == gray);

    const RgbImage host = load_rgb(test::data_path("coffee.png"));
    CHECK(host.width() == 256);
    CHECK(host.height() == 256);
}

TEST_CASE("alpha is dropped with a warning and 16-bit is rejected") {
    CollectWarnings warnings;
    check_tiny_rgb(load_rgb(test::data_path("tiny_rgba.png")));
    REQUIRE(warnings.seen.size() == 1);
    CHECK(warnings.seen[0].find("alpha") != std::string::npos);
    CHECK_THROWS_AS(load_rgb(test::data_path("tiny_gray16.png")), IoError);
}

TEST_CASE("missing, unknown and corrupt files") {
    const auto dir = test::scratch_dir("io");
    CHECK_THROWS_AS(load_rgb(dir / "absent.png"), IoError);
    {
        std::ofstream(dir / "junk.png") << "definitely not an image";
    }
    CHECK_THROWS_AS(load_rgb(dir / "junk.png"), IoError);
    CHECK_THROWS_AS(save_rgb(RgbImage(2, 2), dir / "no" / "such" / "dir.png"), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("save and load round trips") {
    const auto dir = test::scratch_dir("io");
    std::mt19937_64 rng(51);
    const RgbImage img = test::random_rgb(17, 9, rng);
    save_rgb(img, dir / "a.png");
    CHECK(load_rgb(dir / "a.png") == img);
    const RgbImage other = test::random_rgb(5, 5, rng);
    save_rgb(other, dir / "a.png");
    CHECK(load_rgb(dir / "a.png") == other);

    RgbImage black(1, 1, 0.0);
    save_rgb(black, dir / "black.png");
    CHECK(load_rgb(dir / "black.png") == black);

    const BitMatrix bits = test::random_bits(30, rng);
    save_watermark(bits, dir / "w.png");
    CHECK(load_watermark(dir / "w.png") == bits);
    std::filesystem::remove_all(dir);
}

TEST_CASE("watermark binarization") {
    CHECK(load_watermark(test::data_path("watermark.png")).side() == 30);

    RgbImage white(30, 30, 255.0);
    CHECK(binarize_watermark(white).popcount() == 900);
    CHECK(binarize_watermark(RgbImage(30, 30, 0.0)).popcount() == 0);

    std::mt19937_64 rng(52);
    const RgbImage mixed = test::random_rgb(12, 12, rng);
    RgbImage grey = mixed;
    grey.g = grey.r;
    grey.b = grey.r;
    std::size_t expected = 0;
    for (double v : grey.r.samples()) expected += v >= 128.0;
    CHECK(binarize_watermark(grey).popcount() == expected);

    CHECK_THROWS_AS(binarize_watermark(RgbImage(3, 2, 0.0)), InvalidArgument);
}
