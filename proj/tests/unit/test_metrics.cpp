#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "wmark/error.hpp"
#include "wmark/metrics.hpp"

using namespace wmark;

namespace {

// Textbook single-pass formulas in long double.
long double oracle_mse(const Plane& a, const Plane& b) {
    long double s = 0;
    for (std::size_t y = 0; y < a.height(); ++y) {
        for (std::size_t x = 0; x < a.width(); ++x) {
            const long double d = static_cast<long double>(a(x, y)) - b(x, y);
            s += d * d;
        }
    }
    return s / (a.width() * a.height());
}

long double oracle_pearson(const Plane& a, const Plane& b) {
    const long double n = a.size();
    long double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa += a[i];
        sb += b[i];
        saa += static_cast<long double>(a[i]) * a[i];
        sbb += static_cast<long double>(b[i]) * b[i];
        sab += static_cast<long double>(a[i]) * b[i];
    }
    return (n * sab - sa * sb) / std::sqrt((n * saa - sa * sa) * (n * sbb - sb * sb));
}

bool close(double got, long double want) {
    return std::abs(static_cast<long double>(got) - want) <= 1e-12L * std::max(1.0L, std::abs(want));
}

}  // namespace

TEST_CASE("mse and psnr hand examples") {
    CHECK(mse(Plane(1, 2, std::vector<double>{0, 0}), Plane(1, 2, std::vector<double>{3, 4})) == 12.5);
    CHECK(mse(Plane(5, 3, 0.0), Plane(5, 3, 255.0)) == 65025.0);
    CHECK(psnr(Plane(5, 3, 0.0), Plane(5, 3, 255.0)) == 0.0);
    const Plane p(4, 4, 9.0);
    CHECK(mse(p, p) == 0.0);
    CHECK(psnr(p, p) == kInfinitePsnr);
    CHECK_THROWS_AS(mse(Plane(2, 2), Plane(2, 3)), InvalidArgument);
}

TEST_CASE("nc and error bits hand examples") {
    const BitMatrix w(2, {1, 1, 0, 1});
    const BitMatrix ws(2, {1, 0, 0, 1});
    CHECK(nc(w, ws) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(nc(w, w) == 1.0);
    CHECK(nc(w, BitMatrix(2)) == 0.0);
    CHECK_THROWS_AS(nc(BitMatrix(2), w), InvalidArgument);

    std::mt19937_64 rng(31);
    const BitMatrix big = test::random_bits(30, rng);
    BitMatrix complement(30);
    for (std::size_t i = 0; i < big.size(); ++i) complement.set(i, big[i] == 0);
    CHECK(error_bits_pct(big, big) == 0.0);
    CHECK(error_bits_pct(big, complement) == 100.0);
    BitMatrix one_flip = big;
    one_flip.set(0, big[0] == 0);
    CHECK(error_bits_pct(big, one_flip) == doctest::Approx(100.0 / 900.0));
    CHECK_THROWS_AS(error_bits_pct(big, BitMatrix(29)), InvalidArgument);
}

TEST_CASE("pearson special cases") {
    std::mt19937_64 rng(32);
    const Plane a = test::random_plane(6, 5, rng);
    Plane neg = a;
    for (double& v : neg.samples()) v = 40.0 - v;
    CHECK(pearson(a, a) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pearson(a, neg) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK_THROWS_AS(pearson(a, Plane(6, 5, 3.0)), InvalidArgument);
}

TEST_CASE("metrics match brute-force recomputation") {
    std::mt19937_64 rng(33);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t w = dim(rng), h = std::max<std::size_t>(2, dim(rng));
        const Plane a = test::random_plane(w, h, rng);
        const Plane b = test::random_plane(w, h, rng);
        const long double m = oracle_mse(a, b);
        CHECK(close(mse(a, b), m));
        CHECK(close(psnr(a, b), 10.0L * std::log10(255.0L * 255.0L / m)));
        CHECK(close(pearson(a, b), oracle_pearson(a, b)));

        const BitMatrix x = test::random_bits(w, rng);
        const BitMatrix y = test::random_bits(w, rng);
        long double overlap = 0, energy = 0, diff = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            overlap += x[i] * y[i];
            energy += x[i] * x[i];
            diff += x[i] != y[i];
        }
        CHECK(close(nc(x, y), overlap / energy));
        CHECK(close(error_bits_pct(x, y), 100.0L * diff / x.size()));
    }
}

TEST_CASE("rgb pooling and quality report") {
    RgbImage a(2, 1, 0.0);
    RgbImage b(2, 1, 0.0);
    b.r[0] = 6.0;  // 36 over 6 samples
    CHECK(mse(a, b) == 6.0);

    std::mt19937_64 rng(34);
    const RgbImage host = test::random_rgb(8, 8, rng);
    const QualityReport same = assess_quality(host, host);
    CHECK(same.psnr_db == kInfinitePsnr);
    CHECK(same.correlation == doctest::Approx(1.0));
    const QualityReport luma = assess_quality(host, host, PsnrChannels::luma);
    CHECK(luma.mse == 0.0);
}
