#include "wmark/arnold.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "wmark/error.hpp"

namespace wmark {

namespace {

// 2x2 integer matrix with entries reduced mod n.
using Mat2 = std::array<std::uint64_t, 4>;

Mat2 multiply(const Mat2& a, const Mat2& b, std::uint64_t n) {
    return {(a[0] * b[0] + a[1] * b[2]) % n, (a[0] * b[1] + a[1] * b[3]) % n,
            (a[2] * b[0] + a[3] * b[2]) % n, (a[2] * b[1] + a[3] * b[3]) % n};
}

Mat2 power(Mat2 base, std::uint64_t exp, std::uint64_t n) {
    Mat2 result{1 % n, 0, 0, 1 % n};
    while (exp > 0) {
        if (exp & 1U) result = multiply(result, base, n);
        base = multiply(base, base, n);
        exp >>= 1U;
    }
    return result;
}

BitMatrix remap(const BitMatrix& m, const Mat2& map) {
    const std::size_t n = m.side();
    BitMatrix out(n);
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            const std::size_t nx = (map[0] * x + map[1] * y) % n;
            const std::size_t ny = (map[2] * x + map[3] * y) % n;
            out.set(nx, ny, m(x, y) != 0);
        }
    }
    return out;
}

}  // namespace

BitMatrix::BitMatrix(std::size_t side) : side_(side), bits_(side * side, 0) {
    if (side == 0) throw InvalidArgument("bit matrix side must be positive");
}

BitMatrix::BitMatrix(std::size_t side, std::vector<std::uint8_t> bits)
    : side_(side), bits_(std::move(bits)) {
    if (side == 0) throw InvalidArgument("bit matrix side must be positive");
    if (bits_.size() != side * side) {
        throw InvalidArgument("bit matrix needs " + std::to_string(side * side) + " cells, got " +
                              std::to_string(bits_.size()));
    }
    if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; })) {
        throw InvalidArgument("bit matrix entries must be 0 or 1");
    }
}

BitMatrix BitMatrix::from_rows(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits) {
    if (width != height) {
        throw InvalidArgument("watermark must be square, got " + std::to_string(width) + "x" +
                              std::to_string(height));
    }
    return BitMatrix(width, std::move(bits));
}

std::size_t BitMatrix::popcount() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

BitMatrix arnold_step(const BitMatrix& m) {
    return scramble(m, 1);
}

BitMatrix scramble(const BitMatrix& m, std::uint64_t times) {
    const std::uint64_t n = m.side();
    return remap(m, power({1, 1, 1, 2}, times, n));
}

BitMatrix unscramble(const BitMatrix& m, std::uint64_t times) {
    const std::uint64_t n = m.side();
    // -1 mod n is n - 1.
    return remap(m, power({2 % n, n - 1, n - 1, 1 % n}, times, n));
}

std::uint64_t arnold_period(std::size_t n) {
    if (n == 0) throw InvalidArgument("arnold period needs n >= 1");
    if (n == 1) return 1;
    const Mat2 step{1, 1, 1, 2};
    const Mat2 identity{1, 0, 0, 1};
    Mat2 acc = step;
    std::uint64_t p = 1;
    while (acc != identity) {
        acc = multiply(acc, step, n);
        ++p;
    }
    return p;
}

}  // namespace wmark
