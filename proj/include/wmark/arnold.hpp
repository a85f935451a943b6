#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace wmark {

// Square n x n binary matrix. Cell (x, y) is column x, row y, zero based.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t side);
    BitMatrix(std::size_t side, std::vector<std::uint8_t> bits);

    // Rejects non-square shapes; the cat map is only defined modulo one side length.
    static BitMatrix from_rows(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits);

    std::size_t side() const { return side_; }
    std::size_t size() const { return bits_.size(); }

    std::uint8_t operator()(std::size_t x, std::size_t y) const { return bits_[y * side_ + x]; }
    void set(std::size_t x, std::size_t y, bool bit) { bits_[y * side_ + x] = bit ? 1 : 0; }

    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    void set(std::size_t i, bool bit) { bits_[i] = bit ? 1 : 0; }

    const std::vector<std::uint8_t>& bits() const { return bits_; }
    std::size_t popcount() const;

    bool operator==(const BitMatrix&) const = default;

private:
    std::size_t side_ = 0;
    std::vector<std::uint8_t> bits_;
};

// One cat-map iteration: the bit at (x, y) moves to ((x + y) mod n, (x + 2y) mod n).
BitMatrix arnold_step(const BitMatrix& m);

// `times` forward iterations, computed through the matrix power so the cost does
// not grow with `times`.
BitMatrix scramble(const BitMatrix& m, std::uint64_t times);

// Exact inverse of scramble(m, times), using the inverse map [[2, -1], [-1, 1]].
BitMatrix unscramble(const BitMatrix& m, std::uint64_t times);

// Smallest p >= 1 for which p iterations restore every cell of an n x n grid.
std::uint64_t arnold_period(std::size_t n);

}  // namespace wmark
