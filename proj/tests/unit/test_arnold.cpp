#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "wmark/arnold.hpp"
#include "wmark/error.hpp"

using namespace wmark;

namespace {

// Period by iterating the position permutation of an n x n index grid.
std::uint64_t brute_force_period(std::size_t n) {
    std::vector<std::size_t> pos(n * n);
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
    std::uint64_t p = 0;
    while (true) {
        for (std::size_t& v : pos) {
            const std::size_t x = v % n, y = v / n;
            v = ((x + 2 * y) % n) * n + (x + y) % n;
        }
        ++p;
        bool identity = true;
        for (std::size_t i = 0; i < pos.size() && identity; ++i) identity = pos[i] == i;
        if (identity) return p;
    }
}

}  // namespace

TEST_CASE("N=2 single cells") {
    BitMatrix m(2);
    m.set(1, 1, true);
    const BitMatrix s = arnold_step(m);
    CHECK(s(0, 1) == 1);
    CHECK(s.popcount() == 1);
    CHECK(unscramble(s, 1) == m);

    BitMatrix origin(2);
    origin.set(0, 0, true);
    CHECK(arnold_step(origin) == origin);
}

TEST_CASE("period matches brute force") {
    CHECK(arnold_period(1) == 1);
    CHECK(arnold_period(2) == 3);
    for (std::size_t n : {2, 3, 4, 5, 7, 8, 10, 16, 30, 32, 64}) {
        CAPTURE(n);
        CHECK(arnold_period(n) == brute_force_period(n));
    }
    CHECK_THROWS_AS(arnold_period(0), InvalidArgument);
}

TEST_CASE("scramble is periodic and bit count invariant") {
    std::mt19937_64 rng(3);
    for (std::size_t n : {2, 8, 30}) {
        const BitMatrix m = test::random_bits(n, rng);
        CHECK(scramble(m, 0) == m);
        CHECK(scramble(m, arnold_period(n)) == m);
        for (std::uint64_t k = 1; k < 5; ++k) CHECK(scramble(m, k).popcount() == m.popcount());
    }
}

TEST_CASE("matrix power agrees with repeated steps") {
    std::mt19937_64 rng(4);
    const BitMatrix m = test::random_bits(30, rng);
    BitMatrix stepped = m;
    for (int k = 1; k <= 25; ++k) {
        stepped = arnold_step(stepped);
        CHECK(scramble(m, k) == stepped);
    }
}

TEST_CASE("unscramble inverts scramble") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> side(1, 40);
    std::uniform_int_distribution<std::uint64_t> times(0, 1000);
    for (int i = 0; i < 100; ++i) {
        const BitMatrix m = test::random_bits(side(rng), rng);
        const std::uint64_t k = times(rng);
        CHECK(unscramble(scramble(m, k), k) == m);
        CHECK(unscramble(m, 0) == m);
    }
}

TEST_CASE("bit matrix validation") {
    CHECK_THROWS_AS(BitMatrix(0), InvalidArgument);
    CHECK_THROWS_AS(BitMatrix(2, {0, 1, 2, 0}), InvalidArgument);
    CHECK_THROWS_AS(BitMatrix(2, {0, 1, 1}), InvalidArgument);
    CHECK_THROWS_AS(BitMatrix::from_rows(3, 2, std::vector<std::uint8_t>(6)), InvalidArgument);
}
