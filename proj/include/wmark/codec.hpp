#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wmark/arnold.hpp"
#include "wmark/colorspace.hpp"
#include "wmark/plane.hpp"

namespace wmark {

inline constexpr int kEmbedLevels = 3;
inline constexpr const char* kEmbedSubband = "LL3";

// The blind-extraction secret. Everything extract() needs besides the image.
struct WatermarkKey {
    std::uint64_t arnold_times = 0;
    double quant_step = 1.0;
    int levels = kEmbedLevels;
    std::string subband = kEmbedSubband;
    std::size_t wm_side = 0;
    std::vector<std::size_t> indices;  // row-major positions in LL3, one per watermark cell

    // Structural checks that need no image: field ranges, index count and
    // distinctness, arnold_times < period(wm_side). Throws InvalidArgument.
    void validate() const;

    bool operator==(const WatermarkKey&) const = default;
};

// Signs of the selected coefficients, +1 for zero.
struct SignMatrix {
    std::vector<std::int8_t> signs;
};

enum class IndexSelection { row_major, random };

struct EmbedParams {
    std::uint64_t arnold_times = 10;
    double quant_step = 1.0;
    IndexSelection selection = IndexSelection::row_major;
    std::uint64_t seed = 0;
};

// Ordered list of `count` distinct linear indices into a width x height band.
// row_major yields 0..count-1; random yields a prefix of a seeded permutation.
std::vector<std::size_t> select_indices(std::size_t width, std::size_t height, std::size_t count,
                                        IndexSelection strategy = IndexSelection::row_major,
                                        std::uint64_t seed = 0);

// Quantization level with parity `bit` nearest to `magnitude`, starting from
// q = round(magnitude / step). Keeps q when the parity already matches; else
// picks q - 1 or q + 1 by the smaller |q' * step - magnitude|, ties and q = 0
// going to q + 1.
std::int64_t force_parity(std::int64_t q, double magnitude, double step, int bit);

struct BandEmbedding {
    Plane band;                        // copy of the input band with selected coefficients replaced
    SignMatrix signs;                  // recorded before modification
    std::vector<std::int64_t> levels;  // q' per selected coefficient
};

// Coefficient-domain embedding: c' = sign(c) * q' * step at each index, where
// scrambled[i] is the bit carried by indices[i].
BandEmbedding embed_in_band(const Plane& band, const BitMatrix& scrambled,
                            std::span<const std::size_t> indices, double step);

struct EmbedResult {
    RgbImage watermarked;      // 8-bit valued samples, ready to save
    WatermarkKey key;
    YcbcrImage marked_ycbcr;   // real-valued image after the coefficient-domain stage
    BandEmbedding embedding;
    int repair_passes = 0;     // materialization passes used
};

// Embeds `wm` into the LL3 band of the host's luma. Throws InvalidArgument when
// the watermark exceeds LL3 capacity, quant_step <= 0, or arnold_times >= period.
EmbedResult embed(const RgbImage& host, const BitMatrix& wm, const EmbedParams& params = {});

// Blind extraction: only the image and the key are consulted.
BitMatrix extract(const RgbImage& image, const WatermarkKey& key);

// LL band of the luma plane, the band embed() writes to and extract() reads.
Plane luma_approximation(const RgbImage& image, int levels = kEmbedLevels);

}  // namespace wmark
