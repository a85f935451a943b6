#include "wmark/codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <unordered_set>

#include "wmark/dwt.hpp"
#include "wmark/error.hpp"

namespace wmark {

namespace {

// 8-bit materialization. A smooth luma perturbation of a few hundredths of a
// gray level disappears under plain rounding because the host samples are
// already integers, so the perturbation is error-diffused onto the host and the
// LL3 coefficients of the resulting 8-bit image are driven toward their targets.
constexpr double kRepairTolerance = 0.15;  // accepted |target - measured|, in steps
constexpr double kRepairGain = 0.6;
constexpr int kRepairPasses = 64;
constexpr int kRetargetPass = kRepairPasses / 2;

// Serpentine Floyd-Steinberg diffusion of `offset` onto integer-valued `base`,
// clamped to [0, 255].
Plane diffuse_onto(const Plane& base, const Plane& offset) {
    const std::size_t w = base.width();
    const std::size_t h = base.height();
    Plane out = base;
    std::vector<double> current(w + 2, 0.0);
    std::vector<double> next(w + 2, 0.0);
    // Index shift by one so x - 1 and x + 1 never leave the buffers.
    for (std::size_t y = 0; y < h; ++y) {
        std::fill(next.begin(), next.end(), 0.0);
        const bool left_to_right = (y % 2) == 0;
        for (std::size_t step = 0; step < w; ++step) {
            const std::size_t x = left_to_right ? step : w - 1 - step;
            const std::size_t bx = x + 1;
            const std::size_t ahead = left_to_right ? bx + 1 : bx - 1;
            const std::size_t behind = left_to_right ? bx - 1 : bx + 1;

            const double wanted = offset(x, y) + current[bx];
            const double value = to_8bit(base(x, y) + std::floor(wanted + 0.5));
            const double err = wanted - (value - base(x, y));
            out(x, y) = value;
            current[ahead] += err * 7.0 / 16.0;
            next[behind] += err * 3.0 / 16.0;
            next[bx] += err * 5.0 / 16.0;
            next[ahead] += err * 1.0 / 16.0;
        }
        std::swap(current, next);
    }
    return out;
}

RgbImage apply_luma_offset(const RgbImage& base, const Plane& delta_y) {
    // A pure luma change maps to an equal change in R, G and B.
    return {diffuse_onto(base.r, delta_y), diffuse_onto(base.g, delta_y), diffuse_onto(base.b, delta_y)};
}

std::int8_t sign_of(double c) { return c < 0.0 ? std::int8_t{-1} : std::int8_t{1}; }

std::int64_t quantize(double magnitude, double step) {
    return std::llround(magnitude / step);
}

void check_capacity(const Plane& band, std::size_t needed) {
    if (needed > band.size()) {
        throw InvalidArgument("watermark needs " + std::to_string(needed) + " coefficients but LL" +
                              std::to_string(kEmbedLevels) + " (" + std::to_string(band.width()) + "x" +
                              std::to_string(band.height()) + ") holds only " +
                              std::to_string(band.size()));
    }
}

}  // namespace

void WatermarkKey::validate() const {
    if (!(quant_step > 0.0) || !std::isfinite(quant_step)) {
        throw InvalidArgument("key quant_step must be a positive finite number");
    }
    if (levels != kEmbedLevels) {
        throw InvalidArgument("key levels must be " + std::to_string(kEmbedLevels));
    }
    if (subband != kEmbedSubband) {
        throw InvalidArgument(std::string("key subband must be ") + kEmbedSubband);
    }
    if (wm_side == 0) throw InvalidArgument("key wm_side must be positive");
    if (indices.size() != wm_side * wm_side) {
        throw InvalidArgument("key has " + std::to_string(indices.size()) + " indices, expected " +
                              std::to_string(wm_side * wm_side));
    }
    std::unordered_set<std::size_t> seen;
    for (std::size_t idx : indices) {
        if (!seen.insert(idx).second) {
            throw InvalidArgument("key index " + std::to_string(idx) + " appears twice");
        }
    }
    const std::uint64_t period = arnold_period(wm_side);
    if (arnold_times >= period) {
        throw InvalidArgument("key arnold_times " + std::to_string(arnold_times) +
                              " must be below the period " + std::to_string(period));
    }
}

std::vector<std::size_t> select_indices(std::size_t width, std::size_t height, std::size_t count,
                                        IndexSelection strategy, std::uint64_t seed) {
    const std::size_t capacity = width * height;
    if (count > capacity) {
        throw InvalidArgument("cannot select " + std::to_string(count) + " indices from a band of " +
                              std::to_string(capacity));
    }
    std::vector<std::size_t> all(capacity);
    for (std::size_t i = 0; i < capacity; ++i) all[i] = i;
    if (strategy == IndexSelection::random) {
        // Partial Fisher-Yates with rejection sampling, so the result depends only
        // on the seed and not on the standard library's distributions.
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint64_t range = capacity - i;
            const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                        std::numeric_limits<std::uint64_t>::max() % range;
            std::uint64_t draw = 0;
            do {
                draw = rng();
            } while (draw >= limit);
            std::swap(all[i], all[i + draw % range]);
        }
    }
    all.resize(count);
    return all;
}

std::int64_t force_parity(std::int64_t q, double magnitude, double step, int bit) {
    if ((q & 1) == bit) return q;
    if (q == 0) return 1;
    const double down = std::abs(static_cast<double>(q - 1) * step - magnitude);
    const double up = std::abs(static_cast<double>(q + 1) * step - magnitude);
    return down < up ? q - 1 : q + 1;
}

BandEmbedding embed_in_band(const Plane& band, const BitMatrix& scrambled,
                            std::span<const std::size_t> indices, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw InvalidArgument("quantization step must be positive");
    }
    if (indices.size() != scrambled.size()) {
        throw InvalidArgument("index count does not match watermark size");
    }
    BandEmbedding out{band, {}, {}};
    out.signs.signs.reserve(indices.size());
    out.levels.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= band.size()) throw InvalidArgument("coefficient index out of range");
        const double c = band[indices[i]];
        const std::int8_t sign = sign_of(c);
        const double magnitude = std::abs(c);
        const std::int64_t q = force_parity(quantize(magnitude, step), magnitude, step, scrambled[i]);
        out.signs.signs.push_back(sign);
        out.levels.push_back(q);
        out.band[indices[i]] = sign * static_cast<double>(q) * step;
    }
    return out;
}

Plane luma_approximation(const RgbImage& image, int levels) {
    return dwt2_forward(rgb_to_ycbcr(image).y, levels).ll;
}

EmbedResult embed(const RgbImage& host, const BitMatrix& wm, const EmbedParams& params) {
    if (!(params.quant_step > 0.0) || !std::isfinite(params.quant_step)) {
        throw InvalidArgument("quantization step must be positive, got " + std::to_string(params.quant_step));
    }
    if (wm.side() == 0) throw InvalidArgument("watermark is empty");
    const std::uint64_t period = arnold_period(wm.side());
    if (params.arnold_times >= period) {
        throw InvalidArgument("arnold times " + std::to_string(params.arnold_times) +
                              " must be below the period " + std::to_string(period) + " for side " +
                              std::to_string(wm.side()));
    }
    const std::size_t min_side = std::size_t{1} << kEmbedLevels;
    if (host.width() < min_side || host.height() < min_side) {
        throw InvalidArgument("host image " + std::to_string(host.width()) + "x" +
                              std::to_string(host.height()) + " is too small for a " +
                              std::to_string(kEmbedLevels) + "-level decomposition");
    }

    const RgbImage base = round_to_8bit(host);
    const YcbcrImage ycc = rgb_to_ycbcr(base);
    SubbandPyramid pyr = dwt2_forward(ycc.y, kEmbedLevels);
    check_capacity(pyr.ll, wm.size());

    const std::vector<std::size_t> indices =
        select_indices(pyr.ll.width(), pyr.ll.height(), wm.size(), params.selection, params.seed);
    const BitMatrix scrambled = scramble(wm, params.arnold_times);
    BandEmbedding embedding = embed_in_band(pyr.ll, scrambled, indices, params.quant_step);

    const Plane host_ll = pyr.ll;
    pyr.ll = embedding.band;
    YcbcrImage marked{dwt2_inverse(pyr), ycc.cb, ycc.cr};

    // Materialize as 8-bit RGB and steer the measured LL3 coefficients toward
    // their targets.
    const double step = params.quant_step;
    std::vector<std::int64_t> target_levels = embedding.levels;
    std::vector<double> targets(indices.size());
    auto refresh_targets = [&] {
        for (std::size_t i = 0; i < indices.size(); ++i) {
            targets[i] = embedding.signs.signs[i] * static_cast<double>(target_levels[i]) * step;
        }
    };
    refresh_targets();

    Plane correction(host_ll.width(), host_ll.height());
    for (std::size_t i = 0; i < indices.size(); ++i) correction[indices[i]] = targets[i] - host_ll[indices[i]];
    auto render = [&] { return apply_luma_offset(base, dwt2_inverse(approximation_only(pyr, correction))); };

    RgbImage out = render();
    int pass = 0;
    for (; pass < kRepairPasses; ++pass) {
        const Plane measured = luma_approximation(out);
        if (pass == kRetargetPass) {
            // A coefficient still decoding to the wrong parity this late is pinned
            // by clipped pixels; aim for the same parity one level further back.
            bool changed = false;
            for (std::size_t i = 0; i < indices.size(); ++i) {
                const double m = std::abs(measured[indices[i]]);
                const bool wrong = (quantize(m, step) & 1) != scrambled[i];
                const double target = static_cast<double>(target_levels[i]) * step;
                if (!wrong || std::abs(target - m) <= 0.5 * step) continue;
                const std::int64_t alternative = target_levels[i] + (m < target ? -2 : 2);
                if (alternative < 0) continue;
                target_levels[i] = alternative;
                // Drop the correction accumulated against the clip.
                correction[indices[i]] = embedding.signs.signs[i] * static_cast<double>(alternative) * step -
                                         host_ll[indices[i]];
                changed = true;
            }
            if (changed) refresh_targets();
        }
        bool all_within = true;
        for (std::size_t i = 0; i < indices.size(); ++i) {
            const double err = targets[i] - measured[indices[i]];
            if (std::abs(err) > kRepairTolerance * step) {
                correction[indices[i]] += kRepairGain * err;
                all_within = false;
            }
        }
        if (all_within) break;
        out = render();
    }

    WatermarkKey key;
    key.arnold_times = params.arnold_times;
    key.quant_step = params.quant_step;
    key.wm_side = wm.side();
    key.indices = indices;

    return {std::move(out), std::move(key), std::move(marked), std::move(embedding), pass};
}

BitMatrix extract(const RgbImage& image, const WatermarkKey& key) {
    key.validate();
    const std::size_t min_side = std::size_t{1} << key.levels;
    if (image.width() < min_side || image.height() < min_side) {
        throw InvalidArgument("image " + std::to_string(image.width()) + "x" +
                              std::to_string(image.height()) + " is too small for the key's " +
                              std::to_string(key.levels) + "-level decomposition");
    }
    const Plane ll = luma_approximation(image, key.levels);
    BitMatrix scrambled(key.wm_side);
    for (std::size_t i = 0; i < key.indices.size(); ++i) {
        if (key.indices[i] >= ll.size()) {
            throw InvalidArgument("key index " + std::to_string(key.indices[i]) + " is outside the " +
                                  std::to_string(ll.width()) + "x" + std::to_string(ll.height()) +
                                  " LL" + std::to_string(key.levels) + " band of this image");
        }
        scrambled.set(i, (quantize(std::abs(ll[key.indices[i]]), key.quant_step) & 1) != 0);
    }
    return unscramble(scrambled, key.arnold_times);
}

}  // namespace wmark
