#include "wmark/metrics.hpp"

#include <cmath>
#include <span>
#include <string>

#include "wmark/error.hpp"

namespace wmark {

namespace {

void require_same_shape(const Plane& a, const Plane& b) {
    if (a.empty() || !a.same_shape(b)) {
        throw InvalidArgument("dimension mismatch: " + std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                              " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()));
    }
}

void require_same_side(const BitMatrix& a, const BitMatrix& b) {
    if (a.side() == 0 || a.side() != b.side()) {
        throw InvalidArgument("watermark size mismatch: " + std::to_string(a.side()) + " vs " +
                              std::to_string(b.side()));
    }
}

double sum_squared_diff(const Plane& a, const Plane& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

// Pearson over several plane pairs treated as one sample sequence.
double pooled_pearson(std::span<const Plane* const> as, std::span<const Plane* const> bs) {
    double mean_a = 0.0, mean_b = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < as.size(); ++k) {
        require_same_shape(*as[k], *bs[k]);
        for (std::size_t i = 0; i < as[k]->size(); ++i) {
            mean_a += (*as[k])[i];
            mean_b += (*bs[k])[i];
        }
        n += as[k]->size();
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);

    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t k = 0; k < as.size(); ++k) {
        for (std::size_t i = 0; i < as[k]->size(); ++i) {
            const double da = (*as[k])[i] - mean_a;
            const double db = (*bs[k])[i] - mean_b;
            cov += da * db;
            var_a += da * da;
            var_b += db * db;
        }
    }
    if (var_a == 0.0 || var_b == 0.0) throw InvalidArgument("correlation undefined for a constant input");
    return cov / (std::sqrt(var_a) * std::sqrt(var_b));
}

}  // namespace

double mse(const Plane& a, const Plane& b) {
    require_same_shape(a, b);
    return sum_squared_diff(a, b) / static_cast<double>(a.size());
}

double mse(const RgbImage& a, const RgbImage& b) {
    require_same_shape(a.r, b.r);
    const double sum = sum_squared_diff(a.r, b.r) + sum_squared_diff(a.g, b.g) + sum_squared_diff(a.b, b.b);
    return sum / (3.0 * static_cast<double>(a.r.size()));
}

double psnr_from_mse(double mse) {
    if (mse == 0.0) return kInfinitePsnr;
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double psnr(const Plane& a, const Plane& b) { return psnr_from_mse(mse(a, b)); }
double psnr(const RgbImage& a, const RgbImage& b) { return psnr_from_mse(mse(a, b)); }

double pearson(const Plane& a, const Plane& b) {
    const Plane* as[] = {&a};
    const Plane* bs[] = {&b};
    return pooled_pearson(as, bs);
}

double pearson(const RgbImage& a, const RgbImage& b) {
    const Plane* as[] = {&a.r, &a.g, &a.b};
    const Plane* bs[] = {&b.r, &b.g, &b.b};
    return pooled_pearson(as, bs);
}

double nc(const BitMatrix& w, const BitMatrix& w_star) {
    require_same_side(w, w_star);
    std::size_t overlap = 0;
    std::size_t energy = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        overlap += static_cast<std::size_t>(w[i] * w_star[i]);
        energy += static_cast<std::size_t>(w[i] * w[i]);
    }
    if (energy == 0) throw InvalidArgument("NC undefined: reference watermark has no set bits");
    return static_cast<double>(overlap) / static_cast<double>(energy);
}

double error_bits_pct(const BitMatrix& w, const BitMatrix& w_star) {
    require_same_side(w, w_star);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < w.size(); ++i) diff += w[i] != w_star[i] ? 1 : 0;
    return 100.0 * static_cast<double>(diff) / static_cast<double>(w.size());
}

QualityReport assess_quality(const RgbImage& host, const RgbImage& marked, PsnrChannels channels) {
    QualityReport r;
    if (channels == PsnrChannels::rgb) {
        r.mse = mse(host, marked);
        r.correlation = pearson(host, marked);
    } else {
        const Plane ya = rgb_to_ycbcr(host).y;
        const Plane yb = rgb_to_ycbcr(marked).y;
        r.mse = mse(ya, yb);
        r.correlation = pearson(ya, yb);
    }
    r.psnr_db = psnr_from_mse(r.mse);
    return r;
}

RobustnessReport assess_robustness(const BitMatrix& original, const BitMatrix& extracted) {
    return {nc(original, extracted), error_bits_pct(original, extracted)};
}

}  // namespace wmark
