#include "wmark/dwt.hpp"

#include <algorithm>
#include <string>

#include "wmark/error.hpp"

namespace wmark {

namespace {

constexpr double kLowScale = kLowpassDcGain / cdf97::kK;
constexpr double kHighScale = cdf97::kK / kLowpassDcGain;

// s holds even samples, d odd samples. The neighbour lookups implement
// whole-point symmetry: x[-1] = x[1] and x[n] = x[n - 2].
void predict(std::span<double> d, std::span<const double> s, double c) {
    const std::size_t ns = s.size();
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double right = i + 1 < ns ? s[i + 1] : s[i];
        d[i] += c * (s[i] + right);
    }
}

void update(std::span<double> s, std::span<const double> d, double c) {
    const std::size_t nd = d.size();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double left = i > 0 ? d[i - 1] : d[0];
        const double right = i < nd ? d[i] : d[i - 1];
        s[i] += c * (left + right);
    }
}

// Row-by-row 1-D transform of a w x h block into low (ceil(w/2) x h) and high parts.
void analyze_rows(const Plane& in, Plane& low, Plane& high) {
    for (std::size_t y = 0; y < in.height(); ++y) {
        analyze_1d(in.row(y), low.row(y), high.row(y));
    }
}

void analyze_columns(const Plane& in, Plane& low, Plane& high) {
    std::vector<double> column(in.height());
    std::vector<double> lo(low.height());
    std::vector<double> hi(high.height());
    for (std::size_t x = 0; x < in.width(); ++x) {
        for (std::size_t y = 0; y < in.height(); ++y) column[y] = in(x, y);
        analyze_1d(column, lo, hi);
        for (std::size_t y = 0; y < lo.size(); ++y) low(x, y) = lo[y];
        for (std::size_t y = 0; y < hi.size(); ++y) high(x, y) = hi[y];
    }
}

void synthesize_columns(const Plane& low, const Plane& high, Plane& out) {
    std::vector<double> column(out.height());
    std::vector<double> lo(low.height());
    std::vector<double> hi(high.height());
    for (std::size_t x = 0; x < out.width(); ++x) {
        for (std::size_t y = 0; y < lo.size(); ++y) lo[y] = low(x, y);
        for (std::size_t y = 0; y < hi.size(); ++y) hi[y] = high(x, y);
        synthesize_1d(lo, hi, column);
        for (std::size_t y = 0; y < out.height(); ++y) out(x, y) = column[y];
    }
}

std::size_t half_up(std::size_t n) { return (n + 1) / 2; }

// Planes with a zero dimension are represented by a default (empty) Plane.
Plane make_plane(std::size_t w, std::size_t h) {
    return (w == 0 || h == 0) ? Plane{} : Plane(w, h);
}

std::string dims(const Plane& p) {
    return std::to_string(p.width()) + "x" + std::to_string(p.height());
}

}  // namespace

void analyze_1d(std::span<const double> signal, std::span<double> low, std::span<double> high) {
    const std::size_t n = signal.size();
    if (n == 0 || low.size() != half_up(n) || high.size() != n / 2) {
        throw InvalidArgument("analyze_1d: bad buffer sizes");
    }
    if (n == 1) {
        low[0] = signal[0];
        return;
    }
    for (std::size_t i = 0; i < low.size(); ++i) low[i] = signal[2 * i];
    for (std::size_t i = 0; i < high.size(); ++i) high[i] = signal[2 * i + 1];

    predict(high, low, cdf97::kAlpha);
    update(low, high, cdf97::kBeta);
    predict(high, low, cdf97::kGamma);
    update(low, high, cdf97::kDelta);

    for (double& v : low) v *= kLowScale;
    for (double& v : high) v *= kHighScale;
}

void synthesize_1d(std::span<const double> low, std::span<const double> high, std::span<double> signal) {
    const std::size_t n = signal.size();
    if (n == 0 || low.size() != half_up(n) || high.size() != n / 2) {
        throw InvalidArgument("synthesize_1d: bad buffer sizes");
    }
    if (n == 1) {
        signal[0] = low[0];
        return;
    }
    std::vector<double> s(low.begin(), low.end());
    std::vector<double> d(high.begin(), high.end());
    for (double& v : s) v /= kLowScale;
    for (double& v : d) v /= kHighScale;

    update(s, d, -cdf97::kDelta);
    predict(d, s, -cdf97::kGamma);
    update(s, d, -cdf97::kBeta);
    predict(d, s, -cdf97::kAlpha);

    for (std::size_t i = 0; i < s.size(); ++i) signal[2 * i] = s[i];
    for (std::size_t i = 0; i < d.size(); ++i) signal[2 * i + 1] = d[i];
}

SubbandPyramid dwt2_forward(const Plane& plane, int levels) {
    if (levels < 1) throw InvalidArgument("dwt2_forward: levels must be >= 1");
    if (levels > 30) throw InvalidArgument("dwt2_forward: too many levels");
    const std::size_t min_side = std::size_t{1} << levels;
    if (plane.width() < min_side || plane.height() < min_side) {
        throw InvalidArgument("dwt2_forward: " + dims(plane) + " plane is smaller than 2^" +
                              std::to_string(levels) + " in some dimension");
    }
    if (!plane.all_finite()) throw InvalidArgument("dwt2_forward: plane has non-finite samples");

    SubbandPyramid pyr;
    Plane current = plane;
    for (int level = 0; level < levels; ++level) {
        const std::size_t w = current.width();
        const std::size_t h = current.height();
        Plane row_low(half_up(w), h);
        Plane row_high(w / 2, h);
        analyze_rows(current, row_low, row_high);

        Plane ll(half_up(w), half_up(h));
        DetailBands bands{Plane(half_up(w), h / 2), Plane(w / 2, half_up(h)), Plane(w / 2, h / 2)};
        analyze_columns(row_low, ll, bands.lh);
        analyze_columns(row_high, bands.hl, bands.hh);

        pyr.details.push_back(std::move(bands));
        current = std::move(ll);
    }
    pyr.ll = std::move(current);
    return pyr;
}

Plane dwt2_inverse(const SubbandPyramid& pyramid) {
    if (pyramid.details.empty()) throw InvalidArgument("dwt2_inverse: pyramid has no levels");
    Plane current = pyramid.ll;
    for (std::size_t k = pyramid.details.size(); k-- > 0;) {
        const DetailBands& bands = pyramid.details[k];
        const std::size_t w = current.width() + bands.hl.width();
        const std::size_t h = current.height() + bands.lh.height();
        const bool consistent =
            !current.empty() && half_up(w) == current.width() && half_up(h) == current.height() &&
            bands.lh.width() == current.width() && bands.hl.height() == current.height() &&
            bands.hh.width() == bands.hl.width() && bands.hh.height() == bands.lh.height();
        if (!consistent) {
            throw InvalidArgument("dwt2_inverse: level " + std::to_string(k + 1) +
                                  " subband dimensions are inconsistent (ll " + dims(current) +
                                  ", lh " + dims(bands.lh) + ", hl " + dims(bands.hl) + ", hh " +
                                  dims(bands.hh) + ")");
        }

        Plane row_low(current.width(), h);
        if (bands.lh.empty()) {
            row_low = current;
        } else {
            synthesize_columns(current, bands.lh, row_low);
        }
        Plane out(w, h);
        if (bands.hl.empty()) {
            out = row_low;
        } else {
            Plane row_high(bands.hl.width(), h);
            if (bands.hh.empty()) {
                row_high = bands.hl;
            } else {
                synthesize_columns(bands.hl, bands.hh, row_high);
            }
            for (std::size_t y = 0; y < h; ++y) synthesize_1d(row_low.row(y), row_high.row(y), out.row(y));
        }
        current = std::move(out);
    }
    return current;
}

SubbandPyramid approximation_only(const SubbandPyramid& like, Plane ll) {
    if (!ll.same_shape(like.ll)) throw InvalidArgument("approximation_only: LL shape mismatch");
    SubbandPyramid out;
    out.ll = std::move(ll);
    for (const DetailBands& b : like.details) {
        out.details.push_back({make_plane(b.lh.width(), b.lh.height()),
                               make_plane(b.hl.width(), b.hl.height()),
                               make_plane(b.hh.width(), b.hh.height())});
    }
    return out;
}

}  // namespace wmark
