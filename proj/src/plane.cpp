#include "wmark/plane.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wmark/error.hpp"

namespace wmark {

Plane::Plane(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height), samples_(width * height, fill) {
    if (width == 0 || height == 0) {
        throw InvalidArgument("plane dimensions must be positive");
    }
}

Plane::Plane(std::size_t width, std::size_t height, std::vector<double> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
    if (width == 0 || height == 0) {
        throw InvalidArgument("plane dimensions must be positive");
    }
    if (samples_.size() != width * height) {
        throw InvalidArgument("plane sample count " + std::to_string(samples_.size()) +
                              " does not match " + std::to_string(width) + "x" +
                              std::to_string(height));
    }
}

bool Plane::all_finite() const {
    return std::all_of(samples_.begin(), samples_.end(),
                       [](double v) { return std::isfinite(v); });
}

}  // namespace wmark
