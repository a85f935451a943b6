#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wmark {

// Row-major 2-D matrix of real samples; one image channel or one subband.
class Plane {
public:
    Plane() = default;
    Plane(std::size_t width, std::size_t height, double fill = 0.0);
    Plane(std::size_t width, std::size_t height, std::vector<double> samples);

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }

    double& operator()(std::size_t x, std::size_t y) { return samples_[y * width_ + x]; }
    double operator()(std::size_t x, std::size_t y) const { return samples_[y * width_ + x]; }

    double& operator[](std::size_t i) { return samples_[i]; }
    double operator[](std::size_t i) const { return samples_[i]; }

    std::span<double> row(std::size_t y) { return {samples_.data() + y * width_, width_}; }
    std::span<const double> row(std::size_t y) const { return {samples_.data() + y * width_, width_}; }

    std::span<double> samples() { return samples_; }
    std::span<const double> samples() const { return samples_; }

    bool same_shape(const Plane& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }
    bool all_finite() const;

    bool operator==(const Plane&) const = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<double> samples_;
};

}  // namespace wmark
