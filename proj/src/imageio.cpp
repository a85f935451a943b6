#include "wmark/imageio.hpp"

#include <png.h>

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <mutex>
#include <vector>

#include "wmark/error.hpp"

namespace wmark {

namespace {

std::mutex g_sink_mutex;
WarningSink g_sink;

void warn(const std::string& message) {
    std::lock_guard lock(g_sink_mutex);
    if (g_sink) {
        g_sink(message);
    } else {
        std::cerr << "warning: " << message << '\n';
    }
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("cannot read " + path.string());
    return data;
}

bool is_png(const std::vector<std::uint8_t>& data) {
    static constexpr std::array<std::uint8_t, 8> kMagic = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
    return data.size() >= kMagic.size() && std::equal(kMagic.begin(), kMagic.end(), data.begin());
}

bool is_bmp(const std::vector<std::uint8_t>& data) {
    return data.size() >= 2 && data[0] == 'B' && data[1] == 'M';
}

RgbImage decode_png(const std::vector<std::uint8_t>& data, const std::filesystem::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, data.data(), data.size())) {
        throw IoError("cannot decode PNG " + path.string() + ": " + image.message);
    }
    if (image.format & PNG_FORMAT_FLAG_LINEAR) {
        png_image_free(&image);
        throw IoError("unsupported bit depth in " + path.string() + ": only 8-bit PNG is supported, got 16-bit");
    }
    const bool has_alpha = (image.format & PNG_FORMAT_FLAG_ALPHA) != 0;
    if (has_alpha) warn("alpha channel of " + path.string() + " dropped");

    image.format = has_alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
    const std::size_t channels = has_alpha ? 4 : 3;
    std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
        const std::string message = image.message;
        png_image_free(&image);
        throw IoError("cannot decode PNG " + path.string() + ": " + message);
    }

    RgbImage out(image.width, image.height);
    for (std::size_t i = 0; i < out.r.size(); ++i) {
        out.r[i] = pixels[i * channels];
        out.g[i] = pixels[i * channels + 1];
        out.b[i] = pixels[i * channels + 2];
    }
    return out;
}

std::uint32_t read_le32(const std::vector<std::uint8_t>& d, std::size_t at) {
    return static_cast<std::uint32_t>(d[at]) | static_cast<std::uint32_t>(d[at + 1]) << 8 |
           static_cast<std::uint32_t>(d[at + 2]) << 16 | static_cast<std::uint32_t>(d[at + 3]) << 24;
}

std::uint16_t read_le16(const std::vector<std::uint8_t>& d, std::size_t at) {
    return static_cast<std::uint16_t>(d[at] | d[at + 1] << 8);
}

RgbImage decode_bmp(const std::vector<std::uint8_t>& d, const std::filesystem::path& path) {
    const auto fail = [&](const std::string& why) { return IoError("cannot decode BMP " + path.string() + ": " + why); };
    if (d.size() < 54) throw fail("truncated header");
    const std::uint32_t pixel_offset = read_le32(d, 10);
    const std::uint32_t header_size = read_le32(d, 14);
    if (header_size < 40) throw fail("OS/2 headers are not supported");
    const auto width = static_cast<std::int32_t>(read_le32(d, 18));
    const auto raw_height = static_cast<std::int32_t>(read_le32(d, 22));
    const std::uint16_t bpp = read_le16(d, 28);
    const std::uint32_t compression = read_le32(d, 30);
    std::uint32_t palette_size = read_le32(d, 46);

    if (compression != 0) throw fail("compressed BMP is not supported");
    if (bpp != 8 && bpp != 24) throw fail("unsupported bit depth " + std::to_string(bpp));
    if (width <= 0 || raw_height == 0) throw fail("invalid dimensions");
    const bool top_down = raw_height < 0;
    const std::size_t w = static_cast<std::size_t>(width);
    const std::size_t h = static_cast<std::size_t>(top_down ? -static_cast<std::int64_t>(raw_height) : raw_height);

    std::vector<std::array<std::uint8_t, 3>> palette;
    if (bpp == 8) {
        if (palette_size == 0) palette_size = 256;
        if (palette_size > 256) throw fail("palette too large");
        const std::size_t palette_at = 14 + header_size;
        if (palette_at + 4 * palette_size > d.size()) throw fail("truncated palette");
        for (std::uint32_t i = 0; i < palette_size; ++i) {
            const std::size_t at = palette_at + 4 * i;
            palette.push_back({d[at + 2], d[at + 1], d[at]});
        }
    }

    const std::size_t stride = ((w * bpp + 31) / 32) * 4;
    if (pixel_offset + stride * h > d.size()) throw fail("truncated pixel data");

    RgbImage out(w, h);
    for (std::size_t row = 0; row < h; ++row) {
        const std::size_t y = top_down ? row : h - 1 - row;
        const std::size_t base = pixel_offset + row * stride;
        for (std::size_t x = 0; x < w; ++x) {
            if (bpp == 24) {
                const std::size_t at = base + 3 * x;
                out.set_pixel(x, y, {static_cast<double>(d[at + 2]), static_cast<double>(d[at + 1]),
                                     static_cast<double>(d[at])});
            } else {
                const std::uint8_t idx = d[base + x];
                if (idx >= palette.size()) throw fail("palette index out of range");
                const auto& c = palette[idx];
                out.set_pixel(x, y, {static_cast<double>(c[0]), static_cast<double>(c[1]), static_cast<double>(c[2])});
            }
        }
    }
    return out;
}

std::uint8_t sample_8bit(double v) { return static_cast<std::uint8_t>(to_8bit(v)); }

void write_png(const std::filesystem::path& path, std::uint32_t width, std::uint32_t height, bool color,
               const std::vector<std::uint8_t>& pixels) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = width;
    image.height = height;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, pixels.data(), 0, nullptr)) {
        const std::string message = image.message;
        png_image_free(&image);
        throw IoError("cannot write PNG " + path.string() + ": " + message);
    }
}

}  // namespace

void set_warning_sink(WarningSink sink) {
    std::lock_guard lock(g_sink_mutex);
    g_sink = std::move(sink);
}

RgbImage load_rgb(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> data = read_file(path);
    if (is_png(data)) return decode_png(data, path);
    if (is_bmp(data)) return decode_bmp(data, path);
    throw IoError("unsupported image format: " + path.string() + " (expected PNG or BMP)");
}

BitMatrix binarize_watermark(const RgbImage& image) {
    std::vector<std::uint8_t> bits(image.r.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        const double r = image.r[i], g = image.g[i], b = image.b[i];
        const double level = (r == g && g == b) ? r : to_ycbcr({r, g, b}).y;
        bits[i] = level >= 128.0 ? 1 : 0;
    }
    return BitMatrix::from_rows(image.width(), image.height(), std::move(bits));
}

BitMatrix load_watermark(const std::filesystem::path& path) {
    return binarize_watermark(load_rgb(path));
}

void save_rgb(const RgbImage& image, const std::filesystem::path& path) {
    std::vector<std::uint8_t> pixels(3 * image.r.size());
    for (std::size_t i = 0; i < image.r.size(); ++i) {
        pixels[3 * i] = sample_8bit(image.r[i]);
        pixels[3 * i + 1] = sample_8bit(image.g[i]);
        pixels[3 * i + 2] = sample_8bit(image.b[i]);
    }
    write_png(path, static_cast<std::uint32_t>(image.width()), static_cast<std::uint32_t>(image.height()), true,
              pixels);
}

void save_watermark(const BitMatrix& bits, const std::filesystem::path& path) {
    std::vector<std::uint8_t> pixels(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) pixels[i] = bits[i] ? 255 : 0;
    const auto side = static_cast<std::uint32_t>(bits.side());
    write_png(path, side, side, false, pixels);
}

}  // namespace wmark
