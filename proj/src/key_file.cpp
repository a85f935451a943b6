#include "wmark/key_file.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_set>
#include <vector>

namespace wmark {

namespace {

constexpr std::array<const char*, 6> kFields = {"arnold_times", "quant_step", "levels",
                                                "subband", "wm_side", "indices"};

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ') ++i;
        if (i > start) words.push_back(line.substr(start, i - start));
    }
    return words;
}

template <typename T>
std::optional<T> parse_number(std::string_view word) {
    T value{};
    const auto [end, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc{} || end != word.data() + word.size()) return std::nullopt;
    return value;
}

std::uint64_t parse_unsigned(std::string_view field, const std::vector<std::string_view>& words) {
    if (words.size() != 2) throw KeyFormatError(KeyErrorKind::bad_value, std::string(field), "expects one integer");
    const auto v = parse_number<std::uint64_t>(words[1]);
    if (!v) {
        throw KeyFormatError(KeyErrorKind::bad_value, std::string(field),
                             "'" + std::string(words[1]) + "' is not a non-negative integer");
    }
    return *v;
}

}  // namespace

const char* to_string(KeyErrorKind kind) {
    switch (kind) {
        case KeyErrorKind::empty_input: return "empty key";
        case KeyErrorKind::bad_magic: return "not a key file";
        case KeyErrorKind::unsupported_version: return "unsupported key version";
        case KeyErrorKind::unknown_field: return "unknown field";
        case KeyErrorKind::duplicate_field: return "duplicate field";
        case KeyErrorKind::missing_field: return "missing field";
        case KeyErrorKind::bad_value: return "bad value";
        case KeyErrorKind::index_count_mismatch: return "index count mismatch";
        case KeyErrorKind::duplicate_index: return "duplicate index";
        case KeyErrorKind::arnold_out_of_range: return "arnold_times out of range";
    }
    return "key error";
}

KeyFormatError::KeyFormatError(KeyErrorKind kind, std::string field, const std::string& detail)
    : InvalidArgument(std::string("key file: ") + to_string(kind) +
                      (field.empty() ? std::string() : " '" + field + "'") +
                      (detail.empty() ? std::string() : ": " + detail)),
      kind_(kind),
      field_(std::move(field)) {}

std::string format_decimal(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    std::string out(buf.data(), ec == std::errc{} ? end : buf.data());
    if (std::isfinite(value) && out.find_first_of(".e") == std::string::npos) out += ".0";
    return out;
}

WatermarkKey parse_key(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
        lines.push_back(text.substr(pos, end - pos));
        pos = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw KeyFormatError(KeyErrorKind::empty_input, "", "no content");

    const auto header = split_words(lines.front());
    if (header.size() != 2 || header[0] != "WMKEY") {
        throw KeyFormatError(KeyErrorKind::bad_magic, "", "first line must be 'WMKEY <version>'");
    }
    const auto version = parse_number<int>(header[1]);
    if (!version || *version != kKeyFormatVersion) {
        throw KeyFormatError(KeyErrorKind::unsupported_version, "",
                             "got '" + std::string(header[1]) + "', this build reads version " +
                                 std::to_string(kKeyFormatVersion));
    }

    std::map<std::string, std::vector<std::string_view>, std::less<>> fields;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto words = split_words(lines[i]);
        if (words.empty()) continue;
        const std::string name(words[0]);
        if (std::find(kFields.begin(), kFields.end(), name) == kFields.end()) {
            throw KeyFormatError(KeyErrorKind::unknown_field, name, "line " + std::to_string(i + 1));
        }
        if (!fields.emplace(name, words).second) {
            throw KeyFormatError(KeyErrorKind::duplicate_field, name, "line " + std::to_string(i + 1));
        }
    }
    for (const char* name : kFields) {
        if (!fields.contains(name)) throw KeyFormatError(KeyErrorKind::missing_field, name, "");
    }

    WatermarkKey key;
    key.arnold_times = parse_unsigned("arnold_times", fields.at("arnold_times"));

    const auto& step_words = fields.at("quant_step");
    std::optional<double> step;
    if (step_words.size() == 2) step = parse_number<double>(step_words[1]);
    if (!step || !std::isfinite(*step) || *step <= 0.0) {
        throw KeyFormatError(KeyErrorKind::bad_value, "quant_step", "expects one positive decimal");
    }
    key.quant_step = *step;

    const std::uint64_t levels = parse_unsigned("levels", fields.at("levels"));
    if (levels != static_cast<std::uint64_t>(kEmbedLevels)) {
        throw KeyFormatError(KeyErrorKind::bad_value, "levels", "only " + std::to_string(kEmbedLevels) + " is supported");
    }
    key.levels = kEmbedLevels;

    const auto& subband_words = fields.at("subband");
    if (subband_words.size() != 2 || subband_words[1] != kEmbedSubband) {
        throw KeyFormatError(KeyErrorKind::bad_value, "subband", std::string("only ") + kEmbedSubband + " is supported");
    }
    key.subband = kEmbedSubband;

    key.wm_side = parse_unsigned("wm_side", fields.at("wm_side"));
    if (key.wm_side == 0 || key.wm_side > 65535) {
        throw KeyFormatError(KeyErrorKind::bad_value, "wm_side", "must be between 1 and 65535");
    }

    const auto& index_words = fields.at("indices");
    const std::size_t expected = key.wm_side * key.wm_side;
    if (index_words.size() - 1 != expected) {
        throw KeyFormatError(KeyErrorKind::index_count_mismatch, "indices",
                             "expected " + std::to_string(expected) + ", got " +
                                 std::to_string(index_words.size() - 1));
    }
    key.indices.reserve(expected);
    std::unordered_set<std::size_t> seen;
    for (std::size_t i = 1; i < index_words.size(); ++i) {
        const auto v = parse_number<std::size_t>(index_words[i]);
        if (!v) {
            throw KeyFormatError(KeyErrorKind::bad_value, "indices",
                                 "'" + std::string(index_words[i]) + "' is not an index");
        }
        if (!seen.insert(*v).second) {
            throw KeyFormatError(KeyErrorKind::duplicate_index, "indices", std::to_string(*v) + " appears twice");
        }
        key.indices.push_back(*v);
    }

    const std::uint64_t period = arnold_period(key.wm_side);
    if (key.arnold_times >= period) {
        throw KeyFormatError(KeyErrorKind::arnold_out_of_range, "arnold_times",
                             std::to_string(key.arnold_times) + " is not below the period " +
                                 std::to_string(period));
    }
    return key;
}

std::string serialize_key(const WatermarkKey& key) {
    key.validate();
    std::ostringstream out;
    out << "WMKEY " << kKeyFormatVersion << '\n'
        << "arnold_times " << key.arnold_times << '\n'
        << "quant_step " << format_decimal(key.quant_step) << '\n'
        << "levels " << key.levels << '\n'
        << "subband " << key.subband << '\n'
        << "wm_side " << key.wm_side << '\n'
        << "indices";
    for (std::size_t idx : key.indices) out << ' ' << idx;
    out << '\n';
    return out.str();
}

WatermarkKey load_key(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open key file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read key file " + path.string());
    return parse_key(buf.str());
}

void save_key(const WatermarkKey& key, const std::filesystem::path& path) {
    const std::string text = serialize_key(key);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write key file " + path.string());
    out << text;
    out.flush();
    if (!out) throw IoError("cannot write key file " + path.string());
}

}  // namespace wmark
