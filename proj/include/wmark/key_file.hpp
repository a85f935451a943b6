#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "wmark/codec.hpp"
#include "wmark/error.hpp"

namespace wmark {

// Key files are UTF-8 text with LF line endings:
//
//   WMKEY 1
//   arnold_times <int>
//   quant_step <decimal>
//   levels 3
//   subband LL3
//   wm_side <int>
//   indices <int> <int> ...
//
// serialize_key writes the fields in this order; parse_key accepts any order
// but requires each field exactly once.

enum class KeyErrorKind {
    empty_input,
    bad_magic,
    unsupported_version,
    unknown_field,
    duplicate_field,
    missing_field,
    bad_value,
    index_count_mismatch,
    duplicate_index,
    arnold_out_of_range,
};

const char* to_string(KeyErrorKind kind);

class KeyFormatError : public InvalidArgument {
public:
    KeyFormatError(KeyErrorKind kind, std::string field, const std::string& detail);

    KeyErrorKind kind() const { return kind_; }
    const std::string& field() const { return field_; }

private:
    KeyErrorKind kind_;
    std::string field_;
};

inline constexpr int kKeyFormatVersion = 1;

WatermarkKey parse_key(std::string_view text);
std::string serialize_key(const WatermarkKey& key);

WatermarkKey load_key(const std::filesystem::path& path);
void save_key(const WatermarkKey& key, const std::filesystem::path& path);

// Shortest round-trip decimal, always with a fractional part or exponent ("1.0", "0.25").
std::string format_decimal(double value);

}  // namespace wmark
