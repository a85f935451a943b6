#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wmark/attacks.hpp"
#include "wmark/codec.hpp"
#include "wmark/metrics.hpp"

namespace wmark {

struct HostEntry {
    std::string name;
    std::filesystem::path path;
};

// Line-oriented "key value" text, '#' starts a comment:
//
//   watermark mark.png
//   host baboon.png            # name defaults to the file stem
//   host f16.png F16
//   delta 1.0
//   arnold 10
//   select rowmajor            # or: random (needs seed)
//   seed 7
//   compress 3 5 7             # repeatable, appends thresholds
//   compress_levels 3
//   channels all               # or: y
//   crop 0,0,128,128 0         # x,y,w,h [fill]; repeatable
//   crop standard              # the three standard rectangles of each host
//   psnr_channels rgb          # or: y
//
// Relative paths resolve against `base_dir`.
struct ExperimentConfig {
    std::filesystem::path watermark;
    std::vector<HostEntry> hosts;
    EmbedParams embed;
    bool seed_given = false;
    std::vector<double> thresholds;
    int compress_levels = 3;
    AttackChannels channels = AttackChannels::all;
    std::vector<CropAttackSpec> crops;
    bool standard_crops = false;
    PsnrChannels psnr_channels = PsnrChannels::rgb;
};

ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// One (image, attack) cell. Numeric fields are empty when the cell failed.
struct ReportRow {
    std::string image;
    std::string attack;  // "none" for the unattacked watermarked image
    std::optional<double> psnr_db;
    std::optional<double> correlation;
    std::optional<double> nc;
    std::optional<double> error_bits_pct;
    std::string status = "ok";
};

struct ExperimentReport {
    std::vector<ReportRow> rows;

    // Header "image,attack,psnr_db,correlation,nc,error_bits_pct,status", then
    // one line per row; numbers use 4 decimals and an infinite PSNR prints "inf".
    std::string to_csv() const;
    std::string to_table() const;
};

// Rows follow config order: per host, "none" first, then each threshold, then
// each crop. PSNR and correlation compare the host with the image the watermark
// was extracted from.
ExperimentReport run_experiment(const ExperimentConfig& config, unsigned threads);

// WMARK_THREADS when set to a positive integer, else the hardware concurrency.
unsigned default_thread_count();

std::string format_fixed4(double value);

}  // namespace wmark
