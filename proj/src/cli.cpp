#include "wmark/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "wmark/arnold.hpp"
#include "wmark/attacks.hpp"
#include "wmark/codec.hpp"
#include "wmark/error.hpp"
#include "wmark/experiment.hpp"
#include "wmark/imageio.hpp"
#include "wmark/key_file.hpp"
#include "wmark/metrics.hpp"

namespace wmark {

namespace {

// Thrown for flag combinations CLI11 cannot express; maps to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void print_value(std::ostream& out, const char* name, double value) {
    out << name << ' ' << format_fixed4(value) << '\n';
}

struct EmbedArgs {
    std::string host, watermark, out, key;
    double delta = 1.0;
    std::uint64_t arnold = 10;
    std::string select = "rowmajor";
    std::optional<std::uint64_t> seed;
};

int cmd_embed(const EmbedArgs& a, std::ostream& out) {
    EmbedParams params;
    params.quant_step = a.delta;
    params.arnold_times = a.arnold;
    if (a.select == "random") {
        if (!a.seed) throw UsageError("--select random requires an explicit --seed");
        params.selection = IndexSelection::random;
        params.seed = *a.seed;
    }
    const RgbImage host = round_to_8bit(load_rgb(a.host));
    const BitMatrix wm = load_watermark(a.watermark);
    const EmbedResult result = embed(host, wm, params);
    save_rgb(result.watermarked, a.out);
    save_key(result.key, a.key);
    const QualityReport q = assess_quality(host, result.watermarked);
    print_value(out, "psnr_db", q.psnr_db);
    print_value(out, "correlation", q.correlation);
    return kExitOk;
}

int cmd_extract(const std::string& image, const std::string& key_path, const std::string& out_path) {
    const WatermarkKey key = load_key(key_path);
    save_watermark(extract(load_rgb(image), key), out_path);
    return kExitOk;
}

struct AttackArgs {
    std::string in, out;
    std::optional<double> compress;
    std::string crop;
    int fill = 0;
    std::string channels = "all";
    int levels = 3;
};

CropAttackSpec parse_rect(const std::string& text) {
    std::vector<std::size_t> v;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        const std::string part = text.substr(start, comma - start);
        std::size_t used = 0;
        unsigned long long n = 0;
        try {
            if (part.empty() || part[0] == '-') throw std::invalid_argument(part);
            n = std::stoull(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != part.size()) throw UsageError("--crop expects x,y,w,h with non-negative integers");
        v.push_back(n);
        start = comma + 1;
    }
    if (v.size() != 4) throw UsageError("--crop expects x,y,w,h");
    return {v[0], v[1], v[2], v[3], 0};
}

int cmd_attack(const AttackArgs& a) {
    if (a.compress.has_value() == !a.crop.empty()) {
        throw UsageError("exactly one of --compress or --crop is required");
    }
    const RgbImage image = load_rgb(a.in);
    RgbImage attacked;
    if (a.compress) {
        CompressionAttackSpec spec{*a.compress, a.levels,
                                   a.channels == "y" ? AttackChannels::luma : AttackChannels::all};
        attacked = wavelet_compress(image, spec);
    } else {
        CropAttackSpec spec = parse_rect(a.crop);
        spec.fill = static_cast<std::uint8_t>(a.fill);
        attacked = crop(image, spec);
    }
    save_rgb(attacked, a.out);
    return kExitOk;
}

struct EvaluateArgs {
    std::string original, extracted;
    std::string host, watermarked;
    std::string psnr_channels = "rgb";
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
    if (a.host.empty() != a.watermarked.empty()) {
        throw UsageError("--host and --watermarked must be given together");
    }
    const RobustnessReport r = assess_robustness(load_watermark(a.original), load_watermark(a.extracted));
    print_value(out, "nc", r.nc);
    print_value(out, "error_bits_pct", r.error_bits_pct);
    if (!a.host.empty()) {
        const QualityReport q =
            assess_quality(load_rgb(a.host), load_rgb(a.watermarked),
                           a.psnr_channels == "y" ? PsnrChannels::luma : PsnrChannels::rgb);
        print_value(out, "psnr_db", q.psnr_db);
        print_value(out, "correlation", q.correlation);
    }
    return kExitOk;
}

int cmd_experiment(const std::string& config_path, const std::string& csv_path, unsigned threads,
                   std::ostream& out) {
    const ExperimentConfig config = load_experiment_config(config_path);
    const ExperimentReport report = run_experiment(config, threads == 0 ? default_thread_count() : threads);
    out << report.to_table();
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path, std::ios::binary);
        if (!csv) throw IoError("cannot write " + csv_path);
        csv << report.to_csv();
        if (!csv.flush()) throw IoError("write failed for " + csv_path);
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Blind DWT watermarking of color images", args.empty() ? "wmark" : args[0]};
    app.require_subcommand(1);

    EmbedArgs embed_args;
    auto* embed_cmd = app.add_subcommand("embed", "Embed a binary watermark into a host image");
    embed_cmd->add_option("host", embed_args.host, "Host image (PNG or BMP)")->required();
    embed_cmd->add_option("watermark", embed_args.watermark, "Square watermark image")->required();
    embed_cmd->add_option("out", embed_args.out, "Watermarked PNG to write")->required();
    embed_cmd->add_option("key", embed_args.key, "Key file to write")->required();
    embed_cmd->add_option("--delta", embed_args.delta, "Quantization step")->capture_default_str()
        ->check(CLI::PositiveNumber);
    embed_cmd->add_option("--arnold", embed_args.arnold, "Arnold iterations")->capture_default_str();
    embed_cmd->add_option("--select", embed_args.select, "Coefficient selection")
        ->capture_default_str()
        ->check(CLI::IsMember({"rowmajor", "random"}));
    embed_cmd->add_option("--seed", embed_args.seed, "Seed for --select random");

    std::string ex_image, ex_key, ex_out;
    auto* extract_cmd = app.add_subcommand("extract", "Recover the watermark using only the image and key");
    extract_cmd->add_option("image", ex_image, "Watermarked (possibly attacked) image")->required();
    extract_cmd->add_option("key", ex_key, "Key file")->required();
    extract_cmd->add_option("out", ex_out, "Extracted watermark PNG to write")->required();

    AttackArgs attack_args;
    auto* attack_cmd = app.add_subcommand("attack", "Apply a compression or cropping attack");
    attack_cmd->add_option("in", attack_args.in, "Input image")->required();
    attack_cmd->add_option("out", attack_args.out, "Attacked PNG to write")->required();
    attack_cmd->add_option("--compress", attack_args.compress, "Hard threshold for detail coefficients")
        ->check(CLI::NonNegativeNumber);
    attack_cmd->add_option("--crop", attack_args.crop, "Rectangle x,y,w,h to blank out");
    attack_cmd->add_option("--fill", attack_args.fill, "Fill value for --crop")->capture_default_str()
        ->check(CLI::Range(0, 255));
    attack_cmd->add_option("--channels", attack_args.channels, "Channels thresholded by --compress")
        ->capture_default_str()
        ->check(CLI::IsMember({"y", "all"}));
    attack_cmd->add_option("--levels", attack_args.levels, "Decomposition levels for --compress")
        ->capture_default_str()
        ->check(CLI::Range(1, 16));

    EvaluateArgs eval_args;
    auto* eval_cmd = app.add_subcommand("evaluate", "Compare watermarks and optionally images");
    eval_cmd->add_option("original", eval_args.original, "Reference watermark")->required();
    eval_cmd->add_option("extracted", eval_args.extracted, "Extracted watermark")->required();
    eval_cmd->add_option("--host", eval_args.host, "Host image");
    eval_cmd->add_option("--watermarked", eval_args.watermarked, "Watermarked image");
    eval_cmd->add_option("--psnr-channels", eval_args.psnr_channels, "Samples pooled for PSNR")
        ->capture_default_str()
        ->check(CLI::IsMember({"rgb", "y"}));

    std::string config_path, csv_path;
    unsigned threads = 0;
    auto* exp_cmd = app.add_subcommand("experiment", "Run an embed/attack/extract grid from a config file");
    exp_cmd->add_option("config", config_path, "Experiment config")->required();
    exp_cmd->add_option("--csv", csv_path, "Write the machine-readable report here");
    exp_cmd->add_option("--threads", threads, "Worker threads (default: WMARK_THREADS or all cores)");

    long long period_n = 0;
    auto* period_cmd = app.add_subcommand("arnold-period", "Print the Arnold map period for an n x n grid");
    period_cmd->add_option("n", period_n, "Grid side")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();

    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (embed_cmd->parsed()) return cmd_embed(embed_args, out);
        if (extract_cmd->parsed()) return cmd_extract(ex_image, ex_key, ex_out);
        if (attack_cmd->parsed()) return cmd_attack(attack_args);
        if (eval_cmd->parsed()) return cmd_evaluate(eval_args, out);
        if (exp_cmd->parsed()) return cmd_experiment(config_path, csv_path, threads, out);
        if (period_cmd->parsed()) {
            if (period_n < 1) throw InvalidArgument("arnold-period: n must be >= 1");
            out << arnold_period(static_cast<std::size_t>(period_n)) << '\n';
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace wmark
