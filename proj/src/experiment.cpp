#include "wmark/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "wmark/error.hpp"
#include "wmark/imageio.hpp"

namespace wmark {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = s.find(sep, start);
        out.emplace_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
        if (at == std::string_view::npos) break;
        start = at + 1;
    }
    return out;
}

std::vector<std::string> words_of(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

template <typename T>
T number(const std::string& word, const std::string& what, std::size_t line) {
    T value{};
    const auto [end, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc{} || end != word.data() + word.size()) {
        throw InvalidArgument("config line " + std::to_string(line) + ": bad " + what + " '" + word + "'");
    }
    return value;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1U), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        });
    }
}

std::string csv_field(const std::optional<double>& v) { return v ? format_fixed4(*v) : std::string(); }

std::string sanitize(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

struct EmbeddedHost {
    RgbImage host;
    EmbedResult result;
    std::string error;
};

struct Cell {
    std::size_t host;
    std::string attack;
    std::function<RgbImage(const RgbImage&)> apply;  // empty for the unattacked row
};

}  // namespace

std::string format_fixed4(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    // Avoid "-0.0000".
    if (std::string_view(buf) == "-0.0000") return "0.0000";
    return buf;
}

ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir) {
    ExperimentConfig cfg;
    std::size_t line_no = 0;
    const auto resolve = [&](const std::string& p) {
        const std::filesystem::path path(p);
        return path.is_absolute() ? path : base_dir / path;
    };
    for (const std::string& raw : split(text, '\n')) {
        ++line_no;
        const std::string line = raw.substr(0, raw.find('#'));
        const auto words = words_of(line);
        if (words.empty()) continue;
        const std::string& key = words[0];
        const auto need = [&](std::size_t lo, std::size_t hi) {
            if (words.size() - 1 < lo || words.size() - 1 > hi) {
                throw InvalidArgument("config line " + std::to_string(line_no) + ": wrong number of values for '" +
                                      key + "'");
            }
        };
        if (key == "watermark") {
            need(1, 1);
            cfg.watermark = resolve(words[1]);
        } else if (key == "host") {
            need(1, 2);
            const auto path = resolve(words[1]);
            cfg.hosts.push_back({words.size() > 2 ? words[2] : path.stem().string(), path});
        } else if (key == "delta") {
            need(1, 1);
            cfg.embed.quant_step = number<double>(words[1], "delta", line_no);
            if (!(cfg.embed.quant_step > 0.0)) throw InvalidArgument("config: delta must be positive");
        } else if (key == "arnold") {
            need(1, 1);
            cfg.embed.arnold_times = number<std::uint64_t>(words[1], "arnold", line_no);
        } else if (key == "select") {
            need(1, 1);
            if (words[1] == "rowmajor") {
                cfg.embed.selection = IndexSelection::row_major;
            } else if (words[1] == "random") {
                cfg.embed.selection = IndexSelection::random;
            } else {
                throw InvalidArgument("config line " + std::to_string(line_no) + ": select must be rowmajor or random");
            }
        } else if (key == "seed") {
            need(1, 1);
            cfg.embed.seed = number<std::uint64_t>(words[1], "seed", line_no);
            cfg.seed_given = true;
        } else if (key == "compress") {
            need(1, 64);
            for (std::size_t i = 1; i < words.size(); ++i) {
                const double t = number<double>(words[i], "threshold", line_no);
                if (!(t >= 0.0)) throw InvalidArgument("config: thresholds must be non-negative");
                cfg.thresholds.push_back(t);
            }
        } else if (key == "compress_levels") {
            need(1, 1);
            cfg.compress_levels = number<int>(words[1], "compress_levels", line_no);
        } else if (key == "channels") {
            need(1, 1);
            if (words[1] == "all") {
                cfg.channels = AttackChannels::all;
            } else if (words[1] == "y") {
                cfg.channels = AttackChannels::luma;
            } else {
                throw InvalidArgument("config line " + std::to_string(line_no) + ": channels must be y or all");
            }
        } else if (key == "crop") {
            need(1, 2);
            if (words[1] == "standard") {
                cfg.standard_crops = true;
                continue;
            }
            const auto parts = split(words[1], ',');
            if (parts.size() != 4) {
                throw InvalidArgument("config line " + std::to_string(line_no) + ": crop expects x,y,w,h");
            }
            CropAttackSpec spec{number<std::size_t>(parts[0], "crop x", line_no),
                                number<std::size_t>(parts[1], "crop y", line_no),
                                number<std::size_t>(parts[2], "crop width", line_no),
                                number<std::size_t>(parts[3], "crop height", line_no), 0};
            if (words.size() > 2) {
                const int fill = number<int>(words[2], "crop fill", line_no);
                if (fill < 0 || fill > 255) throw InvalidArgument("config: crop fill must be 0..255");
                spec.fill = static_cast<std::uint8_t>(fill);
            }
            cfg.crops.push_back(spec);
        } else if (key == "psnr_channels") {
            need(1, 1);
            if (words[1] == "rgb") {
                cfg.psnr_channels = PsnrChannels::rgb;
            } else if (words[1] == "y") {
                cfg.psnr_channels = PsnrChannels::luma;
            } else {
                throw InvalidArgument("config line " + std::to_string(line_no) + ": psnr_channels must be rgb or y");
            }
        } else {
            throw InvalidArgument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    if (cfg.watermark.empty()) throw InvalidArgument("config: missing 'watermark'");
    if (cfg.hosts.empty()) throw InvalidArgument("config: at least one 'host' is required");
    if (cfg.embed.selection == IndexSelection::random && !cfg.seed_given) {
        throw InvalidArgument("config: 'select random' requires an explicit 'seed'");
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_experiment_config(buf.str(), path.parent_path());
}

ExperimentReport run_experiment(const ExperimentConfig& config, unsigned threads) {
    const BitMatrix watermark = load_watermark(config.watermark);
    if (watermark.popcount() == 0) {
        throw InvalidArgument("watermark " + config.watermark.string() + " has no set bits; NC is undefined");
    }

    std::vector<EmbeddedHost> embedded(config.hosts.size());
    parallel_for(config.hosts.size(), threads, [&](std::size_t i) {
        try {
            embedded[i].host = round_to_8bit(load_rgb(config.hosts[i].path));
            embedded[i].result = embed(embedded[i].host, watermark, config.embed);
        } catch (const std::exception& e) {
            embedded[i].error = e.what();
        }
    });

    std::vector<Cell> cells;
    for (std::size_t h = 0; h < config.hosts.size(); ++h) {
        cells.push_back({h, "none", {}});
        for (double t : config.thresholds) {
            const CompressionAttackSpec spec{t, config.compress_levels, config.channels};
            cells.push_back({h, describe(spec), [spec](const RgbImage& img) { return wavelet_compress(img, spec); }});
        }
        std::vector<CropAttackSpec> crops = config.crops;
        if (config.standard_crops && embedded[h].error.empty()) {
            const auto standard = standard_crop_rects(embedded[h].host.width(), embedded[h].host.height());
            crops.insert(crops.end(), standard.begin(), standard.end());
        }
        for (const CropAttackSpec& spec : crops) {
            cells.push_back({h, describe(spec), [spec](const RgbImage& img) { return crop(img, spec); }});
        }
    }

    ExperimentReport report;
    report.rows.resize(cells.size());
    parallel_for(cells.size(), threads, [&](std::size_t i) {
        const Cell& cell = cells[i];
        ReportRow& row = report.rows[i];
        row.image = config.hosts[cell.host].name;
        row.attack = cell.attack;
        const EmbeddedHost& eh = embedded[cell.host];
        if (!eh.error.empty()) {
            row.status = "error: " + eh.error;
            return;
        }
        try {
            const RgbImage probe = cell.apply ? cell.apply(eh.result.watermarked) : eh.result.watermarked;
            const QualityReport quality = assess_quality(eh.host, probe, config.psnr_channels);
            const RobustnessReport robust = assess_robustness(watermark, extract(probe, eh.result.key));
            row.psnr_db = quality.psnr_db;
            row.correlation = quality.correlation;
            row.nc = robust.nc;
            row.error_bits_pct = robust.error_bits_pct;
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
        }
    });
    return report;
}

std::string ExperimentReport::to_csv() const {
    std::string out = "image,attack,psnr_db,correlation,nc,error_bits_pct,status\n";
    for (const ReportRow& r : rows) {
        out += sanitize(r.image) + ',' + sanitize(r.attack) + ',' + csv_field(r.psnr_db) + ',' +
               csv_field(r.correlation) + ',' + csv_field(r.nc) + ',' + csv_field(r.error_bits_pct) + ',' +
               sanitize(r.status) + '\n';
    }
    return out;
}

std::string ExperimentReport::to_table() const {
    const std::vector<std::string> header = {"Image", "Attack", "PSNR(dB)", "Corr", "NC", "Error Bits%", "Status"};
    std::vector<std::vector<std::string>> cells;
    for (const ReportRow& r : rows) {
        const auto f = [](const std::optional<double>& v) { return v ? format_fixed4(*v) : std::string("-"); };
        cells.push_back({r.image, r.attack, f(r.psnr_db), f(r.correlation), f(r.nc), f(r.error_bits_pct), r.status});
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
    }
    const auto render = [&](const std::vector<std::string>& row) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            const std::string pad(width[c] - row[c].size(), ' ');
            // Text columns left-aligned, numeric columns right-aligned.
            line += (c < 2 || c + 1 == row.size()) ? row[c] + pad : pad + row[c];
            if (c + 1 < row.size()) line += "  ";
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        return line + '\n';
    };
    std::string out = render(header);
    std::size_t total = 0;
    for (std::size_t w : width) total += w;
    out += std::string(total + 2 * (width.size() - 1), '-') + '\n';
    for (const auto& row : cells) out += render(row);
    return out;
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("WMARK_THREADS")) {
        unsigned value = 0;
        const std::string_view s(env);
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec == std::errc{} && end == s.data() + s.size() && value > 0) return value;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace wmark
