#include <doctest.h>

#include <cstdlib>

#include "test_support.hpp"
#include "wmark/error.hpp"
#include "wmark/experiment.hpp"
#include "wmark/imageio.hpp"

using namespace wmark;

namespace {

// Small hosts keep the grid fast.
std::filesystem::path write_fixture(const std::filesystem::path& dir) {
    std::mt19937_64 rng(71);
    save_rgb(test::smooth_rgb(128, 128, rng), dir / "a.png");
    save_rgb(test::smooth_rgb(128, 128, rng), dir / "b.png");
    save_watermark(test::random_bits(16, rng), dir / "w.png");
    return dir;
}

}  // namespace

TEST_CASE("config parsing") {
    const auto cfg = parse_experiment_config(
        "# comment\nwatermark w.png\nhost a.png\nhost /abs/b.png Bee\ndelta 2.0\narnold 3\n"
        "select random\nseed 9\ncompress 3 5\ncompress 7\ncompress_levels 2\nchannels y\n"
        "crop 1,2,3,4 200\ncrop standard\npsnr_channels y\n",
        "/base");
    CHECK(cfg.watermark == "/base/w.png");
    REQUIRE(cfg.hosts.size() == 2);
    CHECK(cfg.hosts[0].name == "a");
    CHECK(cfg.hosts[0].path == "/base/a.png");
    CHECK(cfg.hosts[1].name == "Bee");
    CHECK(cfg.hosts[1].path == "/abs/b.png");
    CHECK(cfg.embed.quant_step == 2.0);
    CHECK(cfg.embed.arnold_times == 3);
    CHECK(cfg.embed.selection == IndexSelection::random);
    CHECK(cfg.embed.seed == 9);
    CHECK(cfg.thresholds == std::vector<double>{3, 5, 7});
    CHECK(cfg.compress_levels == 2);
    CHECK(cfg.channels == AttackChannels::luma);
    REQUIRE(cfg.crops.size() == 1);
    CHECK(cfg.crops[0].fill == 200);
    CHECK(cfg.crops[0].height == 4);
    CHECK(cfg.standard_crops);
    CHECK(cfg.psnr_channels == PsnrChannels::luma);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_experiment_config("host a.png\n", "."), InvalidArgument);
    CHECK_THROWS_AS(parse_experiment_config("watermark w.png\n", "."), InvalidArgument);
    CHECK_THROWS_AS(parse_experiment_config("watermark w.png\nhost a.png\nflavour x\n", "."), InvalidArgument);
    CHECK_THROWS_AS(parse_experiment_config("watermark w.png\nhost a.png\ndelta nope\n", "."), InvalidArgument);
    CHECK_THROWS_AS(parse_experiment_config("watermark w.png\nhost a.png\ncrop 1,2,3\n", "."), InvalidArgument);
    CHECK_THROWS_AS(parse_experiment_config("watermark w.png\nhost a.png\nselect random\n", "."), InvalidArgument);
    CHECK_THROWS_AS(load_experiment_config("/nonexistent/x.cfg"), IoError);
}

TEST_CASE("grid rows follow config order and failures stay in their row") {
    const auto dir = write_fixture(test::scratch_dir("exp"));
    const auto cfg = parse_experiment_config(
        "watermark w.png\nhost a.png\nhost missing.png\nhost b.png\ncompress 3 7\ncrop 0,0,64,64\ncrop 100,100,64,64\n",
        dir);
    const ExperimentReport report = run_experiment(cfg, 4);
    REQUIRE(report.rows.size() == 3 * 5);
    CHECK(report.rows[0].image == "a");
    CHECK(report.rows[0].attack == "none");
    CHECK(report.rows[0].nc == 1.0);
    CHECK(report.rows[1].attack == "compress:3.0000");
    CHECK(report.rows[2].attack == "compress:7.0000");
    CHECK(report.rows[3].attack == "crop:0:0:64:64:fill0");
    CHECK(report.rows[4].status.starts_with("error:"));  // rectangle leaves the 128x128 host
    CHECK_FALSE(report.rows[4].nc.has_value());
    for (std::size_t i = 5; i < 10; ++i) {
        CHECK(report.rows[i].image == "missing");
        CHECK(report.rows[i].status.starts_with("error:"));
    }
    CHECK(report.rows[10].image == "b");
    CHECK(report.rows[10].status == "ok");

    const std::string csv = report.to_csv();
    CHECK(csv.starts_with("image,attack,psnr_db,correlation,nc,error_bits_pct,status\n"));
    CHECK(csv.find("\na,none,") != std::string::npos);
    CHECK(csv.find(",1.0000,0.0000,ok\n") != std::string::npos);
    CHECK(report.to_table().find("Error Bits%") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("empty attack grid and determinism across thread counts") {
    const auto dir = write_fixture(test::scratch_dir("exp"));
    const auto plain = parse_experiment_config("watermark w.png\nhost a.png\nhost b.png\n", dir);
    const ExperimentReport imperceptibility = run_experiment(plain, 1);
    REQUIRE(imperceptibility.rows.size() == 2);
    for (const ReportRow& r : imperceptibility.rows) CHECK(r.attack == "none");

    const auto grid = parse_experiment_config(
        "watermark w.png\nhost a.png\nhost b.png\ncompress 3 5 7\ncrop standard\n", dir);
    const std::string one = run_experiment(grid, 1).to_csv();
    CHECK(run_experiment(grid, 8).to_csv() == one);
    CHECK(run_experiment(grid, 3).to_csv() == one);
    std::filesystem::remove_all(dir);
}

TEST_CASE("number formatting and thread count") {
    CHECK(format_fixed4(1.0) == "1.0000");
    CHECK(format_fixed4(0.99995) == "1.0000");
    CHECK(format_fixed4(-0.00001) == "0.0000");
    CHECK(format_fixed4(kInfinitePsnr) == "inf");
    ::setenv("WMARK_THREADS", "3", 1);
    CHECK(default_thread_count() == 3);
    ::setenv("WMARK_THREADS", "zero", 1);
    CHECK(default_thread_count() >= 1);
    ::unsetenv("WMARK_THREADS");
}
