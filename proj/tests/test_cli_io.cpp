#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "breather/config.hpp"
#include "breather/csv.hpp"
#include "breather/experiment.hpp"

using namespace breather;
namespace fs = std::filesystem;

namespace {

const char* kMinimalConfig = R"({
  "model": "nonreciprocal",
  "n_cells": 100,
  "kappa": 1.4142135623730951,
  "nu": 1.0,
  "gamma0": 0.0,
  "gammas": 1.3228756555322953,
  "i_in": 1000.0
})";

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("minimal config gets the documented defaults") {
    const auto cfg = parse_config(kMinimalConfig);
    CHECK(cfg.model == ModelKind::nonreciprocal);
    CHECK(cfg.params.n_cells == 100);
    CHECK(cfg.params.i_sat == 1.0);
    CHECK(cfg.dt == doctest::Approx(1e-3).epsilon(1e-15));
    CHECK(cfg.t_final == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(cfg.window_start == doctest::Approx(50.0).epsilon(1e-15));
    CHECK(cfg.window_end == doctest::Approx(100.0).epsilon(1e-15));
    // stride sized for ~2000 stored samples
    CHECK(cfg.stride == 50);
    CHECK(!cfg.sweep.has_value());
}

TEST_CASE("defaults scale with nu") {
    std::string text = kMinimalConfig;
    text.replace(text.find("\"nu\": 1.0"), 9, "\"nu\": 2.0");
    text.replace(text.find("\"kappa\": 1.4142135623730951"), 27, "\"kappa\": 2.9");
    const auto cfg = parse_config(text);
    CHECK(cfg.dt == doctest::Approx(5e-4).epsilon(1e-15));
    CHECK(cfg.t_final == doctest::Approx(50.0).epsilon(1e-15));
    CHECK(cfg.window_start == doctest::Approx(25.0).epsilon(1e-15));
}

TEST_CASE("config rejection paths") {
    CHECK_THROWS_WITH_AS(parse_config("{"), doctest::Contains("malformed JSON"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"model": "nonreciprocal"})"),
                         doctest::Contains("missing required key"), ConfigError);

    std::string unknown = kMinimalConfig;
    unknown.insert(unknown.rfind('}'), R"(, "typo_key": 1)");
    CHECK_THROWS_WITH_AS(parse_config(unknown), doctest::Contains("unknown key: typo_key"),
                         ConfigError);

    std::string bad_gamma = kMinimalConfig;
    bad_gamma.replace(bad_gamma.find("\"gamma0\": 0.0"), 13, "\"gamma0\": 1.4");
    CHECK_THROWS_WITH_AS(parse_config(bad_gamma), doctest::Contains("gamma0"), ConfigError);

    std::string bad_sweep = kMinimalConfig;
    bad_sweep.insert(bad_sweep.rfind('}'),
                     R"(, "sweep": {"parameter": "nonsense", "min": 1, "max": 2, "count": 3})");
    CHECK_THROWS_WITH_AS(parse_config(bad_sweep), doctest::Contains("sweep.parameter"),
                         ConfigError);

    std::string bad_count = kMinimalConfig;
    bad_count.insert(bad_count.rfind('}'),
                     R"(, "sweep": {"parameter": "i_in", "min": 1, "max": 2, "count": 1})");
    CHECK_THROWS_WITH_AS(parse_config(bad_count), doctest::Contains("sweep.count"), ConfigError);

    std::string nested_unknown = kMinimalConfig;
    nested_unknown.insert(
        nested_unknown.rfind('}'),
        R"(, "sweep": {"parameter": "i_in", "min": 1, "max": 2, "count": 3, "stepz": 1})");
    CHECK_THROWS_WITH_AS(parse_config(nested_unknown),
                         doctest::Contains("unknown key: sweep.stepz"), ConfigError);

    std::string bad_output = kMinimalConfig;
    bad_output.insert(bad_output.rfind('}'), R"(, "outputs": ["trajectory", "movie"])");
    CHECK_THROWS_WITH_AS(parse_config(bad_output), doctest::Contains("unknown output kind"),
                         ConfigError);
}

TEST_CASE("serialize / parse round trip") {
    auto cfg = parse_config(kMinimalConfig);
    cfg.name = "roundtrip";
    cfg.sweep = SweepSpec{"i_in", 10.0, 1e4, 11, true};
    cfg.outputs = {"trajectory", "period"};
    cfg.profile = {1.25, 0.5};
    cfg.store_amplitudes = true;

    const auto parsed = parse_config(serialize_config(cfg));
    CHECK(parsed.name == cfg.name);
    CHECK(parsed.model == cfg.model);
    CHECK(parsed.params.n_cells == cfg.params.n_cells);
    CHECK(parsed.params.kappa == cfg.params.kappa);
    CHECK(parsed.params.gammas == cfg.params.gammas);
    CHECK(parsed.i_in == cfg.i_in);
    CHECK(parsed.t_final == cfg.t_final);
    CHECK(parsed.dt == cfg.dt);
    CHECK(parsed.stride == cfg.stride);
    CHECK(parsed.window_start == cfg.window_start);
    CHECK(parsed.window_end == cfg.window_end);
    REQUIRE(parsed.sweep.has_value());
    CHECK(parsed.sweep->parameter == cfg.sweep->parameter);
    CHECK(parsed.sweep->min == cfg.sweep->min);
    CHECK(parsed.sweep->max == cfg.sweep->max);
    CHECK(parsed.sweep->count == cfg.sweep->count);
    CHECK(parsed.sweep->log_spacing == cfg.sweep->log_spacing);
    CHECK(parsed.outputs == cfg.outputs);
    CHECK(parsed.profile == cfg.profile);
    CHECK(parsed.store_amplitudes == cfg.store_amplitudes);
}

TEST_CASE("csv format") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    CHECK(format_double(1e22) == "1e+22");
    // shortest round-trip representation re-parses exactly
    for (double v : {0.1, 2.0 / 3.0, 1.3228756555322953, 1e-300, -42.25}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }

    CsvWriter csv({"a", "b"});
    csv.add_row({"1", "plain"});
    csv.add_row({CsvWriter::field(std::optional<double>{}), "quo\"te"});
    const std::string body = csv.str();
    CHECK(body == "a,b\r\n1,plain\r\n,\"quo\"\"te\"\r\n");
    CHECK_THROWS_AS(csv.add_row({"only-one"}), std::invalid_argument);
}

TEST_CASE("run_experiment emits the declared artifacts deterministically") {
    auto cfg = parse_config(kMinimalConfig);
    cfg.name = "iotest";
    cfg.params.n_cells = 16;
    cfg.t_final = 8.0;
    cfg.dt = 2e-3;
    cfg.window_start = 2.0;
    cfg.window_end = 8.0;
    cfg.stride = 10;
    cfg.outputs = {"trajectory", "averages", "period", "heatmap", "spectrum", "defect"};

    const auto dir_a = fresh_dir("breather-io-a");
    const auto dir_b = fresh_dir("breather-io-b");
    const auto rec_a = run_experiment(cfg, {dir_a.string(), 1});
    const auto rec_b = run_experiment(cfg, {dir_b.string(), 1});

    CHECK(rec_a.output_files.size() == 9);  // 6 csv + 3 svg
    for (const auto& f : rec_a.output_files) CHECK(fs::exists(f));

    for (const auto& f : rec_a.output_files) {
        const auto name = fs::path(f).filename().string();
        CHECK(slurp((dir_a / name).string()) == slurp((dir_b / name).string()));
    }

    const std::string traj_csv = slurp((dir_a / "iotest-trajectory.csv").string());
    CHECK(traj_csv.substr(0, 8) == "t,I_1,I_");
    CHECK(traj_csv.find("\r\n") != std::string::npos);
}

TEST_CASE("sweep rows are independent of worker count") {
    auto cfg = parse_config(kMinimalConfig);
    cfg.name = "sweeptest";
    cfg.params.n_cells = 12;
    cfg.t_final = 6.0;
    cfg.dt = 2e-3;
    cfg.window_start = 2.0;
    cfg.window_end = 6.0;
    cfg.stride = 10;
    cfg.sweep = SweepSpec{"i_in", 10.0, 1000.0, 5, true};

    const auto serial = run_sweep(cfg, 1);
    const auto threaded = run_sweep(cfg, 4);
    REQUIRE(serial.size() == threaded.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].value == threaded[i].value);
        CHECK(serial[i].i_bar1_over_ibar == threaded[i].i_bar1_over_ibar);
        CHECK(serial[i].gamma_bar_2 == threaded[i].gamma_bar_2);
        CHECK(serial[i].period.has_value() == threaded[i].period.has_value());
        if (serial[i].period) CHECK(*serial[i].period == *threaded[i].period);
    }

    // grid values are pinned by index
    CHECK(cfg.sweep->value_at(0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(cfg.sweep->value_at(4) == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(cfg.sweep->value_at(2) == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("the creutz model reports lattice-picture intensities") {
    auto cfg = parse_config(kMinimalConfig);
    cfg.params.n_cells = 20;
    cfg.t_final = 5.0;
    cfg.dt = 1e-3;
    cfg.stride = 100;

    cfg.model = ModelKind::nonreciprocal;
    const auto lattice = run_trajectory(cfg);
    cfg.model = ModelKind::creutz;
    const auto ladder = run_trajectory(cfg);

    REQUIRE(lattice.n_samples() == ladder.n_samples());
    for (std::size_t k = 0; k < lattice.n_samples(); ++k) {
        const auto a = cell_intensities(lattice.states[k]);
        const auto b = cell_intensities(ladder.states[k]);
        for (std::size_t c = 0; c < a.size(); ++c)
            CHECK(std::abs(a[c] - b[c]) < 1e-9 * cfg.i_in);
    }
}

TEST_CASE("worker resolution prefers explicit, then environment") {
    CHECK(resolve_workers(3) == 3);
    setenv("BREATHER_LAB_WORKERS", "7", 1);
    CHECK(resolve_workers(0) == 7);
    CHECK(resolve_workers(2) == 2);
    unsetenv("BREATHER_LAB_WORKERS");
    CHECK(resolve_workers(0) >= 1);
}
