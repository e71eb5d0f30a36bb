#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dualent/io.hpp"

using namespace dualent;

TEST_CASE("complex amplitude grammar") {
    CHECK(parse_complex("1") == cx{1.0, 0.0});
    CHECK(parse_complex("-0.5") == cx{-0.5, 0.0});
    CHECK(parse_complex("3e-2") == cx{0.03, 0.0});
    CHECK(parse_complex("2i") == cx{0.0, 2.0});
    CHECK(parse_complex("-0.5i") == cx{0.0, -0.5});
    CHECK(parse_complex("1+2i") == cx{1.0, 2.0});
    CHECK(parse_complex("1-2i") == cx{1.0, -2.0});
    CHECK(parse_complex("-0.3-0.4i") == cx{-0.3, -0.4});
    CHECK(parse_complex("1e-3+2e-4i") == cx{1e-3, 2e-4});
    CHECK(parse_complex(" 0.6+0.8i ") == cx{0.6, 0.8});
}

TEST_CASE("complex amplitude parse errors") {
    CHECK_THROWS_AS(parse_complex(""), ConfigError);
    CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
    CHECK_THROWS_AS(parse_complex("i"), ConfigError);
    CHECK_THROWS_AS(parse_complex("1+"), ConfigError);
    CHECK_THROWS_AS(parse_complex("1+i"), ConfigError);
    CHECK_THROWS_AS(parse_complex("1 2"), ConfigError);
    CHECK_THROWS_AS(parse_complex("0x10"), ConfigError);
}

TEST_CASE("format_complex round trips through the grammar") {
    for (cx z : {cx{0.6, 0.8}, cx{1.0, 0.0}, cx{0.0, -0.25}, cx{-0.125, 0.5}}) {
        CHECK(parse_complex(format_complex(z)) == z);
    }
}

TEST_CASE("format_double is shortest round trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    const double smax = 2.8284271247461903;
    CHECK(std::stod(format_double(smax)) == smax);
}

TEST_CASE("manifest comment and sweep csv layout") {
    RunManifest m;
    m.subcommand = "identicity-sweep";
    m.seed = 42;
    m.add("v", std::string("0:1:0.5"));
    const std::string csv = sweep_csv(m, {"v", "sMax"}, {{0.0, 2.0}, {0.5, 2.236}, {1.0, 2.828}});
    CHECK(csv ==
          "# subcommand = identicity-sweep\n"
          "# toolVersion = 0.1.0\n"
          "# seed = 42\n"
          "# v = 0:1:0.5\n"
          "v,sMax\n"
          "0,2\n"
          "0.5,2.236\n"
          "1,2.828\n");
}

TEST_CASE("experiment result json carries manifest, counts and estimates") {
    RunManifest m;
    m.subcommand = "simulate";
    m.seed = 7;
    m.add("pairs", std::uint64_t{100});

    ExperimentResult r;
    r.counts[0] = CoincidenceCounts{40, 10, 10, 40};
    r.e_hat = {0.6, 0.0, 0.0, 0.0};
    r.e_std_err = {0.08, 0.1, 0.1, 0.1};
    r.s_hat = 0.6;
    r.s_std_err = 0.19;

    ChshSettings settings;
    const ordered_json j = experiment_result_json(m, settings, r);
    CHECK(j["manifest"]["subcommand"] == "simulate");
    CHECK(j["manifest"]["seed"] == 7);
    CHECK(j["manifest"]["parameters"]["pairs"] == "100");
    CHECK(j["counts"]["ab"]["nPP"] == 40);
    CHECK(j["counts"]["ab"]["nMM"] == 40);
    CHECK(j["eHat"][0] == 0.6);
    CHECK(j["sHat"] == 0.6);
    CHECK(j.begin().key() == "manifest");  // manifest leads the file
}

TEST_CASE("config file parsing") {
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "dualent_io_test.cfg";
    {
        std::ofstream f(path);
        f << "# comment line\n"
          << "alpha = 0.6\n"
          << "beta=0.8i  # trailing comment\n"
          << "\n"
          << "pairs = 1000\n";
    }
    const auto entries = parse_config_file(path);
    REQUIRE(entries.size() == 3);
    CHECK(entries[0] == std::pair<std::string, std::string>{"alpha", "0.6"});
    CHECK(entries[1] == std::pair<std::string, std::string>{"beta", "0.8i"});
    CHECK(entries[2] == std::pair<std::string, std::string>{"pairs", "1000"});
    std::filesystem::remove(path);

    CHECK_THROWS_AS(parse_config_file("/nonexistent/dualent.cfg"), ConfigError);

    const std::filesystem::path bad =
        std::filesystem::temp_directory_path() / "dualent_io_bad.cfg";
    {
        std::ofstream f(bad);
        f << "no equals sign here\n";
    }
    CHECK_THROWS_AS(parse_config_file(bad), ConfigError);
    std::filesystem::remove(bad);
}
