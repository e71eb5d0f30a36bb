// End-to-end checks of the dualent binary: exit codes, stdout wording, file
// outputs and their reproducibility. The binary path arrives in DUALENT_CLI.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
    const char* p = std::getenv("DUALENT_CLI");
    REQUIRE_MESSAGE(p != nullptr, "DUALENT_CLI must point at the dualent binary");
    return p;
}

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = {}) {
    const std::string cmd = env_prefix + cli_path() + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE_MESSAGE(f.good(), "missing file " << p.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("dualent_cli_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("dual reports the maximally entangled photon pair") {
    const RunResult r = run_cli("dual --alpha 0.7071 --beta 0.7071 --stat boson");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("concurrence: original 1.0000, dual 1.0000") != std::string::npos);
    CHECK(r.output.find("factorizable: true") != std::string::npos);
    CHECK(r.output.find("label polarization(H, V)") != std::string::npos);  // dual line
}

TEST_CASE("dual flags a product state") {
    const RunResult r = run_cli("dual --alpha 1 --beta 0");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("concurrence: original 0.0000, dual 0.0000") != std::string::npos);
    CHECK(r.output.find("factorizable: false") != std::string::npos);
}

TEST_CASE("dual handles the fermionic sign") {
    const RunResult r = run_cli("dual --alpha 0.6 --beta 0.8 --stat fermion");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("dual:        alpha = 0.6, beta = -0.8") != std::string::npos);
    CHECK(r.output.find("concurrence: original 0.9600, dual 0.9600") != std::string::npos);
}

TEST_CASE("dual exit codes distinguish parse and domain errors") {
    CHECK(run_cli("dual --alpha bogus --beta 1").exit_code == 2);
    CHECK(run_cli("dual --alpha 0 --beta 0").exit_code == 3);
    CHECK(run_cli("dual --beta 1").exit_code == 2);  // missing required flag
}

TEST_CASE("chsh optimizes the maximal state to the quantum bound") {
    TempDir tmp;
    const RunResult r =
        run_cli("--out-dir " + tmp.str() + " chsh --state maximal --optimize");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("sMax = 2.8284") != std::string::npos);
    CHECK(fs::exists(tmp.path / "chsh.csv"));
    CHECK(fs::exists(tmp.path / "chsh.json"));
    const std::string csv = slurp(tmp.path / "chsh.csv");
    CHECK(csv.rfind("# subcommand = chsh", 0) == 0);
    CHECK(csv.find("2.8284271247") != std::string::npos);
}

TEST_CASE("chsh evaluates explicit settings") {
    TempDir tmp;
    const RunResult r = run_cli(
        "--out-dir " + tmp.str() +
        " chsh --a 1.5707963267948966,0.7853981633974483"
        " --a-prime 1.5707963267948966,5.497787143782138"
        " --b 1.5707963267948966,0 --b-prime 1.5707963267948966,1.5707963267948966");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("S = 2.8284") != std::string::npos);
}

TEST_CASE("chsh with a degraded overlap lowers the optimum") {
    TempDir tmp;
    const RunResult r =
        run_cli("--out-dir " + tmp.str() + " chsh --state maximal --overlap 0.5 --optimize");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("sMax = 2.2361") != std::string::npos);
}

TEST_CASE("simulate writes result.json and counts.csv with a leading manifest") {
    TempDir tmp;
    const RunResult r =
        run_cli("--seed 7 --out-dir " + tmp.str() + " simulate --pairs 5000");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("sHat = ") != std::string::npos);

    const std::string json_text = slurp(tmp.path / "result.json");
    const auto j = nlohmann::ordered_json::parse(json_text);
    CHECK(j.begin().key() == "manifest");
    CHECK(j["manifest"]["subcommand"] == "simulate");
    CHECK(j["manifest"]["seed"] == 7);
    CHECK(j["sHat"].get<double>() > 2.0);
    std::uint64_t total = 0;
    for (const auto& [name, counts] : j["counts"].items()) {
        (void)name;
        total += counts["nPP"].get<std::uint64_t>() + counts["nPM"].get<std::uint64_t>() +
                 counts["nMP"].get<std::uint64_t>() + counts["nMM"].get<std::uint64_t>();
    }
    CHECK(total == 4 * 5000);

    const std::string csv = slurp(tmp.path / "counts.csv");
    CHECK(csv.rfind("# subcommand = simulate", 0) == 0);
    CHECK(csv.find("settingPair,nPP,nPM,nMP,nMM,eHat,stdErr\n") != std::string::npos);
    CHECK(csv.find("\nab,") != std::string::npos);
    CHECK(csv.find("\naPrimeBPrime,") != std::string::npos);
}

TEST_CASE("simulate reproduces files byte for byte") {
    TempDir first, second;
    CHECK(run_cli("--seed 11 --out-dir " + first.str() + " simulate --pairs 3000").exit_code == 0);
    CHECK(run_cli("--seed 11 --out-dir " + second.str() + " simulate --pairs 3000").exit_code == 0);
    CHECK(slurp(first.path / "result.json") == slurp(second.path / "result.json"));
    CHECK(slurp(first.path / "counts.csv") == slurp(second.path / "counts.csv"));
}

TEST_CASE("manifest parameters reproduce the run") {
    TempDir first, second;
    CHECK(run_cli("--seed 3 --out-dir " + first.str() + " simulate --pairs 2000 --overlap 0.8")
              .exit_code == 0);
    const auto j = nlohmann::ordered_json::parse(slurp(first.path / "result.json"));
    const auto& p = j["manifest"]["parameters"];
    std::string args = "--seed " + std::to_string(j["manifest"]["seed"].get<std::uint64_t>()) +
                       " --out-dir " + second.str() + " simulate";
    args += " --alpha " + p["alpha"].get<std::string>();
    args += " --beta " + p["beta"].get<std::string>();
    args += " --stat " + p["stat"].get<std::string>();
    args += " --pairs " + p["pairs"].get<std::string>();
    args += " --overlap " + p["overlap"].get<std::string>();
    args += " --efficiency " + p["efficiency"].get<std::string>();
    args += " --a " + p["a"].get<std::string>();
    args += " --a-prime " + p["aPrime"].get<std::string>();
    args += " --b " + p["b"].get<std::string>();
    args += " --b-prime " + p["bPrime"].get<std::string>();
    CHECK(run_cli(args).exit_code == 0);
    CHECK(slurp(first.path / "result.json") == slurp(second.path / "result.json"));
    CHECK(slurp(first.path / "counts.csv") == slurp(second.path / "counts.csv"));
}

TEST_CASE("config file mirrors flags and flags override") {
    TempDir tmp;
    const fs::path cfg = tmp.path / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "pairs = 2000\n"
          << "overlap = 0.8\n"
          << "seed = 3\n";
    }
    fs::create_directories(tmp.path / "a");
    fs::create_directories(tmp.path / "b");
    CHECK(run_cli("--out-dir " + (tmp.path / "a").string() + " simulate --config " +
                  cfg.string())
              .exit_code == 0);
    CHECK(run_cli("--seed 3 --out-dir " + (tmp.path / "b").string() +
                  " simulate --pairs 2000 --overlap 0.8")
              .exit_code == 0);
    CHECK(slurp(tmp.path / "a" / "counts.csv") == slurp(tmp.path / "b" / "counts.csv"));

    // flag wins over the file
    fs::create_directories(tmp.path / "c");
    CHECK(run_cli("--out-dir " + (tmp.path / "c").string() + " simulate --config " +
                  cfg.string() + " --overlap 1.0 --pairs 500")
              .exit_code == 0);
    const auto j = nlohmann::ordered_json::parse(slurp(tmp.path / "c" / "result.json"));
    CHECK(j["manifest"]["parameters"]["overlap"] == "1");
    CHECK(j["manifest"]["parameters"]["pairs"] == "500");
}

TEST_CASE("simulate with zero overlap respects the classical bound") {
    TempDir tmp;
    CHECK(run_cli("--seed 5 --out-dir " + tmp.str() +
                  " simulate --pairs 20000 --overlap 0")
              .exit_code == 0);
    const auto j = nlohmann::ordered_json::parse(slurp(tmp.path / "result.json"));
    CHECK(j["sHat"].get<double>() <= 2.0 + 4.0 * j["sStdErr"].get<double>());
}

TEST_CASE("simulate rejects a bad config") {
    CHECK(run_cli("simulate --pairs 0").exit_code == 2);
    CHECK(run_cli("simulate --overlap 1.5").exit_code == 2);
    CHECK(run_cli("simulate --efficiency 0").exit_code == 2);
}

TEST_CASE("identicity sweep covers the grid and ends at the quantum bound") {
    TempDir tmp;
    const RunResult r =
        run_cli("--out-dir " + tmp.str() + " --format csv identicity-sweep --v 0:1:0.1");
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(tmp.path / "identicity_sweep.csv");
    CHECK_FALSE(fs::exists(tmp.path / "identicity_sweep.json"));  // csv only

    int data_rows = 0;
    std::istringstream lines(csv);
    std::string line, last;
    bool header_seen = false;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            CHECK(line == "v,sMax");
            header_seen = true;
            continue;
        }
        ++data_rows;
        last = line;
    }
    CHECK(data_rows == 11);
    CHECK(last.rfind("1,", 0) == 0);
    const double smax_at_1 = std::stod(last.substr(2));
    CHECK(smax_at_1 == doctest::Approx(2.8284271247461903).epsilon(1e-6));
}

TEST_CASE("decohere sweeps the distance grid") {
    TempDir tmp;
    const RunResult r = run_cli("--out-dir " + tmp.str() +
                                " decohere --gamma-id 1 --d1 0:2:1 --d2 0:2:1 --speed 1");
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(tmp.path / "decohere.csv");
    int data_rows = 0;
    std::istringstream lines(csv);
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty() && line[0] != '#' && line.find("d1,") != 0) ++data_rows;
    CHECK(data_rows == 9);
}

TEST_CASE("temperature prints the threshold in kelvin") {
    TempDir tmp;
    const RunResult r =
        run_cli("--out-dir " + tmp.str() + " temperature --mass-number 100 --dx 1e-9");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("theta = 2.425437e-03 K") != std::string::npos);
    const std::string csv = slurp(tmp.path / "temperature.csv");
    CHECK(csv.find("massNumber,dx,thetaKelvin") != std::string::npos);
    CHECK(csv.find("0.002425436706074498") != std::string::npos);
}

TEST_CASE("malformed ranges and flags exit with the usage code") {
    CHECK(run_cli("identicity-sweep --v 1:0:0.1").exit_code == 2);
    CHECK(run_cli("identicity-sweep --v 0:1:-0.1").exit_code == 2);
    CHECK(run_cli("identicity-sweep --v 0:2:0.5").exit_code == 2);  // v > 1
    CHECK(run_cli("decohere --gamma-id -1").exit_code == 2);
    CHECK(run_cli("--format yaml chsh --optimize").exit_code == 2);
    CHECK(run_cli("no-such-command").exit_code == 2);
}

TEST_CASE("format json suppresses csv output") {
    TempDir tmp;
    CHECK(run_cli("--out-dir " + tmp.str() + " --format json simulate --pairs 1000")
              .exit_code == 0);
    CHECK(fs::exists(tmp.path / "result.json"));
    CHECK_FALSE(fs::exists(tmp.path / "counts.csv"));
}

TEST_CASE("worker count does not change the files") {
    TempDir base;
    std::array<std::string, 3> dirs;
    int k = 0;
    for (const char* workers : {"1", "4", "16"}) {
        const fs::path dir = base.path / workers;
        fs::create_directories(dir);
        dirs[k++] = dir.string();
        const RunResult r =
            run_cli("--seed 99 --out-dir " + dir.string() + " simulate --pairs 20000",
                    std::string("DUALENT_WORKERS=") + workers + " ");
        CHECK(r.exit_code == 0);
    }
    const std::string ref_json = slurp(fs::path(dirs[0]) / "result.json");
    const std::string ref_csv = slurp(fs::path(dirs[0]) / "counts.csv");
    for (int i = 1; i < 3; ++i) {
        CHECK(slurp(fs::path(dirs[i]) / "result.json") == ref_json);
        CHECK(slurp(fs::path(dirs[i]) / "counts.csv") == ref_csv);
    }
}
