#pragma once

// Machine-readable output: every file starts with a run manifest echoing the
// subcommand and its parameters, so a result is reproducible from the file
// alone. CSV uses '.' decimals, LF line endings and a header row; JSON uses
// lowercase camel keys. Doubles are written in shortest round-trip form.

#include <charconv>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dualent/bell.hpp"
#include "dualent/errors.hpp"
#include "dualent/experiment.hpp"
#include "dualent/version.hpp"

namespace dualent {

using ordered_json = nlohmann::ordered_json;

inline std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), end);
}

inline std::string format_complex(cx z) {
    std::string s = format_double(z.real());
    if (z.imag() != 0.0) {
        if (z.imag() >= 0.0) s += "+";
        s += format_double(z.imag());
        s += "i";
    }
    return s;
}

namespace detail {

inline double parse_real_strict(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ConfigError("cannot parse real number '" + std::string(s) + "'");
    return value;
}

}  // namespace detail

// Accepted amplitude forms: `a`, `ai`, `a+bi`, `a-bi` with decimal reals.
inline cx parse_complex(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty()) throw ConfigError("empty amplitude");
    if (s.back() != 'i') return cx{detail::parse_real_strict(s), 0.0};

    std::string_view body = s.substr(0, s.size() - 1);
    if (body.empty()) throw ConfigError("cannot parse amplitude '" + std::string(s) + "'");
    std::size_t split = std::string_view::npos;
    for (std::size_t k = 1; k < body.size(); ++k) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E')
            split = k;
    }
    if (split == std::string_view::npos) return cx{0.0, detail::parse_real_strict(body)};
    return cx{detail::parse_real_strict(body.substr(0, split)),
              detail::parse_real_strict(body.substr(split))};
}

// Echo of one CLI invocation, emitted at the top of every output.
struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::string tool_version = kToolVersion;
    std::uint64_t seed = 0;

    void add(std::string key, std::string value) {
        parameters.emplace_back(std::move(key), std::move(value));
    }
    void add(std::string key, double value) { add(std::move(key), format_double(value)); }
    void add(std::string key, std::uint64_t value) { add(std::move(key), std::to_string(value)); }
};

inline ordered_json manifest_json(const RunManifest& m) {
    ordered_json j;
    j["subcommand"] = m.subcommand;
    j["toolVersion"] = m.tool_version;
    j["seed"] = m.seed;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : m.parameters) params[k] = v;
    j["parameters"] = params;
    return j;
}

inline std::string manifest_csv_comment(const RunManifest& m) {
    std::string out;
    out += "# subcommand = " + m.subcommand + "\n";
    out += "# toolVersion = " + m.tool_version + "\n";
    out += "# seed = " + std::to_string(m.seed) + "\n";
    for (const auto& [k, v] : m.parameters) out += "# " + k + " = " + v + "\n";
    return out;
}

inline ordered_json setting_json(const MeasurementSetting& s) {
    return ordered_json{{"theta", s.theta}, {"phi", s.phi}};
}

inline ordered_json settings_json(const ChshSettings& s) {
    ordered_json j;
    j["a"] = setting_json(s.a);
    j["aPrime"] = setting_json(s.a_prime);
    j["b"] = setting_json(s.b);
    j["bPrime"] = setting_json(s.b_prime);
    return j;
}

inline ordered_json experiment_result_json(const RunManifest& m, const ChshSettings& settings,
                                           const ExperimentResult& r) {
    ordered_json j;
    j["manifest"] = manifest_json(m);
    j["settings"] = settings_json(settings);
    ordered_json counts = ordered_json::object();
    for (std::size_t k = 0; k < 4; ++k) {
        counts[kSettingPairNames[k]] = ordered_json{{"nPP", r.counts[k].n_pp},
                                                    {"nPM", r.counts[k].n_pm},
                                                    {"nMP", r.counts[k].n_mp},
                                                    {"nMM", r.counts[k].n_mm}};
    }
    j["counts"] = counts;
    j["eHat"] = r.e_hat;
    j["eStdErr"] = r.e_std_err;
    j["sHat"] = r.s_hat;
    j["sStdErr"] = r.s_std_err;
    return j;
}

inline std::string experiment_counts_csv(const RunManifest& m, const ExperimentResult& r) {
    std::string out = manifest_csv_comment(m);
    out += "settingPair,nPP,nPM,nMP,nMM,eHat,stdErr\n";
    for (std::size_t k = 0; k < 4; ++k) {
        out += kSettingPairNames[k];
        out += "," + std::to_string(r.counts[k].n_pp);
        out += "," + std::to_string(r.counts[k].n_pm);
        out += "," + std::to_string(r.counts[k].n_mp);
        out += "," + std::to_string(r.counts[k].n_mm);
        out += "," + format_double(r.e_hat[k]);
        out += "," + format_double(r.e_std_err[k]);
        out += "\n";
    }
    return out;
}

inline std::string sweep_csv(const RunManifest& m, const std::vector<std::string>& columns,
                             const std::vector<std::vector<double>>& rows) {
    std::string out = manifest_csv_comment(m);
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ",";
        out += columns[c];
    }
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ",";
            out += format_double(row[c]);
        }
        out += "\n";
    }
    return out;
}

inline void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + path.string() + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw ConfigError("failed writing '" + path.string() + "'");
}

// Flat key = value config file; '#' starts a comment. Later keys win.
inline std::vector<std::pair<std::string, std::string>> parse_config_file(
    const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    auto trim = [](std::string& s) {
        const auto first = s.find_first_not_of(" \t\r");
        const auto last = s.find_last_not_of(" \t\r");
        s = (first == std::string::npos) ? std::string{} : s.substr(first, last - first + 1);
    };
    std::size_t line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + " is not key = value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        trim(key);
        trim(value);
        if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + " has no key");
        entries.emplace_back(std::move(key), std::move(value));
    }
    return entries;
}

}  // namespace dualent
