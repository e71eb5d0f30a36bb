#pragma once

// Monte Carlo simulation of the optical dualism test: a polarization-entangled
// photon pair is split by polarizing beam splitters, the V photon reaching one
// analyzer and the H photon the other, and the x-momentum pseudo-spins are
// measured in coincidence for the four CHSH setting pairs.
//
// Tensor ordering of the shared state: the H-photon momentum (Diana's side)
// is the first factor and takes the a/aPrime settings, the V-photon momentum
// (Charlie's side) is the second factor and takes the b/bPrime settings.
//
// Sampling draws one counter-addressed uniform per emitted pair (plus two for
// detector thinning when efficiency < 1), so results are a pure function of
// the config and identical for any number of workers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "dualent/bell.hpp"
#include "dualent/errors.hpp"
#include "dualent/identicity.hpp"
#include "dualent/rng.hpp"

namespace dualent {

struct ExperimentConfig {
    DualPairState state = photon_bell_pair();
    ChshSettings settings;
    std::uint64_t n_pairs_per_setting_pair = 250000;
    std::uint64_t seed = 42;
    double overlap_v = 1.0;
    double detector_efficiency = 1.0;
};

struct CoincidenceCounts {
    std::uint64_t n_pp = 0;
    std::uint64_t n_pm = 0;
    std::uint64_t n_mp = 0;
    std::uint64_t n_mm = 0;

    std::uint64_t total() const noexcept { return n_pp + n_pm + n_mp + n_mm; }

    CoincidenceCounts& operator+=(const CoincidenceCounts& o) noexcept {
        n_pp += o.n_pp;
        n_pm += o.n_pm;
        n_mp += o.n_mp;
        n_mm += o.n_mm;
        return *this;
    }
};

struct CorrelationEstimate {
    double e_hat = 0.0;
    double std_err = 0.0;
};

inline constexpr std::array<const char*, 4> kSettingPairNames = {"ab", "abPrime", "aPrimeB",
                                                                 "aPrimeBPrime"};

struct ExperimentResult {
    std::array<CoincidenceCounts, 4> counts{};  // ab, ab', a'b, a'b'
    std::array<double, 4> e_hat{};
    std::array<double, 4> e_std_err{};
    double s_hat = 0.0;
    double s_std_err = 0.0;
};

// Number of sampling workers: hardware concurrency, capped by the
// DUALENT_WORKERS environment variable when set. Never alters numeric output.
inline unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("DUALENT_WORKERS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned long>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return n;
}

// Routes the pair through the polarizing beam splitters: per emitted pair
// exactly one photon reaches each analyzer, and the momenta they hold are
// jointly in the dual representation of the source state.
inline DensityOperator4 route_pbs(const DualPairState& s) {
    detail::require_protocol_shape(s);
    return pure_dual_projector(s);
}

// eHat = (nPP + nMM - nPM - nMP) / N with the plug-in standard error
// sqrt((1 - eHat^2) / N).
inline CorrelationEstimate estimate_correlation(const CoincidenceCounts& c) {
    const std::uint64_t n = c.total();
    if (n == 0) throw EmptyCounts("no detected pairs");
    const double e =
        (static_cast<double>(c.n_pp) + static_cast<double>(c.n_mm) -
         static_cast<double>(c.n_pm) - static_cast<double>(c.n_mp)) /
        static_cast<double>(n);
    const double var = std::max(1.0 - e * e, 0.0) / static_cast<double>(n);
    return CorrelationEstimate{e, std::sqrt(var)};
}

namespace detail {

struct OutcomeThresholds {
    double c_pp, c_pm, c_mp;  // cumulative Born probabilities
};

inline OutcomeThresholds born_thresholds(const DensityOperator4& rho,
                                         const MeasurementSetting& a,
                                         const MeasurementSetting& b) {
    const CMat<2> id2 = CMat<2>::identity();
    const CMat<2> oa = observable(a);
    const CMat<2> ob = observable(b);
    auto projector = [&id2](const CMat<2>& o, double sign) {
        return (id2 + sign * cx{1.0} * o) * cx{0.5};
    };
    std::array<double, 4> p{};
    int k = 0;
    for (double sa : {1.0, -1.0})
        for (double sb : {1.0, -1.0}) {
            const double prob =
                trace(matmul(rho.matrix(), kron(projector(oa, sa), projector(ob, sb)))).real();
            if (prob < -1e-9) throw InvalidDensity("negative Born probability");
            p[k++] = std::max(prob, 0.0);
        }
    const double total = p[0] + p[1] + p[2] + p[3];
    if (total <= 0.0) throw InvalidDensity("Born probabilities sum to zero");
    for (double& x : p) x /= total;
    return OutcomeThresholds{p[0], p[0] + p[1], p[0] + p[1] + p[2]};
}

inline CoincidenceCounts sample_range(const OutcomeThresholds& th, CounterRng stream,
                                      std::uint64_t begin, std::uint64_t end,
                                      double efficiency) {
    CoincidenceCounts c;
    const bool thin = efficiency < 1.0;
    for (std::uint64_t i = begin; i < end; ++i) {
        if (thin) {
            // independent detection of each photon; only coincidences count
            if (stream.uniform(3 * i + 1) >= efficiency) continue;
            if (stream.uniform(3 * i + 2) >= efficiency) continue;
        }
        const double u = stream.uniform(3 * i);
        if (u < th.c_pp)
            ++c.n_pp;
        else if (u < th.c_pm)
            ++c.n_pm;
        else if (u < th.c_mp)
            ++c.n_mp;
        else
            ++c.n_mm;
    }
    return c;
}

}  // namespace detail

// Draws n pairs from the Born distribution of (rho, a, b). The stream must be
// the per-setting-pair substream; outcomes are indexed by pair number, so the
// partition across workers cannot change the counts.
inline CoincidenceCounts sample_outcomes(const DensityOperator4& rho, const MeasurementSetting& a,
                                         const MeasurementSetting& b, std::uint64_t n,
                                         CounterRng stream, double detector_efficiency = 1.0) {
    if (n == 0) throw ConfigError("need at least one pair per setting pair");
    if (!(detector_efficiency > 0.0 && detector_efficiency <= 1.0))
        throw ConfigError("detector efficiency must lie in (0, 1]");
    const auto th = detail::born_thresholds(rho, a, b);

    const unsigned workers = worker_count();
    if (workers <= 1 || n < 4096)
        return detail::sample_range(th, stream, 0, n, detector_efficiency);

    std::vector<CoincidenceCounts> partial(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = std::min<std::uint64_t>(w * chunk, n);
        const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, n);
        pool.emplace_back([&, begin, end, w] {
            partial[w] = detail::sample_range(th, stream, begin, end, detector_efficiency);
        });
    }
    for (std::thread& t : pool) t.join();
    CoincidenceCounts total;
    for (const CoincidenceCounts& c : partial) total += c;
    return total;
}

inline void validate_config(const ExperimentConfig& cfg) {
    if (cfg.n_pairs_per_setting_pair == 0)
        throw ConfigError("need at least one pair per setting pair");
    if (!(cfg.overlap_v >= 0.0 && cfg.overlap_v <= 1.0))
        throw ConfigError("overlap v must lie in [0, 1]");
    if (!(cfg.detector_efficiency > 0.0 && cfg.detector_efficiency <= 1.0))
        throw ConfigError("detector efficiency must lie in (0, 1]");
}

// Full protocol run: route the source state, sample each of the four CHSH
// setting pairs on its own substream, and estimate correlations and S.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const DensityOperator4 rho = degraded_dual_state(cfg.state, OverlapParameter{cfg.overlap_v});

    const std::array<std::pair<MeasurementSetting, MeasurementSetting>, 4> pairs = {{
        {cfg.settings.a, cfg.settings.b},
        {cfg.settings.a, cfg.settings.b_prime},
        {cfg.settings.a_prime, cfg.settings.b},
        {cfg.settings.a_prime, cfg.settings.b_prime},
    }};

    ExperimentResult r;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        r.counts[k] = sample_outcomes(rho, pairs[k].first, pairs[k].second,
                                      cfg.n_pairs_per_setting_pair,
                                      CounterRng::substream(cfg.seed, k),
                                      cfg.detector_efficiency);
        const CorrelationEstimate est = estimate_correlation(r.counts[k]);
        r.e_hat[k] = est.e_hat;
        r.e_std_err[k] = est.std_err;
    }
    r.s_hat = r.e_hat[0] + r.e_hat[1] + r.e_hat[2] - r.e_hat[3];
    double var = 0.0;
    for (double se : r.e_std_err) var += se * se;
    r.s_std_err = std::sqrt(var);
    return r;
}

}  // namespace dualent
