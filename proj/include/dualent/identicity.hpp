#pragma once

// Quantum-to-classical transition of identicity: partial distinguishability
// damps the coherences of the dual momentum state, two separate dephasing
// channels model environment coupling during the trapped and the
// path-superposed stages, and a trap-temperature criterion bounds the regime
// where the particles stay indistinguishable by arrival time.

#include <cmath>
#include <utility>
#include <vector>

#include "dualent/bell.hpp"
#include "dualent/errors.hpp"
#include "dualent/fock.hpp"

namespace dualent {

namespace constants {
// CODATA values, fixed for bit-reproducible output.
inline constexpr double kHbar = 1.054571817e-34;            // J s
inline constexpr double kBoltzmann = 1.380649e-23;          // J / K
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
}  // namespace constants

// Modulus of the overlap of the two particles' ancillary internal wavepackets:
// 1 for identical particles, 0 for fully distinguishable ones (created from
// different vacua).
struct OverlapParameter {
    double v = 1.0;
};

inline OverlapParameter make_overlap(double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("overlap v must lie in [0, 1]");
    return OverlapParameter{v};
}

// Dephasing rates and geometry of the two-stage transport: gamma_id acts
// while the particles sit in separated traps (duration d1/speed), gamma_path
// acts on the path superposition (duration (d1+d2)/speed).
struct TransitionParams {
    double gamma_id = 0.0;    // 1/s
    double gamma_path = 0.0;  // 1/s
    double d1 = 0.0;          // m
    double d2 = 0.0;          // m
    double speed = 1.0;       // m/s
};

inline TransitionParams make_transition_params(double gamma_id, double gamma_path, double d1,
                                               double d2, double speed) {
    if (!(gamma_id >= 0.0)) throw ConfigError("gamma_id must be >= 0");
    if (!(gamma_path >= 0.0)) throw ConfigError("gamma_path must be >= 0");
    if (!(d1 >= 0.0) || !(d2 >= 0.0)) throw ConfigError("distances must be >= 0");
    if (!(speed > 0.0)) throw ConfigError("speed must be > 0");
    return TransitionParams{gamma_id, gamma_path, d1, d2, speed};
}

struct TemperatureQuery {
    double mass_number = 1.0;  // atomic mass units
    double delta_x = 1e-9;     // m, position spread
};

inline TemperatureQuery make_temperature_query(double mass_number, double delta_x) {
    if (!(mass_number > 0.0)) throw ConfigError("mass number must be > 0");
    if (!(delta_x > 0.0)) throw ConfigError("position spread must be > 0");
    return TemperatureQuery{mass_number, delta_x};
}

namespace detail {

// The optical protocol acts on a momentum-labelled, polarization-entangled
// pair; reject anything else.
inline void require_protocol_shape(const DualPairState& s) {
    const bool label_ok = s.label_var.eigenlabels == std::array<std::string, 2>{"-k", "k"};
    const bool ent_ok = s.entangled_var.eigenlabels == std::array<std::string, 2>{"H", "V"};
    if (!label_ok || !ent_ok)
        throw WrongStateShape(
            "expected a pair state with momentum labels (-k, k) and entangled labels (H, V)");
}

// Scales the two dual coherences |-k,k><k,-k| and |k,-k><-k,k| by f.
inline CMat<4> scale_dual_coherences(CMat<4> m, double f) {
    m(1, 2) *= f;
    m(2, 1) *= f;
    return m;
}

}  // namespace detail

// Dual momentum state of a partially distinguishable pair: populations of the
// identical-particle dual state, coherences multiplied by v. v = 1 gives the
// pure dual projector, v = 0 the classically correlated mixture.
inline DensityOperator4 degraded_dual_state(const DualPairState& s, OverlapParameter overlap) {
    detail::require_protocol_shape(s);
    if (!(overlap.v >= 0.0 && overlap.v <= 1.0))
        throw ConfigError("overlap v must lie in [0, 1]");
    const CMat<4> pure = pure_dual_projector(s).matrix();
    return DensityOperator4::from_matrix(detail::scale_dual_coherences(pure, overlap.v));
}

// Maximal CHSH value of the degraded dual of the maximally entangled photon
// pair, evaluated by the grid-plus-refine optimizer for each grid value.
inline std::vector<std::pair<double, double>> smax_vs_overlap(
    const std::vector<OverlapParameter>& grid) {
    const DualPairState bell = photon_bell_pair();
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (const OverlapParameter& v : grid)
        out.emplace_back(v.v, optimize_chsh(degraded_dual_state(bell, v)).s_max);
    return out;
}

// Identicity loss during the trapped stage, exp(-gamma_id d1/speed), composed
// with path dephasing exp(-gamma_path (d1+d2)/speed). Both act as coherence
// multipliers on the dual state, so their order is irrelevant.
inline double coherence_factor(const TransitionParams& p) {
    const double v = std::exp(-p.gamma_id * p.d1 / p.speed);
    const double path = std::exp(-p.gamma_path * (p.d1 + p.d2) / p.speed);
    return v * path;
}

inline DensityOperator4 transition_channel(const TransitionParams& p, const DualPairState& s) {
    detail::require_protocol_shape(s);
    const CMat<4> pure = pure_dual_projector(s).matrix();
    return DensityOperator4::from_matrix(
        detail::scale_dual_coherences(pure, coherence_factor(p)));
}

// Trap temperature below which the particles cannot be told apart by arrival
// time: hbar^2 / (2 m k_B (delta x)^2), in kelvin.
inline double temperature_threshold(const TemperatureQuery& q) {
    const double mass = q.mass_number * constants::kAtomicMassUnit;
    return constants::kHbar * constants::kHbar /
           (2.0 * mass * constants::kBoltzmann * q.delta_x * q.delta_x);
}

}  // namespace dualent
