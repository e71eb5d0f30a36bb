#pragma once

// The dual representation of a two-identical-particle entangled state: the
// roles of the label variable and the entangled variable interchange, bosonic
// amplitudes unchanged, fermionic ones with the sign of the second branch
// flipped. Entanglement magnitude is identical in both representations.

#include <cmath>
#include <complex>

#include "dualent/fock.hpp"

namespace dualent {

struct DualityReport {
    DualPairState original;
    DualPairState dual;
    double concurrence_original = 0.0;
    double concurrence_dual = 0.0;
    bool factorizable = false;
};

// Swaps which variable serves as the particle identity label. Applying it
// twice returns the original state for both statistics.
inline DualPairState dual_representation(const DualPairState& s) {
    const cx beta_dual = s.beta * exchange_sign(s.statistics);
    return DualPairState{s.alpha, beta_dual, s.entangled_var, s.label_var, s.statistics};
}

// Entanglement of the two-"qubit" state seen through the current label
// variable: 2|alpha||beta|, 0 for a product state, 1 when maximal.
inline double concurrence(const DualPairState& s) {
    return 2.0 * std::abs(s.alpha) * std::abs(s.beta);
}

inline constexpr double kFactorizableTol = 1e-9;

// True when alpha = beta or alpha = -beta as rays (a global phase on the
// state cancels from both differences, so the raw amplitudes can be compared
// directly).
inline bool is_factorizable(const DualPairState& s, double tol = kFactorizableTol) {
    return std::abs(s.alpha - s.beta) < tol || std::abs(s.alpha + s.beta) < tol;
}

inline DualityReport dualism_magnitude_check(const DualPairState& s) {
    DualityReport r{s, dual_representation(s)};
    r.concurrence_original = concurrence(r.original);
    r.concurrence_dual = concurrence(r.dual);
    r.factorizable = is_factorizable(s);
    return r;
}

// Repairs a state whose two particles sit in the same entangled-variable
// eigenstate per branch (alpha |B1>|B1> + beta |B2>|B2>), which shows no
// dual entanglement. Relabelling B1 <-> B2 on the A2 particle (a local
// rotation on that subsystem) yields the standard pair form with the same
// amplitudes.
inline DualPairState manifest_repair(cx alpha_same, cx beta_same, VariablePair label_var,
                                     VariablePair entangled_var, Statistics statistics) {
    return make_state(alpha_same, beta_same, std::move(label_var), std::move(entangled_var),
                      statistics);
}

// Ray equality: same variables and statistics, amplitudes equal up to one
// unit-modulus scalar.
inline bool physically_equal(const DualPairState& x, const DualPairState& y,
                             double tol = kAmplitudeTol) {
    if (x.label_var != y.label_var || x.entangled_var != y.entangled_var ||
        x.statistics != y.statistics)
        return false;
    const cx overlap = std::conj(x.alpha) * y.alpha + std::conj(x.beta) * y.beta;
    return std::abs(std::abs(overlap) - 1.0) < tol;
}

}  // namespace dualent
