#pragma once

// Exact representation of two-identical-particle states over four modes.
// A mode is a joint eigenstate (label eigenvalue, entangled eigenvalue) of the
// two dynamical variables describing the pair. Canonical operator ordering is
// label index major, entangled index minor, modes non-decreasing left to right;
// fermionic signs are normalized to that order.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "dualent/errors.hpp"

namespace dualent {

using cx = std::complex<double>;

inline constexpr double kAmplitudeTol = 1e-12;

enum class Statistics { Boson, Fermion };

// Sign picked up when two creation operators in distinct modes are interchanged.
inline double exchange_sign(Statistics s) noexcept {
    return s == Statistics::Boson ? 1.0 : -1.0;
}

inline const char* statistics_name(Statistics s) noexcept {
    return s == Statistics::Boson ? "boson" : "fermion";
}

// A two-valued dynamical variable: its name and the two distinct eigenlabels.
struct VariablePair {
    std::string name;
    std::array<std::string, 2> eigenlabels;

    VariablePair(std::string n, std::string first, std::string second)
        : name(std::move(n)), eigenlabels{std::move(first), std::move(second)} {
        if (eigenlabels[0] == eigenlabels[1])
            throw ConfigError("variable '" + name + "' needs two distinct eigenlabels");
    }

    friend bool operator==(const VariablePair&, const VariablePair&) = default;
};

// alpha |B1>_{A1} |B2>_{A2} + beta |B2>_{A1} |B1>_{A2}, normalized.
// label_var is the variable whose eigenvalues tell the particles apart;
// entangled_var is the variable carrying the entanglement.
struct DualPairState {
    cx alpha;
    cx beta;
    VariablePair label_var;
    VariablePair entangled_var;
    Statistics statistics;
};

inline DualPairState make_state(cx alpha, cx beta, VariablePair label_var,
                                VariablePair entangled_var, Statistics statistics) {
    if (label_var.name == entangled_var.name)
        throw VariableClash("label and entangled variables must differ, both are '" +
                            label_var.name + "'");
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (n2 <= 0.0) throw ZeroState("both amplitudes are zero");
    const double inv = 1.0 / std::sqrt(n2);
    return DualPairState{alpha * inv, beta * inv, std::move(label_var),
                         std::move(entangled_var), statistics};
}

// Mode index in canonical order: label index major, entangled index minor.
inline int mode_index(int label_idx, int entangled_idx) noexcept {
    return 2 * label_idx + entangled_idx;
}

// Occupation numbers of the four modes; a two-particle state occupies two.
struct FockConfiguration {
    std::array<int, 4> occupations{};

    int total() const noexcept {
        return occupations[0] + occupations[1] + occupations[2] + occupations[3];
    }
    bool pauli_allowed() const noexcept {
        return std::all_of(occupations.begin(), occupations.end(), [](int n) { return n <= 1; });
    }
    friend bool operator==(const FockConfiguration&, const FockConfiguration&) = default;
    friend auto operator<=>(const FockConfiguration&, const FockConfiguration&) = default;
};

// One creation-operator string applied to the vacuum, with its amplitude.
// operators[k] is the mode of the k-th creation operator, left to right.
struct FockTerm {
    std::array<int, 2> operators{};
    cx amplitude{};

    FockConfiguration configuration() const noexcept {
        FockConfiguration c;
        c.occupations[operators[0]] += 1;
        c.occupations[operators[1]] += 1;
        return c;
    }
};

// Superposition of two-particle creation-operator strings over the four modes
// of a (label_var, entangled_var) pair.
struct FockExpansion {
    VariablePair label_var;
    VariablePair entangled_var;
    Statistics statistics;
    std::vector<FockTerm> terms;

    bool same_mode_set(const FockExpansion& other) const {
        return label_var == other.label_var && entangled_var == other.entangled_var &&
               statistics == other.statistics;
    }

    double squared_norm() const {
        double s = 0.0;
        for (const FockTerm& t : terms) s += std::norm(t.amplitude);
        return s;
    }
};

// Rewrites every operator string in canonical order (modes non-decreasing),
// folding fermionic transposition signs into the amplitudes, zeroing
// Pauli-violating fermionic terms, and merging duplicate configurations.
inline FockExpansion normal_ordered(FockExpansion e) {
    std::vector<FockTerm> out;
    for (FockTerm t : e.terms) {
        if (t.operators[0] > t.operators[1]) {
            std::swap(t.operators[0], t.operators[1]);
            t.amplitude *= exchange_sign(e.statistics);
        } else if (t.operators[0] == t.operators[1] && e.statistics == Statistics::Fermion) {
            t.amplitude = 0.0;  // exclusion
        }
        if (t.amplitude == cx{}) continue;
        auto match = std::find_if(out.begin(), out.end(), [&t](const FockTerm& u) {
            return u.operators == t.operators;
        });
        if (match == out.end())
            out.push_back(t);
        else
            match->amplitude += t.amplitude;
    }
    std::erase_if(out, [](const FockTerm& t) { return t.amplitude == cx{}; });
    std::sort(out.begin(), out.end(),
              [](const FockTerm& x, const FockTerm& y) { return x.operators < y.operators; });
    e.terms = std::move(out);
    return e;
}

// Low-level builder from raw (operator string, amplitude) pairs, normal-ordered.
inline FockExpansion expansion_from_operators(
    VariablePair label_var, VariablePair entangled_var, Statistics statistics,
    const std::vector<std::pair<std::array<int, 2>, cx>>& raw_terms) {
    FockExpansion e{std::move(label_var), std::move(entangled_var), statistics, {}};
    for (const auto& [ops, amp] : raw_terms) {
        for (int m : ops)
            if (m < 0 || m > 3) throw ConfigError("mode index out of range");
        e.terms.push_back(FockTerm{ops, amp});
    }
    return normal_ordered(std::move(e));
}

// Second-quantized form of a pair state: the alpha branch occupies modes
// (A1,B1),(A2,B2), the beta branch (A1,B2),(A2,B1), both written canonically.
inline FockExpansion to_fock(const DualPairState& s) {
    FockExpansion e{s.label_var, s.entangled_var, s.statistics, {}};
    if (s.alpha != cx{})
        e.terms.push_back(FockTerm{{mode_index(0, 0), mode_index(1, 1)}, s.alpha});
    if (s.beta != cx{})
        e.terms.push_back(FockTerm{{mode_index(0, 1), mode_index(1, 0)}, s.beta});
    return e;
}

// Interchanges the creation operators at the two given positions in every
// term. The physical state is unchanged: amplitudes of terms with distinct
// modes pick up the statistics sign, and the result is re-expressed in
// canonical ordering.
inline FockExpansion exchange_reorder(FockExpansion e, std::pair<int, int> position_swap) {
    const auto [p, q] = position_swap;
    const bool addresses_two = (p == 0 && q == 1) || (p == 1 && q == 0);
    if (!addresses_two)
        throw InvalidPositions("swap positions must address the two operators of a pair state");
    for (FockTerm& t : e.terms) {
        std::swap(t.operators[p], t.operators[q]);
        if (t.operators[0] != t.operators[1])
            t.amplitude *= exchange_sign(e.statistics);
        else if (e.statistics == Statistics::Fermion)
            t.amplitude = 0.0;
    }
    return normal_ordered(std::move(e));
}

// Hermitian inner product <a|b> over matching canonical configurations.
inline cx inner_product(const FockExpansion& a, const FockExpansion& b) {
    if (!a.same_mode_set(b))
        throw ModeMismatch("expansions live over different mode sets");
    const FockExpansion ca = normal_ordered(a);
    const FockExpansion cb = normal_ordered(b);
    cx result{};
    for (const FockTerm& ta : ca.terms)
        for (const FockTerm& tb : cb.terms)
            if (ta.operators == tb.operators) result += std::conj(ta.amplitude) * tb.amplitude;
    return result;
}

// The photon realization: momentum labels (-k, k), polarization entangled (H, V).
inline DualPairState photon_pair_state(cx alpha, cx beta) {
    return make_state(alpha, beta, VariablePair("momentum", "-k", "k"),
                      VariablePair("polarization", "H", "V"), Statistics::Boson);
}

// Maximally entangled photon pair, the protocol's default source state.
inline DualPairState photon_bell_pair() {
    return photon_pair_state(1.0, 1.0);
}

}  // namespace dualent
