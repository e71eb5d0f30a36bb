#pragma once

// First-quantized picture of a pair state: two pseudo-labelled particles i, j,
// each living in the 4-dimensional joint eigenspace of the label and entangled
// variables. The (anti)symmetrized joint state has 16 components indexed by
// (state of particle i) x (state of particle j).

#include <array>
#include <cmath>
#include <complex>

#include "dualent/fock.hpp"
#include "dualent/linalg.hpp"

namespace dualent {

struct PseudoLabelVector {
    std::array<cx, 16> amplitudes{};
    Statistics statistics = Statistics::Boson;

    // Single-particle basis index for |A_a, B_b>, label index major.
    static int single_index(int a, int b) noexcept { return 2 * a + b; }
    static int joint_index(int si, int sj) noexcept { return 4 * si + sj; }

    cx at(int si, int sj) const { return amplitudes[joint_index(si, sj)]; }

    double squared_norm() const {
        double s = 0.0;
        for (const cx& z : amplitudes) s += std::norm(z);
        return s;
    }
};

namespace detail {

inline void place(PseudoLabelVector& v, int ai, int bi, int aj, int bj, cx amp) {
    v.amplitudes[PseudoLabelVector::joint_index(PseudoLabelVector::single_index(ai, bi),
                                                PseudoLabelVector::single_index(aj, bj))] += amp;
}

}  // namespace detail

// Direct (anti)symmetrization: each second-quantized branch contributes the
// two pseudo-label orders of its pair of occupied modes, the exchanged order
// carrying the statistics sign. Normalization 1/sqrt(2).
inline PseudoLabelVector to_pseudo_label(const DualPairState& s) {
    const double inv = 1.0 / std::sqrt(2.0);
    const double sgn = exchange_sign(s.statistics);
    PseudoLabelVector v;
    v.statistics = s.statistics;
    detail::place(v, 0, 0, 1, 1, s.alpha * inv);
    detail::place(v, 1, 1, 0, 0, s.alpha * inv * sgn);
    detail::place(v, 0, 1, 1, 0, s.beta * inv);
    detail::place(v, 1, 0, 0, 1, s.beta * inv * sgn);
    return v;
}

// Regrouped with the label variable factored out front: the A_1 A_2 pseudo-label
// order multiplies (alpha |B1 B2> + beta |B2 B1>), the exchanged order carries
// the statistics sign and the B content swapped.
inline PseudoLabelVector pseudo_label_grouped_by_label(const DualPairState& s) {
    const double inv = 1.0 / std::sqrt(2.0);
    const double sgn = exchange_sign(s.statistics);
    PseudoLabelVector v;
    v.statistics = s.statistics;
    struct BPart {
        int bi, bj;
        cx amp;
    };
    const std::array<BPart, 2> direct{{{0, 1, s.alpha}, {1, 0, s.beta}}};
    const std::array<BPart, 2> exchanged{{{1, 0, s.alpha}, {0, 1, s.beta}}};
    for (const BPart& p : direct) detail::place(v, 0, p.bi, 1, p.bj, p.amp * inv);
    for (const BPart& p : exchanged) detail::place(v, 1, p.bi, 0, p.bj, p.amp * inv * sgn);
    return v;
}

// Regrouped with the entangled variable factored out back: each B pseudo-label
// order multiplies its two-term A content, the statistics sign sitting on the
// exchanged A order. Equivalently, this is the direct expansion of the dual
// state read with B as the label.
inline PseudoLabelVector pseudo_label_grouped_by_entangled(const DualPairState& s) {
    const double inv = 1.0 / std::sqrt(2.0);
    const double sgn = exchange_sign(s.statistics);
    PseudoLabelVector v;
    v.statistics = s.statistics;
    struct APart {
        int ai, aj;
        cx amp;
    };
    const std::array<APart, 2> with_b12{{{0, 1, s.alpha}, {1, 0, s.beta * sgn}}};
    const std::array<APart, 2> with_b21{{{0, 1, s.beta}, {1, 0, s.alpha * sgn}}};
    for (const APart& p : with_b12) detail::place(v, p.ai, 0, p.aj, 1, p.amp * inv);
    for (const APart& p : with_b21) detail::place(v, p.ai, 1, p.aj, 0, p.amp * inv);
    return v;
}

// Reshapes the 16 amplitudes into a 4x4 matrix with row (a_i, a_j) and column
// (b_i, b_j). The state factorizes into a label part times an entangled part
// exactly when this matrix has rank one.
inline CMat<4> label_entangled_reshape(const PseudoLabelVector& v) {
    CMat<4> m;
    for (int ai = 0; ai < 2; ++ai)
        for (int aj = 0; aj < 2; ++aj)
            for (int bi = 0; bi < 2; ++bi)
                for (int bj = 0; bj < 2; ++bj)
                    m(2 * ai + aj, 2 * bi + bj) =
                        v.at(PseudoLabelVector::single_index(ai, bi),
                             PseudoLabelVector::single_index(aj, bj));
    return m;
}

}  // namespace dualent
