#pragma once

// Dichotomic pseudo-spin observables and CHSH machinery for the dual
// two-odd-particle momentum state. Basis convention for the 4x4 operators:
// |-k> is pseudo-spin up (index 0), |k> is pseudo-spin down (index 1); the
// first tensor factor carries the a/aPrime settings, the second the b/bPrime
// settings.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "dualent/dualism.hpp"
#include "dualent/errors.hpp"
#include "dualent/linalg.hpp"

namespace dualent {

// Analyzer orientation (theta, phi) defining the +/-1 observable n.sigma with
// n = (sin theta cos phi, sin theta sin phi, cos theta).
struct MeasurementSetting {
    double theta = 0.0;  // radians in [0, pi]
    double phi = 0.0;    // radians in [0, 2*pi)
};

inline MeasurementSetting make_setting(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw ConfigError("theta must lie in [0, pi]");
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
        throw ConfigError("phi must lie in [0, 2*pi)");
    return MeasurementSetting{theta, phi};
}

struct ChshSettings {
    MeasurementSetting a, a_prime;  // first party
    MeasurementSetting b, b_prime;  // second party
};

// n.sigma: Hermitian, traceless, eigenvalues exactly +1 and -1.
inline CMat<2> observable(const MeasurementSetting& s) {
    const double st = std::sin(s.theta);
    const double ct = std::cos(s.theta);
    CMat<2> m;
    m(0, 0) = ct;
    m(1, 1) = -ct;
    m(0, 1) = st * cx{std::cos(s.phi), -std::sin(s.phi)};
    m(1, 0) = st * cx{std::cos(s.phi), std::sin(s.phi)};
    return m;
}

inline constexpr double kDensityHermTol = 1e-12;
inline constexpr double kDensityTraceTol = 1e-12;
inline constexpr double kDensityEigenFloor = -1e-10;

// 4x4 Hermitian unit-trace positive operator on the two dual subsystems,
// basis ordered (|-k>, |k>) (x) (|-k>, |k>). Validated on construction.
class DensityOperator4 {
  public:
    static DensityOperator4 from_matrix(const CMat<4>& m) {
        if (hermiticity_defect(m) > kDensityHermTol)
            throw InvalidDensity("operator is not Hermitian within tolerance");
        if (std::abs(trace(m) - cx{1.0}) > kDensityTraceTol)
            throw InvalidDensity("operator trace differs from one");
        if (hermitian_eigenvalues(m)[0] < kDensityEigenFloor)
            throw InvalidDensity("operator has a negative eigenvalue beyond tolerance");
        return DensityOperator4(m);
    }

    const CMat<4>& matrix() const { return m_; }
    cx entry(std::size_t r, std::size_t c) const { return m_(r, c); }

  private:
    explicit DensityOperator4(const CMat<4>& m) : m_(m) {}
    CMat<4> m_;
};

inline const CMat<2>& pauli(int axis) {
    static const std::array<CMat<2>, 3> sigma = [] {
        std::array<CMat<2>, 3> s{};
        s[0](0, 1) = 1.0;
        s[0](1, 0) = 1.0;
        s[1](0, 1) = cx{0.0, -1.0};
        s[1](1, 0) = cx{0.0, 1.0};
        s[2](0, 0) = 1.0;
        s[2](1, 1) = -1.0;
        return s;
    }();
    return sigma[axis];
}

// E(a, b) = tr(rho . A (x) B), real and in [-1, 1] for a valid density.
inline double correlation(const DensityOperator4& rho, const MeasurementSetting& a,
                          const MeasurementSetting& b) {
    const CMat<4> ab = kron(observable(a), observable(b));
    return trace(matmul(rho.matrix(), ab)).real();
}

// S = E(a,b) + E(a,b') + E(a',b) - E(a',b').
inline double chsh(const DensityOperator4& rho, const ChshSettings& s) {
    return correlation(rho, s.a, s.b) + correlation(rho, s.a, s.b_prime) +
           correlation(rho, s.a_prime, s.b) - correlation(rho, s.a_prime, s.b_prime);
}

// Correlation matrix T[m][n] = tr(rho . sigma_m (x) sigma_n), axes x, y, z.
inline std::array<std::array<double, 3>, 3> correlation_matrix(const DensityOperator4& rho) {
    std::array<std::array<double, 3>, 3> t{};
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
            t[m][n] = trace(matmul(rho.matrix(), kron(pauli(m), pauli(n)))).real();
    return t;
}

struct ChshOptimum {
    double s_max = 0.0;
    ChshSettings settings;
};

namespace detail {

using Vec3 = std::array<double, 3>;

inline Vec3 spherical_unit(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

inline double norm3(const Vec3& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

inline Vec3 apply3(const std::array<std::array<double, 3>, 3>& t, const Vec3& v) {
    Vec3 r{};
    for (int i = 0; i < 3; ++i) r[i] = t[i][0] * v[0] + t[i][1] * v[1] + t[i][2] * v[2];
    return r;
}

inline MeasurementSetting setting_from_unit(const Vec3& v) {
    const double n = norm3(v);
    if (n == 0.0) return MeasurementSetting{0.0, 0.0};
    const double z = std::clamp(v[2] / n, -1.0, 1.0);
    double phi = std::atan2(v[1], v[0]);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
    return MeasurementSetting{std::acos(z), phi};
}

// With the second party's directions fixed at (b, b2), the best first-party
// directions are exactly T(b+b2)/|.| and T(b-b2)/|.|, so the CHSH maximum
// given (b, b2) is |T(b+b2)| + |T(b-b2)|.
inline double chsh_given_second_party(const std::array<std::array<double, 3>, 3>& t,
                                      const Vec3& b, const Vec3& b2) {
    const Vec3 plus{b[0] + b2[0], b[1] + b2[1], b[2] + b2[2]};
    const Vec3 minus{b[0] - b2[0], b[1] - b2[1], b[2] - b2[2]};
    return norm3(apply3(t, plus)) + norm3(apply3(t, minus));
}

}  // namespace detail

inline constexpr int kChshGridSteps = 24;
inline constexpr double kChshRefineStep = 1e-8;

// Grid-plus-refine search for the CHSH maximum. The second party's two
// directions are scanned over a 24-step-per-angle spherical grid and the
// first party's directions are recovered in closed form from the correlation
// matrix; pattern search then refines the four scanned angles down to a 1e-8
// step. Deterministic, independent of evaluation order.
inline ChshOptimum optimize_chsh(const DensityOperator4& rho) {
    using detail::Vec3;
    const auto t = correlation_matrix(rho);
    constexpr int n_theta = kChshGridSteps;
    constexpr int n_phi = kChshGridSteps;
    constexpr int n_dirs = n_theta * n_phi;

    struct GridPoint {
        double theta, phi;
        Vec3 dir;
        Vec3 tdir;
    };
    std::array<GridPoint, n_dirs> grid{};
    for (int i = 0; i < n_theta; ++i) {
        const double theta = std::numbers::pi * (i + 0.5) / n_theta;
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / n_phi;
            GridPoint& g = grid[i * n_phi + j];
            g.theta = theta;
            g.phi = phi;
            g.dir = detail::spherical_unit(theta, phi);
            g.tdir = detail::apply3(t, g.dir);
        }
    }

    struct Start {
        double value = -1.0;
        int i = 0, j = 0;
    };
    std::array<Start, 4> starts{};
    for (int i = 0; i < n_dirs; ++i) {
        for (int j = i; j < n_dirs; ++j) {
            Vec3 plus{}, minus{};
            for (int k = 0; k < 3; ++k) {
                plus[k] = grid[i].tdir[k] + grid[j].tdir[k];
                minus[k] = grid[i].tdir[k] - grid[j].tdir[k];
            }
            const double value = detail::norm3(plus) + detail::norm3(minus);
            if (value > starts.back().value) {
                starts.back() = Start{value, i, j};
                std::sort(starts.begin(), starts.end(),
                          [](const Start& x, const Start& y) { return x.value > y.value; });
            }
        }
    }

    const auto objective = [&t](const std::array<double, 4>& x) {
        return detail::chsh_given_second_party(t, detail::spherical_unit(x[0], x[1]),
                                               detail::spherical_unit(x[2], x[3]));
    };

    double best_value = -1.0;
    std::array<double, 4> best_x{};
    for (const Start& s : starts) {
        std::array<double, 4> x{grid[s.i].theta, grid[s.i].phi, grid[s.j].theta, grid[s.j].phi};
        double value = objective(x);
        double step = std::numbers::pi / n_theta;
        while (step > kChshRefineStep) {
            bool moved = false;
            for (int d = 0; d < 4; ++d) {
                for (double delta : {step, -step}) {
                    std::array<double, 4> y = x;
                    y[d] += delta;
                    const double v = objective(y);
                    if (v > value) {
                        value = v;
                        x = y;
                        moved = true;
                    }
                }
            }
            if (!moved) step *= 0.5;
        }
        if (value > best_value) {
            best_value = value;
            best_x = x;
        }
    }

    const Vec3 b = detail::spherical_unit(best_x[0], best_x[1]);
    const Vec3 b2 = detail::spherical_unit(best_x[2], best_x[3]);
    const Vec3 tb_plus = detail::apply3(t, {b[0] + b2[0], b[1] + b2[1], b[2] + b2[2]});
    const Vec3 tb_minus = detail::apply3(t, {b[0] - b2[0], b[1] - b2[1], b[2] - b2[2]});

    ChshOptimum opt;
    opt.s_max = best_value;
    opt.settings.a = detail::setting_from_unit(tb_plus);
    opt.settings.a_prime = detail::setting_from_unit(tb_minus);
    opt.settings.b = detail::setting_from_unit(b);
    opt.settings.b_prime = detail::setting_from_unit(b2);
    return opt;
}

// Projector onto the dual representation of a pair state, embedded in the
// 4-dimensional space spanned by the two label eigenvalues of each particle.
// The first tensor factor is the particle labelled by the first entangled
// eigenvalue (the H photon in the optical protocol), the second factor the
// other one.
inline DensityOperator4 pure_dual_projector(const DualPairState& s) {
    const DualPairState dual = dual_representation(s);
    CVec<4> psi;
    psi[1] = dual.alpha;  // |-k>(x)|k>
    psi[2] = dual.beta;   // |k>(x)|-k>
    return DensityOperator4::from_matrix(outer(psi));
}

}  // namespace dualent
