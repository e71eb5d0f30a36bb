#include <doctest.h>

#include <random>

#include "dualent/linalg.hpp"
#include "oracles.hpp"

using namespace dualent;

TEST_CASE("jacobi diagonalizes a known symmetric matrix") {
    // eigenvalues of [[2,1,0],[1,2,1],[0,1,2]] are 2 and 2 -+ sqrt(2)
    std::array<double, 9> a = {2, 1, 0, 1, 2, 1, 0, 1, 2};
    std::array<double, 3> ev{};
    jacobi_eigh<3>(a, ev);
    CHECK(ev[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ev[2] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("hermitian eigenvalues via the real embedding") {
    CMat<2> sy = oracles::pauli_y();
    const auto ev = hermitian_eigenvalues(sy);
    CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigenvalue sum equals trace for random Hermitian matrices") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        CMat<4> g;
        for (auto& z : g.a) z = cx{n(rng), n(rng)};
        const CMat<4> h = (g + adjoint(g)) * cx{0.5};
        const auto ev = hermitian_eigenvalues(h);
        double sum = 0.0;
        for (double x : ev) sum += x;
        CHECK(sum == doctest::Approx(trace(h).real()).epsilon(1e-10));
    }
}

TEST_CASE("hermitian_sqrt squares back to the original PSD matrix") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        CMat<4> g;
        for (auto& z : g.a) z = cx{n(rng), n(rng)};
        const CMat<4> psd = matmul(g, adjoint(g));
        const CMat<4> root = hermitian_sqrt(psd);
        const CMat<4> back = matmul(root, root);
        CHECK(max_abs_entry(back - psd) < 1e-9 * (1.0 + max_abs_entry(psd)));
        CHECK(hermiticity_defect(root) < 1e-10);
    }
}

TEST_CASE("kron matches direct index arithmetic") {
    CMat<2> x, y;
    x(0, 0) = 1.0;
    x(0, 1) = 2.0;
    x(1, 0) = cx{0.0, 1.0};
    x(1, 1) = -1.0;
    y(0, 0) = 3.0;
    y(1, 1) = cx{0.0, -2.0};
    const CMat<4> k = kron(x, y);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(k(i, j) == x(i / 2, j / 2) * y(i % 2, j % 2));
}

TEST_CASE("singular values of a rank-one matrix") {
    CVec<4> v;
    v[0] = 0.5;
    v[1] = cx{0.0, 0.5};
    v[2] = -0.5;
    v[3] = 0.5;
    const auto sv = singular_values(outer(v));
    CHECK(sv[3] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sv[2] < 1e-12);
    CHECK(sv[1] < 1e-12);
    CHECK(sv[0] < 1e-12);
}
