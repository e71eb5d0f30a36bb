#pragma once

// Dense fixed-size complex linear algebra sized for two-level and
// two-"qubit" problems (2x2 and 4x4 matrices, 16-component vectors).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace dualent {

using cx = std::complex<double>;

template <std::size_t N>
struct CVec {
    std::array<cx, N> v{};

    cx& operator[](std::size_t i) { return v[i]; }
    const cx& operator[](std::size_t i) const { return v[i]; }

    double squared_norm() const {
        double s = 0.0;
        for (const cx& z : v) s += std::norm(z);
        return s;
    }
};

template <std::size_t N>
struct CMat {
    std::array<cx, N * N> a{};

    cx& operator()(std::size_t r, std::size_t c) { return a[r * N + c]; }
    const cx& operator()(std::size_t r, std::size_t c) const { return a[r * N + c]; }

    static CMat identity() {
        CMat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    CMat& operator+=(const CMat& o) {
        for (std::size_t i = 0; i < N * N; ++i) a[i] += o.a[i];
        return *this;
    }
    CMat& operator-=(const CMat& o) {
        for (std::size_t i = 0; i < N * N; ++i) a[i] -= o.a[i];
        return *this;
    }
    CMat& operator*=(cx s) {
        for (cx& z : a) z *= s;
        return *this;
    }
    friend CMat operator+(CMat l, const CMat& r) { return l += r; }
    friend CMat operator-(CMat l, const CMat& r) { return l -= r; }
    friend CMat operator*(CMat l, cx s) { return l *= s; }
    friend CMat operator*(cx s, CMat r) { return r *= s; }
};

template <std::size_t N>
CMat<N> matmul(const CMat<N>& x, const CMat<N>& y) {
    CMat<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k) {
            const cx xik = x(i, k);
            if (xik == cx{}) continue;
            for (std::size_t j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

template <std::size_t N>
CMat<N> adjoint(const CMat<N>& m) {
    CMat<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

template <std::size_t N>
cx trace(const CMat<N>& m) {
    cx t{};
    for (std::size_t i = 0; i < N; ++i) t += m(i, i);
    return t;
}

template <std::size_t N>
double max_abs_entry(const CMat<N>& m) {
    double r = 0.0;
    for (const cx& z : m.a) r = std::max(r, std::abs(z));
    return r;
}

template <std::size_t N>
double hermiticity_defect(const CMat<N>& m) {
    double d = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
    return d;
}

inline CMat<4> kron(const CMat<2>& x, const CMat<2>& y) {
    CMat<4> r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = x(i, j) * y(k, l);
    return r;
}

template <std::size_t N>
CMat<N> outer(const CVec<N>& x) {
    CMat<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = x[i] * std::conj(x[j]);
    return r;
}

// Cyclic Jacobi eigensolver for a real symmetric matrix, row-major storage.
// Eigenvalues land in `evals` ascending; eigenvectors, if requested, are the
// columns of `evecs`.
template <std::size_t M>
void jacobi_eigh(std::array<double, M * M> a, std::array<double, M>& evals,
                 std::array<double, M * M>* evecs = nullptr) {
    std::array<double, M * M> v{};
    for (std::size_t i = 0; i < M; ++i) v[i * M + i] = 1.0;

    auto off_norm = [&a]() {
        double s = 0.0;
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = i + 1; j < M; ++j) s += a[i * M + j] * a[i * M + j];
        return s;
    };
    double scale = 0.0;
    for (double x : a) scale = std::max(scale, std::abs(x));
    const double stop = std::max(scale * scale * 1e-32, 1e-300);

    for (int sweep = 0; sweep < 100 && off_norm() > stop; ++sweep) {
        for (std::size_t p = 0; p < M; ++p) {
            for (std::size_t q = p + 1; q < M; ++q) {
                const double apq = a[p * M + q];
                if (apq == 0.0) continue;
                const double app = a[p * M + p];
                const double aqq = a[q * M + q];
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < M; ++k) {
                    const double akp = a[k * M + p];
                    const double akq = a[k * M + q];
                    a[k * M + p] = c * akp - s * akq;
                    a[k * M + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < M; ++k) {
                    const double apk = a[p * M + k];
                    const double aqk = a[q * M + k];
                    a[p * M + k] = c * apk - s * aqk;
                    a[q * M + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < M; ++k) {
                    const double vkp = v[k * M + p];
                    const double vkq = v[k * M + q];
                    v[k * M + p] = c * vkp - s * vkq;
                    v[k * M + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::array<std::size_t, M> order{};
    for (std::size_t i = 0; i < M; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&a](std::size_t x, std::size_t y) { return a[x * M + x] < a[y * M + y]; });
    std::array<double, M * M> vs{};
    for (std::size_t i = 0; i < M; ++i) {
        evals[i] = a[order[i] * M + order[i]];
        for (std::size_t k = 0; k < M; ++k) vs[k * M + i] = v[k * M + order[i]];
    }
    if (evecs) *evecs = vs;
}

// Real-symmetric embedding of a complex Hermitian matrix H = A + iB:
// [[A, -B], [B, A]]. Its spectrum is that of H with every eigenvalue doubled.
template <std::size_t N>
std::array<double, 4 * N * N> embed_hermitian(const CMat<N>& h) {
    std::array<double, 4 * N * N> e{};
    const std::size_t M = 2 * N;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            const double re = h(i, j).real();
            const double im = h(i, j).imag();
            e[i * M + j] = re;
            e[(i + N) * M + (j + N)] = re;
            e[i * M + (j + N)] = -im;
            e[(i + N) * M + j] = im;
        }
    return e;
}

// Eigenvalues of a complex Hermitian matrix, ascending.
template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const CMat<N>& h) {
    auto e = embed_hermitian(h);
    std::array<double, 2 * N> evals{};
    jacobi_eigh<2 * N>(e, evals);
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = evals[2 * i];  // doubled spectrum
    return out;
}

// Principal square root of a Hermitian positive semidefinite matrix.
// Eigenvalues slightly below zero (roundoff) are clamped to zero.
template <std::size_t N>
CMat<N> hermitian_sqrt(const CMat<N>& h) {
    auto e = embed_hermitian(h);
    const std::size_t M = 2 * N;
    std::array<double, 2 * N> evals{};
    std::array<double, 4 * N * N> vecs{};
    jacobi_eigh<2 * N>(e, evals, &vecs);

    std::array<double, 4 * N * N> s{};
    for (std::size_t c = 0; c < M; ++c) {
        const double lam = std::sqrt(std::max(evals[c], 0.0));
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = 0; j < M; ++j) s[i * M + j] += lam * vecs[i * M + c] * vecs[j * M + c];
    }
    CMat<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = cx{s[i * M + j], s[(i + N) * M + j]};
    return r;
}

// Singular values, ascending (square matrices only).
template <std::size_t N>
std::array<double, N> singular_values(const CMat<N>& m) {
    const CMat<N> gram = matmul(adjoint(m), m);
    auto ev = hermitian_eigenvalues(gram);
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = std::sqrt(std::max(ev[i], 0.0));
    return out;
}

}  // namespace dualent
