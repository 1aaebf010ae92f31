#pragma once

// Small dense helpers that work for double and jet scalars alike. Matrices are
// row-major std::vector<T> of size n*n.

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "gssf/error.hpp"
#include "gssf/jet.hpp"

namespace gssf::linalg {

inline bool all_zero(double x) { return x == 0.0; }
template <class S>
bool all_zero(const Jet<S>& x) {
    for (const auto& c : x.coefficients()) {
        if (!all_zero(c)) return false;
    }
    return true;
}

template <class T>
std::vector<T> inverse(std::span<const T> a, int n) {
    const auto N = static_cast<std::size_t>(n);
    std::vector<T> m(a.begin(), a.end());
    std::vector<T> inv(N * N, T(0.0));
    for (std::size_t i = 0; i < N; ++i) inv[i * N + i] = T(1.0);
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        double best = std::abs(value_of(m[col * N + col]));
        for (std::size_t r = col + 1; r < N; ++r) {
            double v = std::abs(value_of(m[r * N + col]));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) throw Error(ErrorKind::DegenerateMetric, "singular matrix in inversion");
        if (piv != col) {
            for (std::size_t c = 0; c < N; ++c) {
                std::swap(m[col * N + c], m[piv * N + c]);
                std::swap(inv[col * N + c], inv[piv * N + c]);
            }
        }
        T pinv = recip(m[col * N + col]);
        for (std::size_t c = 0; c < N; ++c) {
            m[col * N + c] = m[col * N + c] * pinv;
            inv[col * N + c] = inv[col * N + c] * pinv;
        }
        for (std::size_t r = 0; r < N; ++r) {
            if (r == col) continue;
            T f = m[r * N + col];
            if (value_of(f) == 0.0 && all_zero(f)) continue;
            for (std::size_t c = 0; c < N; ++c) {
                m[r * N + c] = m[r * N + c] - f * m[col * N + c];
                inv[r * N + c] = inv[r * N + c] - f * inv[col * N + c];
            }
        }
    }
    return inv;
}

/// g(u, v) for a metric given as an n*n matrix.
template <class T>
T inner(std::span<const T> g, std::span<const T> u, std::span<const T> v) {
    const std::size_t n = u.size();
    T s(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (all_zero(u[i])) continue;
        T row(0.0);
        for (std::size_t j = 0; j < n; ++j) row = row + g[i * n + j] * v[j];
        s = s + u[i] * row;
    }
    return s;
}

template <class T>
std::vector<T> mat_vec(std::span<const T> a, std::span<const T> v) {
    const std::size_t n = v.size();
    const std::size_t rows = a.size() / n;
    std::vector<T> out(rows, T(0.0));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < n; ++j) out[i] = out[i] + a[i * n + j] * v[j];
    }
    return out;
}

/// Symmetric, positive definite and well conditioned, else DegenerateMetric.
void check_metric(std::span<const double> g, int n, double max_condition = 1e12);

/// 1-norm condition number of a square matrix (infinity when singular).
double condition_number(std::span<const double> a, int n);

}  // namespace gssf::linalg
