#pragma once

// Levi-Civita connection and curvature of a chart metric.
//
// Index conventions (all row-major):
//   christoffel  [k][i][j]    = Gamma^k_ij, nabla_{d_i} d_j = Gamma^k_ij d_k
//   riemann13    [l][i][j][k] = R^l_ijk,   R(X,Y)Z = R^l_ijk X^i Y^j Z^k d_l
//   riemann04    [i][j][k][l] = g(R(d_i,d_j)d_k, d_l)
//   ricci        [j][k]       = R^i_ijk
// with R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^l_is Gamma^s_jk - Gamma^l_js Gamma^s_ik.

#include <span>
#include <utility>
#include <vector>

#include "gssf/jet.hpp"
#include "gssf/linalg.hpp"
#include "gssf/multi_array.hpp"
#include "gssf/smooth_map.hpp"

namespace gssf {

/// g maps a chart point to the m*m row-major metric matrix.
struct MetricField {
    int dim = 0;
    SmoothMap g;
};

struct CurvatureBundle {
    MultiArray christoffel;
    MultiArray riemann13;
    MultiArray riemann04;
    MultiArray ricci;
    double scalar = 0.0;
};

/// Christoffel symbols from metric jets of order >= 1 over the m chart
/// variables. The result has one order less.
template <class S>
std::vector<Jet<S>> christoffel_from_jets(std::span<const Jet<S>> g, int m, int order) {
    const auto M = static_cast<std::size_t>(m);
    std::vector<Jet<S>> low(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) low[i] = g[i].truncated(order - 1);
    auto ginv = linalg::inverse<Jet<S>>(low, m);
    std::vector<Jet<S>> dg(M * M * M);
    for (std::size_t l = 0; l < M; ++l) {
        for (std::size_t ij = 0; ij < M * M; ++ij) dg[l * M * M + ij] = g[ij].derivative(static_cast<int>(l));
    }
    // First kind: c[l][i][j] = (d_i g_jl + d_j g_il - d_l g_ij) / 2
    std::vector<Jet<S>> first(M * M * M);
    for (std::size_t l = 0; l < M; ++l) {
        for (std::size_t i = 0; i < M; ++i) {
            for (std::size_t j = i; j < M; ++j) {
                Jet<S> c = (dg[i * M * M + j * M + l] + dg[j * M * M + i * M + l] - dg[l * M * M + i * M + j]) * 0.5;
                first[l * M * M + i * M + j] = c;
                first[l * M * M + j * M + i] = c;
            }
        }
    }
    std::vector<Jet<S>> gamma(M * M * M, Jet<S>(0.0));
    for (std::size_t k = 0; k < M; ++k) {
        for (std::size_t i = 0; i < M; ++i) {
            for (std::size_t j = i; j < M; ++j) {
                Jet<S> s(0.0);
                for (std::size_t l = 0; l < M; ++l) {
                    if (linalg::all_zero(first[l * M * M + i * M + j])) continue;
                    s = s + ginv[k * M + l] * first[l * M * M + i * M + j];
                }
                gamma[k * M * M + i * M + j] = s;
                gamma[k * M * M + j * M + i] = s;
            }
        }
    }
    return gamma;
}

/// Metric components at a point given by double or jet coordinates.
template <class T>
std::vector<T> metric_at(const MetricField& M, std::span<const T> x) {
    return M.g(x);
}

/// Christoffel symbols at a point whose coordinates are doubles or jets.
template <class T>
std::vector<T> christoffel_at(const MetricField& M, std::span<const T> x) {
    auto vars = jet_variables<T>(x, 1);
    auto g = M.g(std::span<const Jet<T>>(vars));
    auto gamma = christoffel_from_jets<T>(g, M.dim, 1);
    std::vector<T> out(gamma.size());
    for (std::size_t i = 0; i < gamma.size(); ++i) out[i] = gamma[i].value();
    return out;
}

/// Curvature (1,3) tensor from Christoffel symbols and their derivatives
/// dgamma[i][l][j][k] = d_i Gamma^l_jk. The connection need not be symmetric.
template <class T>
std::vector<T> riemann_from_christoffel(std::span<const T> gamma, std::span<const T> dgamma, int m) {
    const auto M = static_cast<std::size_t>(m);
    const std::size_t M2 = M * M, M3 = M2 * M;
    std::vector<T> R(M3 * M, T(0.0));
    for (std::size_t l = 0; l < M; ++l) {
        for (std::size_t i = 0; i < M; ++i) {
            for (std::size_t j = 0; j < M; ++j) {
                for (std::size_t k = 0; k < M; ++k) {
                    T r = dgamma[i * M3 + l * M2 + j * M + k] - dgamma[j * M3 + l * M2 + i * M + k];
                    for (std::size_t s = 0; s < M; ++s) {
                        r = r + gamma[l * M2 + i * M + s] * gamma[s * M2 + j * M + k] -
                            gamma[l * M2 + j * M + s] * gamma[s * M2 + i * M + k];
                    }
                    R[l * M3 + i * M2 + j * M + k] = r;
                }
            }
        }
    }
    return R;
}

/// Ricci tensor S_jk = R^i_ijk.
template <class T>
std::vector<T> ricci_from_riemann(std::span<const T> R, int m) {
    const auto M = static_cast<std::size_t>(m);
    std::vector<T> S(M * M, T(0.0));
    for (std::size_t j = 0; j < M; ++j) {
        for (std::size_t k = 0; k < M; ++k) {
            T s(0.0);
            for (std::size_t i = 0; i < M; ++i) s = s + R[i * M * M * M + i * M * M + j * M + k];
            S[j * M + k] = s;
        }
    }
    return S;
}

/// Trace of a (0,2) tensor against the inverse metric.
template <class T>
T metric_trace(std::span<const T> ginv, std::span<const T> a, int m) {
    const auto M = static_cast<std::size_t>(m);
    T s(0.0);
    for (std::size_t i = 0; i < M * M; ++i) s = s + ginv[i] * a[i];
    return s;
}

/// Christoffel symbols and their first derivatives at a double point.
struct ChristoffelJet {
    std::vector<double> gamma;   // [k][i][j]
    std::vector<double> dgamma;  // [i][k][a][b]
    std::vector<double> g, ginv, dg;  // dg[l][i][j]
};
ChristoffelJet christoffel_jet(const MetricField& M, std::span<const double> p);

MultiArray christoffel(const MetricField& M, std::span<const double> p);
CurvatureBundle riemann_tensor(const MetricField& M, std::span<const double> p);
std::pair<MultiArray, double> ricci_scalar(const MetricField& M, std::span<const double> p);
/// (1,3) concircular tensor, same layout as riemann13. Needs odd dimension.
MultiArray concircular(const MetricField& M, std::span<const double> p);
MultiArray lie_derivative_metric(const MetricField& M, const SmoothMap& V, std::span<const double> p);

/// C^l_ijk = R^l_ijk - r / (m (m - 1)) (g_jk delta^l_i - g_ik delta^l_j).
std::vector<double> concircular_from(std::span<const double> R13, std::span<const double> g, double scalar, int m);

}  // namespace gssf
