#include "gssf/riemann.hpp"

#include <string>

namespace gssf {

namespace {

std::vector<double> checked_metric(const MetricField& M, std::span<const double> p) {
    if (static_cast<int>(p.size()) != M.dim) {
        throw Error(ErrorKind::Shape, "point has length " + std::to_string(p.size()) + ", metric lives in dimension " +
                                          std::to_string(M.dim));
    }
    auto g = M.g(p);
    linalg::check_metric(g, M.dim);
    return g;
}

}  // namespace

ChristoffelJet christoffel_jet(const MetricField& M, std::span<const double> p) {
    const int m = M.dim;
    const auto U = static_cast<std::size_t>(m);
    ChristoffelJet out;
    out.g = checked_metric(M, p);
    out.ginv = linalg::inverse<double>(out.g, m);

    auto vars = jet_variables<double>(p, 2);
    auto gj = M.g(std::span<const J1>(vars));
    for (const auto& c : gj) {
        if (!all_finite(c)) throw Error(ErrorKind::NumericDomain, "metric derivatives are not finite");
    }
    out.dg.resize(U * U * U);
    for (std::size_t l = 0; l < U; ++l) {
        for (std::size_t ij = 0; ij < U * U; ++ij) {
            out.dg[l * U * U + ij] = gj[ij].derivative(static_cast<int>(l)).value();
        }
    }
    auto gamma = christoffel_from_jets<double>(gj, m, 2);
    out.gamma.resize(gamma.size());
    out.dgamma.resize(U * gamma.size());
    for (std::size_t a = 0; a < gamma.size(); ++a) {
        out.gamma[a] = gamma[a].value();
        for (std::size_t i = 0; i < U; ++i) out.dgamma[i * gamma.size() + a] = gamma[a].derivative(static_cast<int>(i)).value();
    }
    return out;
}

MultiArray christoffel(const MetricField& M, std::span<const double> p) {
    const auto U = static_cast<std::size_t>(M.dim);
    checked_metric(M, p);
    auto gamma = christoffel_at<double>(M, p);
    MultiArray out({U, U, U}, std::move(gamma));
    out.require_finite("christoffel symbols");
    return out;
}

CurvatureBundle riemann_tensor(const MetricField& M, std::span<const double> p) {
    const int m = M.dim;
    const auto U = static_cast<std::size_t>(m);
    auto cj = christoffel_jet(M, p);
    auto R = riemann_from_christoffel<double>(cj.gamma, cj.dgamma, m);
    std::vector<double> R04(R.size(), 0.0);
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t j = 0; j < U; ++j) {
            for (std::size_t k = 0; k < U; ++k) {
                for (std::size_t l = 0; l < U; ++l) {
                    double s = 0.0;
                    for (std::size_t a = 0; a < U; ++a) s += R[a * U * U * U + i * U * U + j * U + k] * cj.g[a * U + l];
                    R04[i * U * U * U + j * U * U + k * U + l] = s;
                }
            }
        }
    }
    auto S = ricci_from_riemann<double>(R, m);
    CurvatureBundle b;
    b.scalar = metric_trace<double>(cj.ginv, S, m);
    b.christoffel = MultiArray({U, U, U}, std::move(cj.gamma));
    b.riemann13 = MultiArray({U, U, U, U}, std::move(R));
    b.riemann04 = MultiArray({U, U, U, U}, std::move(R04));
    b.ricci = MultiArray({U, U}, std::move(S));
    b.riemann13.require_finite("curvature");
    return b;
}

std::pair<MultiArray, double> ricci_scalar(const MetricField& M, std::span<const double> p) {
    auto b = riemann_tensor(M, p);
    return {std::move(b.ricci), b.scalar};
}

std::vector<double> concircular_from(std::span<const double> R13, std::span<const double> g, double scalar, int m) {
    if (m % 2 == 0) {
        throw Error(ErrorKind::Dimension, "concircular normalization needs odd dimension, got " + std::to_string(m));
    }
    const auto U = static_cast<std::size_t>(m);
    const double c = scalar / (double(m) * double(m - 1));
    std::vector<double> C(R13.begin(), R13.end());
    for (std::size_t l = 0; l < U; ++l) {
        for (std::size_t i = 0; i < U; ++i) {
            for (std::size_t j = 0; j < U; ++j) {
                for (std::size_t k = 0; k < U; ++k) {
                    double w = (l == i ? g[j * U + k] : 0.0) - (l == j ? g[i * U + k] : 0.0);
                    C[l * U * U * U + i * U * U + j * U + k] -= c * w;
                }
            }
        }
    }
    return C;
}

MultiArray concircular(const MetricField& M, std::span<const double> p) {
    if (M.dim % 2 == 0) {
        throw Error(ErrorKind::Dimension, "concircular normalization needs odd dimension, got " + std::to_string(M.dim));
    }
    auto b = riemann_tensor(M, p);
    auto g = M.g(p);
    auto C = concircular_from(b.riemann13.components(), g, b.scalar, M.dim);
    const auto U = static_cast<std::size_t>(M.dim);
    return MultiArray({U, U, U, U}, std::move(C));
}

MultiArray lie_derivative_metric(const MetricField& M, const SmoothMap& V, std::span<const double> p) {
    const int m = M.dim;
    const auto U = static_cast<std::size_t>(m);
    if (V.domain_dim() != m || V.codomain_dim() != m) throw Error(ErrorKind::Shape, "vector field must map R^m to R^m");
    auto g = checked_metric(M, p);
    auto gamma = christoffel_at<double>(M, p);
    auto vars = jet_variables<double>(p, 1);
    auto vj = V(std::span<const J1>(vars));
    // nabla_i V^a = d_i V^a + Gamma^a_ib V^b
    std::vector<double> nv(U * U, 0.0);
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t a = 0; a < U; ++a) {
            double s = vj[a].derivative(static_cast<int>(i)).value();
            for (std::size_t b = 0; b < U; ++b) s += gamma[a * U * U + i * U + b] * vj[b].value();
            nv[i * U + a] = s;
        }
    }
    std::vector<double> L(U * U, 0.0);
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t j = 0; j < U; ++j) {
            double s = 0.0;
            for (std::size_t a = 0; a < U; ++a) s += nv[i * U + a] * g[a * U + j] + g[i * U + a] * nv[j * U + a];
            L[i * U + j] = s;
        }
    }
    MultiArray out({U, U}, std::move(L));
    out.require_finite("lie derivative");
    return out;
}

}  // namespace gssf
