#include "gssf/soliton.hpp"

#include <cmath>

#include "gssf/linalg.hpp"
#include "gssf/local_geometry.hpp"
#include "gssf/riemann.hpp"
#include "gssf/contact.hpp"
#include "gssf/subman.hpp"

namespace gssf {

double metric_norm(std::span<const double> ginv, std::span<const double> t, int k) {
    const auto K = static_cast<std::size_t>(k);
    double s = 0.0;
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) {
            for (std::size_t c = 0; c < K; ++c) {
                for (std::size_t d = 0; d < K; ++d) s += ginv[a * K + c] * ginv[b * K + d] * t[a * K + b] * t[c * K + d];
            }
        }
    }
    return std::sqrt(std::max(0.0, s));
}

namespace {

using Vec = std::vector<double>;

}  // namespace

SolitonFit soliton_fit(const Immersion& imm, std::span<const double> u, ConnectionKind kind) {
    auto L = LocalGeometry::build(imm, u);
    const int k = L.k;
    const auto K = static_cast<std::size_t>(k);
    const auto M = static_cast<std::size_t>(L.m);
    if (value_norm(values(L.g), L.normal_part(L.xi)) > 1e-8) {
        throw Error(ErrorKind::Precondition, "xi is not tangent to the submanifold");
    }
    Vec G = values(L.G), Ginv = values(L.Ginv);
    JetVec xiT = L.tangent_coeffs(L.xi);
    Vec xv = values(xiT);
    JetVec etaE(K);
    for (std::size_t b = 0; b < K; ++b) {
        J1 s(0.0);
        for (std::size_t i = 0; i < M; ++i) s = s + L.eta[i] * L.E[b][i];
        etaE[b] = s;
    }
    Vec ev = values(etaE);
    double eta_xi = 0.0;
    for (std::size_t b = 0; b < K; ++b) eta_xi += ev[b] * xv[b];

    // nabla_a xi ^ d
    Vec nx(K * K, 0.0);
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t d = 0; d < K; ++d) {
            double v = xiT[d].derivative(static_cast<int>(a)).value();
            for (std::size_t b = 0; b < K; ++b) v += L.gamma_ind[(d * K + a) * K + b].value() * xv[b];
            if (kind == ConnectionKind::SemiSymmetricMetric) v += (a == d ? eta_xi : 0.0) - ev[a] * xv[d];
            nx[a * K + d] = v;
        }
    }
    Vec lie(K * K, 0.0);
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) {
            double v = 0.0;
            for (std::size_t d = 0; d < K; ++d) v += nx[a * K + d] * G[d * K + b] + G[a * K + d] * nx[b * K + d];
            lie[a * K + b] = v;
        }
    }

    SolitonFit fit;
    fit.connection_kind = kind;
    fit.n_sub = n_sub(k);
    Vec S = L.ricci_ind;
    fit.levi_civita_ricci = MultiArray({K, K}, L.ricci_ind);
    if (kind == ConnectionKind::SemiSymmetricMetric) {
        JetVec gt = L.slot_christoffel(Connection::SemiSymmetric);
        Vec alpha(K * K);
        for (std::size_t a = 0; a < K; ++a) {
            for (std::size_t b = 0; b < K; ++b) {
                double v = etaE[b].derivative(static_cast<int>(a)).value();
                for (std::size_t d = 0; d < K; ++d) v -= gt[(d * K + a) * K + b].value() * ev[d];
                alpha[a * K + b] = v + 0.5 * G[a * K + b];
            }
        }
        fit.a = metric_trace<double>(Ginv, alpha, k);
        for (std::size_t q = 0; q < K * K; ++q) S[q] -= (2.0 * fit.n_sub - 1.0) * alpha[q] + fit.a * G[q];
        fit.alpha = MultiArray({K, K}, alpha);
    }
    Vec base(K * K);
    for (std::size_t q = 0; q < K * K; ++q) base[q] = lie[q] + 2.0 * S[q];
    fit.lambda = -metric_trace<double>(Ginv, base, k) / (2.0 * k);
    for (std::size_t q = 0; q < K * K; ++q) base[q] += 2.0 * fit.lambda * G[q];
    fit.residual = metric_norm(Ginv, base, k);
    fit.lie_derivative = MultiArray({K, K}, lie);
    fit.ricci = MultiArray({K, K}, S);
    fit.metric = MultiArray({K, K}, G);
    fit.eta = MultiArray({K}, ev);
    return fit;
}

double ssmc_nabla_xi_residual(const Immersion& imm, std::span<const double> u, double d) {
    auto L = LocalGeometry::build(imm, u);
    const auto K = static_cast<std::size_t>(L.k);
    if (value_norm(values(L.g), L.normal_part(L.xi)) > 1e-8) {
        throw Error(ErrorKind::Precondition, "xi is not tangent to the submanifold");
    }
    JetVec xiT = L.tangent_coeffs(L.xi);
    Vec xv = values(xiT);
    JetVec gt = L.slot_christoffel(Connection::SemiSymmetric);
    Vec G = values(L.G);
    auto s = unit_scales(G, L.k);
    Vec ev(K, 0.0);
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) ev[a] += G[a * K + b] * xv[b];
    }
    double sup = 0.0;
    for (std::size_t a = 0; a < K; ++a) {
        Vec phiT = values(L.tangent_coeffs(L.phi_of(L.E[a])));
        Vec v(K);
        for (std::size_t dd = 0; dd < K; ++dd) {
            double w = xiT[dd].derivative(static_cast<int>(a)).value();
            for (std::size_t b = 0; b < K; ++b) w += gt[(dd * K + a) * K + b].value() * xv[b];
            v[dd] = w - ((a == dd ? 1.0 : 0.0) - ev[a] * xv[dd] - d * phiT[dd]);
        }
        double n2 = 0.0;
        for (std::size_t x = 0; x < K; ++x) {
            for (std::size_t y = 0; y < K; ++y) n2 += G[x * K + y] * v[x] * v[y];
        }
        sup = std::max(sup, std::sqrt(std::max(0.0, n2)) * s[a]);
    }
    return sup;
}

double einstein_residual(const SolitonFit& fit) {
    if (fit.connection_kind != ConnectionKind::LeviCivita) {
        throw Error(ErrorKind::Precondition, "Einstein residual needs a Levi-Civita fit");
    }
    const int k = static_cast<int>(fit.metric.shape()[0]);
    const auto K = static_cast<std::size_t>(k);
    auto Ginv = linalg::inverse<double>(fit.metric.components(), k);
    Vec t(K * K);
    for (std::size_t q = 0; q < K * K; ++q) t[q] = fit.ricci[q] + fit.lambda * fit.metric[q];
    return metric_norm(Ginv, t, k) / (1.0 + metric_norm(Ginv, fit.ricci.components(), k));
}

EinsteinDecomposition pseudo_eta_einstein_residual(const Immersion& imm, std::span<const double> u, const SolitonFit& fit) {
    if (fit.connection_kind != ConnectionKind::SemiSymmetricMetric) {
        throw Error(ErrorKind::Precondition, "pseudo eta-Einstein decomposition needs a semi-symmetric fit");
    }
    if (static_cast<int>(u.size()) != imm.map.domain_dim()) throw Error(ErrorKind::Shape, "parameter point has the wrong length");
    const int k = static_cast<int>(fit.metric.shape()[0]);
    const auto K = static_cast<std::size_t>(k);
    auto G = fit.metric.components();
    auto Ginv = linalg::inverse<double>(G, k);
    auto S = fit.levi_civita_ricci.components();
    auto eta = fit.eta.components();

    EinsteinDecomposition out;
    out.soliton_residual = fit.residual;
    Vec t(K * K);
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) {
            const std::size_t q = a * K + b;
            t[q] = S[q] - ((fit.a - fit.lambda - 1.0) * G[q] + eta[a] * eta[b] + (2.0 * fit.n_sub - 1.0) * fit.alpha[q]);
        }
    }
    out.explicit_residual = metric_norm(Ginv, t, k);

    // projection onto span{g, eta x eta}; remainder restricted to ker eta
    Vec xi(K, 0.0);
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) xi[a] += Ginv[a * K + b] * eta[b];
    }
    const double r = metric_trace<double>(Ginv, S, k);
    double sxx = 0.0;
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) sxx += S[a * K + b] * xi[a] * xi[b];
    }
    out.p_coef = (r - sxx) / (k - 1);
    out.q_coef = sxx - out.p_coef;
    Vec D(K * K), P(K * K), rest(K * K, 0.0), mixed(K * K);
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) {
            D[a * K + b] = S[a * K + b] - out.p_coef * G[a * K + b] - out.q_coef * eta[a] * eta[b];
            P[a * K + b] = (a == b ? 1.0 : 0.0) - xi[a] * eta[b];  // P^a_b
        }
    }
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) {
            double v = 0.0;
            for (std::size_t c = 0; c < K; ++c) {
                for (std::size_t d = 0; d < K; ++d) v += P[c * K + a] * P[d * K + b] * D[c * K + d];
            }
            rest[a * K + b] = v;
        }
    }
    for (std::size_t q = 0; q < K * K; ++q) mixed[q] = D[q] - rest[q];
    out.s_coef = metric_norm(Ginv, rest, k);
    out.residual = metric_norm(Ginv, mixed, k);
    return out;
}

}  // namespace gssf
