#include "gssf/local_geometry.hpp"

#include <cmath>
#include <string>

#include "gssf/frames.hpp"
#include "gssf/linalg.hpp"
#include "gssf/riemann.hpp"

namespace gssf {

JetVec derivative(const JetVec& v, int var) {
    JetVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].derivative(var);
    return out;
}

std::vector<double> values(const JetVec& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].value();
    return out;
}

double value_norm(std::span<const double> g, const JetVec& v) {
    auto w = values(v);
    return std::sqrt(std::max(0.0, linalg::inner<double>(g, w, w)));
}

void require_invariant(const LocalGeometry& L, double tol) {
    const auto K = static_cast<std::size_t>(L.k);
    auto gv = values(L.g);
    JetVec xiN = L.normal_part(L.xi);
    if (value_norm(gv, xiN) > tol) throw Error(ErrorKind::ClassificationMismatch, "xi is not tangent to the submanifold");
    for (std::size_t a = 0; a < K; ++a) {
        const double s = 1.0 / std::sqrt(L.G[a * K + a].value());
        if (value_norm(gv, L.normal_part(L.phi_of(L.E[a]))) * s > tol) {
            throw Error(ErrorKind::ClassificationMismatch, "submanifold is not invariant under phi");
        }
    }
}

namespace {

JetVec add(const JetVec& a, const JetVec& b) {
    JetVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

}  // namespace

LocalGeometry LocalGeometry::build(const Immersion& imm, std::span<const double> u) {
    const AmbientModel& amb = *imm.ambient;
    LocalGeometry L;
    L.k = imm.map.domain_dim();
    L.m = amb.dim;
    if (static_cast<int>(u.size()) != L.k) {
        throw Error(ErrorKind::Shape, "parameter point has length " + std::to_string(u.size()) + ", expected " +
                                          std::to_string(L.k));
    }
    const auto K = static_cast<std::size_t>(L.k);
    const auto M = static_cast<std::size_t>(L.m);
    L.u.assign(u.begin(), u.end());

    auto vars = jet_variables<double>(u, 4);
    auto Y = imm.map(std::span<const J1>(vars));
    for (const auto& y : Y) {
        if (!all_finite(y)) throw Error(ErrorKind::NumericDomain, "immersion evaluation is not finite");
    }
    L.x.resize(M);
    L.p.resize(M);
    for (std::size_t i = 0; i < M; ++i) {
        L.x[i] = Y[i].truncated(2);
        L.p[i] = Y[i].value();
    }
    L.E.assign(K, JetVec(M));
    L.D2.assign(K * K, JetVec(M));
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t i = 0; i < M; ++i) {
            J1 d = Y[i].derivative(static_cast<int>(a));
            L.E[a][i] = d.truncated(2);
            for (std::size_t b = a; b < K; ++b) {
                J1 dd = d.derivative(static_cast<int>(b));
                L.D2[a * K + b][i] = dd;
                L.D2[b * K + a][i] = dd;
            }
        }
    }

    L.ambient = evaluate_ambient(amb, L.p);
    std::span<const J1> xs(L.x);
    L.g = amb.metric.g(xs);
    L.gamma = christoffel_at<J1>(amb.metric, xs);
    L.phi = amb.structure.phi(xs);
    L.xi = amb.structure.xi(xs);
    L.eta = amb.structure.eta(xs);

    L.G.assign(K * K, J1(0.0));
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = a; b < K; ++b) {
            J1 v = L.inner(L.E[a], L.E[b]);
            L.G[a * K + b] = v;
            L.G[b * K + a] = v;
        }
    }
    auto Gv = values(L.G);
    if (!(linalg::condition_number(Gv, L.k) < 1e12)) {
        throw Error(ErrorKind::ImmersionDegenerate, "Jacobian is rank deficient at the parameter point");
    }
    L.Ginv = linalg::inverse<J1>(L.G, L.k);
    L.gamma_ind = christoffel_from_jets<double>(L.G, L.k, 2);

    try {
        auto fr = orthonormal_frames<J1>(L.g, L.E);
        L.T = std::move(fr.tangent);
        L.N = std::move(fr.normal);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DegenerateFrame) throw Error(ErrorKind::ImmersionDegenerate, e.what());
        throw;
    }

    L.h.assign(K * K, JetVec());
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = a; b < K; ++b) {
            JetVec v = L.normal_part(add(L.D2[a * K + b], L.gamma_bar(L.E[a], L.E[b])));
            L.h[a * K + b] = v;
            L.h[b * K + a] = v;
        }
    }

    std::vector<double> gi(L.gamma_ind.size()), dgi(K * L.gamma_ind.size());
    for (std::size_t q = 0; q < L.gamma_ind.size(); ++q) {
        gi[q] = L.gamma_ind[q].value();
        for (std::size_t i = 0; i < K; ++i) dgi[i * L.gamma_ind.size() + q] = L.gamma_ind[q].derivative(static_cast<int>(i)).value();
    }
    L.R_ind = riemann_from_christoffel<double>(gi, dgi, L.k);
    L.ricci_ind = ricci_from_riemann<double>(L.R_ind, L.k);
    L.scalar_ind = metric_trace<double>(values(L.Ginv), L.ricci_ind, L.k);
    return L;
}

J1 LocalGeometry::inner(const JetVec& a, const JetVec& b) const { return linalg::inner<J1>(g, a, b); }

JetVec LocalGeometry::gamma_bar(const JetVec& X, const JetVec& Y) const {
    const auto M = static_cast<std::size_t>(m);
    JetVec out(M, J1(0.0));
    for (std::size_t c = 0; c < M; ++c) {
        J1 s(0.0);
        for (std::size_t i = 0; i < M; ++i) {
            if (linalg::all_zero(X[i])) continue;
            for (std::size_t j = 0; j < M; ++j) {
                const J1& G = gamma[c * M * M + i * M + j];
                if (linalg::all_zero(G)) continue;
                s = s + G * X[i] * Y[j];
            }
        }
        out[c] = s;
    }
    return out;
}

JetVec LocalGeometry::tangent_coeffs(const JetVec& V) const {
    const auto K = static_cast<std::size_t>(k);
    JetVec w(K);
    for (std::size_t b = 0; b < K; ++b) w[b] = inner(E[b], V);
    JetVec c(K, J1(0.0));
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) c[a] = c[a] + Ginv[a * K + b] * w[b];
    }
    return c;
}

JetVec LocalGeometry::combine(const JetVec& coeffs) const {
    const auto M = static_cast<std::size_t>(m);
    JetVec out(M, J1(0.0));
    for (std::size_t a = 0; a < coeffs.size(); ++a) {
        for (std::size_t i = 0; i < M; ++i) out[i] = out[i] + coeffs[a] * E[a][i];
    }
    return out;
}

JetVec LocalGeometry::tangent_part(const JetVec& V) const { return combine(tangent_coeffs(V)); }

JetVec LocalGeometry::normal_part(const JetVec& V) const {
    JetVec t = tangent_part(V);
    JetVec out(V.size());
    for (std::size_t i = 0; i < V.size(); ++i) out[i] = V[i] - t[i];
    return out;
}

JetVec LocalGeometry::phi_of(const JetVec& V) const {
    const auto M = static_cast<std::size_t>(m);
    JetVec out(M, J1(0.0));
    for (std::size_t a = 0; a < M; ++a) {
        for (std::size_t b = 0; b < M; ++b) {
            if (linalg::all_zero(phi[a * M + b])) continue;
            out[a] = out[a] + phi[a * M + b] * V[b];
        }
    }
    return out;
}

JetVec LocalGeometry::slot_christoffel(Connection c) const {
    if (c == Connection::LeviCivita) return gamma_ind;
    // tangential part of eta(Y)X - g(X,Y)xi added to the induced connection
    const auto K = static_cast<std::size_t>(k);
    JetVec out = gamma_ind;
    JetVec xiT = tangent_coeffs(xi);
    JetVec etaE(K);
    for (std::size_t b = 0; b < K; ++b) {
        J1 s(0.0);
        for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i) s = s + eta[i] * E[b][i];
        etaE[b] = s;
    }
    for (std::size_t d = 0; d < K; ++d) {
        for (std::size_t a = 0; a < K; ++a) {
            for (std::size_t b = 0; b < K; ++b) {
                J1 v = out[d * K * K + a * K + b] - G[a * K + b] * xiT[d];
                if (d == a) v = v + etaE[b];
                out[d * K * K + a * K + b] = v;
            }
        }
    }
    return out;
}

JetVec LocalGeometry::nabla_perp(const JetVec& V, int c, Connection conn) const {
    const auto M = static_cast<std::size_t>(m);
    JetVec W = add(derivative(V, c), gamma_bar(E[static_cast<std::size_t>(c)], V));
    if (conn == Connection::SemiSymmetric) {
        J1 etaV(0.0);
        for (std::size_t i = 0; i < M; ++i) etaV = etaV + eta[i] * V[i];
        J1 gEV = inner(E[static_cast<std::size_t>(c)], V);
        for (std::size_t i = 0; i < M; ++i) W[i] = W[i] + etaV * E[static_cast<std::size_t>(c)][i] - gEV * xi[i];
    }
    return normal_part(W);
}

std::vector<JetVec> LocalGeometry::nabla(const std::vector<JetVec>& tensor, int rank, Connection conn) const {
    const auto K = static_cast<std::size_t>(k);
    const auto R = static_cast<std::size_t>(rank);
    std::size_t size = 1;
    for (std::size_t s = 0; s < R; ++s) size *= K;
    if (tensor.size() != size) throw Error(ErrorKind::Shape, "tensor size does not match its rank");
    JetVec gs = slot_christoffel(conn);
    std::vector<JetVec> out(K * size);
    std::vector<std::size_t> digits(R);
    for (std::size_t c = 0; c < K; ++c) {
        for (std::size_t idx = 0; idx < size; ++idx) {
            JetVec W = nabla_perp(tensor[idx], static_cast<int>(c), conn);
            std::size_t rest = idx;
            for (std::size_t s = R; s-- > 0;) {
                digits[s] = rest % K;
                rest /= K;
            }
            std::size_t stride = size;
            for (std::size_t s = 0; s < R; ++s) {
                stride /= K;
                const std::size_t base = idx - digits[s] * stride;
                for (std::size_t d = 0; d < K; ++d) {
                    const J1& coef = gs[d * K * K + c * K + digits[s]];
                    if (linalg::all_zero(coef)) continue;
                    const JetVec& src = tensor[base + d * stride];
                    for (std::size_t i = 0; i < W.size(); ++i) W[i] = W[i] - coef * src[i];
                }
            }
            out[c * size + idx] = std::move(W);
        }
    }
    return out;
}

std::vector<std::vector<double>> LocalGeometry::shape_operators() const {
    const auto K = static_cast<std::size_t>(k);
    std::vector<std::vector<double>> A;
    for (const auto& n : N) {
        std::vector<double> mat(K * K, 0.0);
        for (std::size_t c = 0; c < K; ++c) {
            JetVec W = add(derivative(n, static_cast<int>(c)), gamma_bar(E[c], n));
            JetVec co = tangent_coeffs(W);
            for (std::size_t d = 0; d < K; ++d) mat[d * K + c] = -co[d].value();
        }
        A.push_back(std::move(mat));
    }
    return A;
}

std::vector<double> LocalGeometry::normal_curvature() const {
    const auto K = static_cast<std::size_t>(k);
    const auto M = static_cast<std::size_t>(m);
    const std::size_t Q = N.size();
    auto A = shape_operators();
    std::vector<std::vector<double>> Ev(K), Nv(Q);
    for (std::size_t a = 0; a < K; ++a) Ev[a] = values(E[a]);
    for (std::size_t q = 0; q < Q; ++q) Nv[q] = values(N[q]);
    auto Gv = values(G);
    const auto& R04 = ambient.R04;
    std::vector<double> out(K * K * Q * Q, 0.0);
    for (std::size_t x = 0; x < K; ++x) {
        for (std::size_t y = 0; y < K; ++y) {
            for (std::size_t al = 0; al < Q; ++al) {
                for (std::size_t be = 0; be < Q; ++be) {
                    double amb = 0.0;
                    for (std::size_t i = 0; i < M; ++i) {
                        if (Ev[x][i] == 0.0) continue;
                        for (std::size_t j = 0; j < M; ++j) {
                            if (Ev[y][j] == 0.0) continue;
                            for (std::size_t kk = 0; kk < M; ++kk) {
                                if (Nv[be][kk] == 0.0) continue;
                                for (std::size_t l = 0; l < M; ++l) {
                                    amb += R04[((i * M + j) * M + kk) * M + l] * Ev[x][i] * Ev[y][j] * Nv[be][kk] * Nv[al][l];
                                }
                            }
                        }
                    }
                    // g([A_beta, A_alpha] E_x, E_y)
                    double comm = 0.0;
                    for (std::size_t d = 0; d < K; ++d) {
                        double c = 0.0;
                        for (std::size_t e = 0; e < K; ++e) {
                            c += A[be][d * K + e] * A[al][e * K + x] - A[al][d * K + e] * A[be][e * K + x];
                        }
                        comm += c * Gv[d * K + y];
                    }
                    out[((x * K + y) * Q + al) * Q + be] = amb + comm;
                }
            }
        }
    }
    return out;
}

}  // namespace gssf
