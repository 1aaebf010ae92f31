#include "gssf/subman.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gssf/linalg.hpp"
#include "gssf/local_geometry.hpp"
#include "gssf/riemann.hpp"
#include "gssf/sampling.hpp"

namespace gssf {

std::string to_string(SubmanifoldClass c) {
    switch (c) {
        case SubmanifoldClass::Invariant: return "Invariant";
        case SubmanifoldClass::AntiInvariant: return "AntiInvariant";
        case SubmanifoldClass::Slant: return "Slant";
        case SubmanifoldClass::Generic: return "Generic";
    }
    return "Generic";
}

std::string to_string(DefectKind k) {
    switch (k) {
        case DefectKind::Parallel: return "parallel";
        case DefectKind::Semiparallel: return "semi";
        case DefectKind::TwoSemiparallel: return "2semi";
        case DefectKind::ConcircularSemiparallel: return "conc-semi";
        case DefectKind::ConcircularTwoSemiparallel: return "conc-2semi";
    }
    return "parallel";
}

namespace {

using Vec = std::vector<double>;

/// Value-level tangent space of an immersion at one point.
struct TangentSpace {
    int k = 0, m = 0;
    std::vector<Vec> E;  // k chart vectors of length m
    Vec g, G, Ginv;

    TangentSpace(std::vector<Vec> frame, Vec metric) : E(std::move(frame)), g(std::move(metric)) {
        k = static_cast<int>(E.size());
        m = k == 0 ? 0 : static_cast<int>(E[0].size());
        const auto K = static_cast<std::size_t>(k);
        G.assign(K * K, 0.0);
        for (std::size_t a = 0; a < K; ++a) {
            for (std::size_t b = a; b < K; ++b) {
                double v = linalg::inner<double>(g, E[a], E[b]);
                G[a * K + b] = v;
                G[b * K + a] = v;
            }
        }
        if (!(linalg::condition_number(G, k) < 1e12)) {
            throw Error(ErrorKind::ImmersionDegenerate, "Jacobian is rank deficient at the parameter point");
        }
        Ginv = linalg::inverse<double>(G, k);
    }

    double inner(const Vec& a, const Vec& b) const { return linalg::inner<double>(g, a, b); }
    double norm(const Vec& v) const { return std::sqrt(std::max(0.0, inner(v, v))); }

    Vec coeffs(const Vec& V) const {
        const auto K = static_cast<std::size_t>(k);
        Vec w(K), c(K, 0.0);
        for (std::size_t b = 0; b < K; ++b) w[b] = inner(E[b], V);
        for (std::size_t a = 0; a < K; ++a) {
            for (std::size_t b = 0; b < K; ++b) c[a] += Ginv[a * K + b] * w[b];
        }
        return c;
    }
    Vec combine(const Vec& c) const {
        Vec out(static_cast<std::size_t>(m), 0.0);
        for (std::size_t a = 0; a < c.size(); ++a) {
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += c[a] * E[a][i];
        }
        return out;
    }
    Vec tangent(const Vec& V) const { return combine(coeffs(V)); }
    Vec normal(const Vec& V) const {
        Vec t = tangent(V);
        Vec out(V.size());
        for (std::size_t i = 0; i < V.size(); ++i) out[i] = V[i] - t[i];
        return out;
    }
    double tnorm(const Vec& c) const {
        const auto K = static_cast<std::size_t>(k);
        double s = 0.0;
        for (std::size_t a = 0; a < K; ++a) {
            for (std::size_t b = 0; b < K; ++b) s += G[a * K + b] * c[a] * c[b];
        }
        return std::sqrt(std::max(0.0, s));
    }
    Vec scales() const { return unit_scales(G, k); }
};

Vec mat_vec(const Vec& A, const Vec& v) {
    const std::size_t n = v.size();
    Vec out(A.size() / n, 0.0);
    for (std::size_t a = 0; a < out.size(); ++a) {
        for (std::size_t b = 0; b < n; ++b) out[a] += A[a * n + b] * v[b];
    }
    return out;
}

TangentSpace light_tangent_space(const Immersion& imm, std::span<const double> u, Vec* p_out = nullptr) {
    const int k = imm.map.domain_dim();
    if (static_cast<int>(u.size()) != k) throw Error(ErrorKind::Shape, "parameter point has the wrong length");
    auto vars = jet_variables<double>(u, 1);
    auto Y = imm.map(std::span<const J1>(vars));
    const auto K = static_cast<std::size_t>(k);
    const auto M = static_cast<std::size_t>(imm.ambient->dim);
    Vec p(M);
    std::vector<Vec> E(K, Vec(M));
    for (std::size_t i = 0; i < M; ++i) {
        p[i] = Y[i].value();
        for (std::size_t a = 0; a < K; ++a) E[a][i] = Y[i].derivative(static_cast<int>(a)).value();
    }
    for (std::size_t i = 0; i < M; ++i) {
        if (!std::isfinite(p[i])) throw Error(ErrorKind::NumericDomain, "immersion evaluation is not finite");
    }
    Vec g = imm.ambient->metric.g(std::span<const double>(p));
    linalg::check_metric(g, imm.ambient->dim);
    if (p_out) *p_out = p;
    return TangentSpace(std::move(E), std::move(g));
}

/// Value arrays extracted from a LocalGeometry.
struct PointArrays {
    TangentSpace ts;
    std::vector<Vec> N;   // normal frame values
    std::vector<Vec> h;   // k*k ambient vectors
    Vec s;                // 1/sqrt(G_aa)

    explicit PointArrays(const LocalGeometry& L)
        : ts([&] {
              std::vector<Vec> E;
              for (const auto& e : L.E) E.push_back(values(e));
              return TangentSpace(std::move(E), values(L.g));
          }()) {
        for (const auto& n : L.N) N.push_back(values(n));
        for (const auto& v : L.h) h.push_back(values(v));
        s = ts.scales();
    }

    std::size_t k() const { return static_cast<std::size_t>(ts.k); }
    std::size_t m() const { return static_cast<std::size_t>(ts.m); }
    std::size_t q() const { return N.size(); }

    /// A_V E_c as an ambient vector, V normal.
    Vec shape_apply(const std::vector<Vec>& A, const Vec& V, std::size_t c) const {
        const std::size_t K = k();
        Vec coef(K, 0.0);
        for (std::size_t al = 0; al < q(); ++al) {
            double w = ts.inner(V, N[al]);
            for (std::size_t d = 0; d < K; ++d) coef[d] += w * A[al][d * K + c];
        }
        return ts.combine(coef);
    }

    Vec perp_apply(const Vec& Rp, std::size_t x, std::size_t y, const Vec& V) const {
        const std::size_t K = k(), Q = q();
        Vec out(m(), 0.0);
        for (std::size_t be = 0; be < Q; ++be) {
            double w = ts.inner(V, N[be]);
            if (w == 0.0) continue;
            for (std::size_t al = 0; al < Q; ++al) {
                double c = Rp[((x * K + y) * Q + al) * Q + be] * w;
                for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * N[al][i];
            }
        }
        return out;
    }
};

void axpy(Vec& y, double a, const Vec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

/// Normal-valued tensor values from jet tensors.
std::vector<Vec> tensor_values(const std::vector<JetVec>& t) {
    std::vector<Vec> out;
    out.reserve(t.size());
    for (const auto& v : t) out.push_back(values(v));
    return out;
}

/// Curvature operator acting on tangent slots of a normal-valued tensor:
/// R_perp(X,Y) T(...) - sum_s T(..., R(X,Y) slot_s, ...).
double curvature_action_defect(const PointArrays& P, const Vec& Rp, const Vec& R13, const std::vector<Vec>& T,
                               int rank) {
    const std::size_t K = P.k();
    const auto Rk = static_cast<std::size_t>(rank);
    std::size_t size = 1;
    for (std::size_t s = 0; s < Rk; ++s) size *= K;
    std::vector<std::size_t> digits(Rk);
    double sup = 0.0;
    for (std::size_t x = 0; x < K; ++x) {
        for (std::size_t y = 0; y < K; ++y) {
            for (std::size_t idx = 0; idx < size; ++idx) {
                Vec out = P.perp_apply(Rp, x, y, T[idx]);
                std::size_t rest = idx;
                for (std::size_t s = Rk; s-- > 0;) {
                    digits[s] = rest % K;
                    rest /= K;
                }
                double scale = P.s[x] * P.s[y];
                std::size_t stride = size;
                for (std::size_t s = 0; s < Rk; ++s) {
                    scale *= P.s[digits[s]];
                    stride /= K;
                    const std::size_t base = idx - digits[s] * stride;
                    for (std::size_t l = 0; l < K; ++l) {
                        double c = R13[((l * K + x) * K + y) * K + digits[s]];
                        if (c != 0.0) axpy(out, -c, T[base + l * stride]);
                    }
                }
                sup = std::max(sup, P.ts.norm(out) * scale);
            }
        }
    }
    return sup;
}

}  // namespace

SubmanifoldPointData frames(const Immersion& imm, std::span<const double> u) {
    auto L = LocalGeometry::build(imm, u);
    SubmanifoldPointData d;
    d.u = L.u;
    d.p = L.p;
    for (const auto& e : L.E) d.tangent_frame.push_back(values(e));
    for (const auto& t : L.T) d.tangent_onb.push_back(values(t));
    for (const auto& n : L.N) d.normal_onb.push_back(values(n));
    const auto K = static_cast<std::size_t>(L.k);
    d.induced_metric = MultiArray({K, K}, values(L.G));
    return d;
}

FundamentalForms second_fundamental_form(const Immersion& imm, std::span<const double> u) {
    auto L = LocalGeometry::build(imm, u);
    PointArrays P(L);
    const std::size_t K = P.k(), M = P.m(), Q = P.q();
    FundamentalForms F;
    F.h = MultiArray({K, K, Q});
    F.h_ambient = MultiArray({K, K, M});
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) {
            const Vec& v = P.h[a * K + b];
            for (std::size_t al = 0; al < Q; ++al) F.h.at({a, b, al}) = P.ts.inner(v, P.N[al]);
            for (std::size_t i = 0; i < M; ++i) F.h_ambient.at({a, b, i}) = v[i];
        }
    }
    for (auto& A : L.shape_operators()) F.shape_ops.emplace_back(std::vector<std::size_t>{K, K}, std::move(A));
    F.H.assign(M, 0.0);
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) axpy(F.H, P.ts.Ginv[a * K + b] / static_cast<double>(K), P.h[a * K + b]);
    }
    F.H_norm = P.ts.norm(F.H);
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) {
            const double sc = P.s[a] * P.s[b];
            F.tg_residual = std::max(F.tg_residual, P.ts.norm(P.h[a * K + b]) * sc);
            Vec um = P.h[a * K + b];
            axpy(um, -P.ts.G[a * K + b], F.H);
            F.umbilic_residual = std::max(F.umbilic_residual, P.ts.norm(um) * sc);
        }
    }
    return F;
}

Classification classify(const Immersion& imm, const SamplingPlan& plan) {
    const int k = imm.map.domain_dim();
    const auto K = static_cast<std::size_t>(k);
    Rng rng(plan.seed);
    auto pts = sample_box(rng, plan.points, k, imm.box_lo, imm.box_hi);
    Classification c;
    std::vector<double> cosines;
    for (const auto& u : pts) {
        Vec p;
        TangentSpace ts = light_tangent_space(imm, u, &p);
        std::span<const double> ps(p);
        Vec phi = imm.ambient->structure.phi(ps);
        Vec xi = imm.ambient->structure.xi(ps);
        c.xi_tangency_residual = std::max(c.xi_tangency_residual, ts.norm(ts.normal(xi)));
        Vec Z = ts.tangent(xi);
        const double zz = ts.inner(Z, Z);

        std::vector<Vec> dirs;
        for (std::size_t a = 0; a < K; ++a) {
            Vec e(K, 0.0);
            e[a] = 1.0;
            dirs.push_back(std::move(e));
        }
        for (int r = 0; r < plan.random_directions; ++r) {
            Vec e(K);
            for (auto& v : e) v = rng.uniform(-1.0, 1.0);
            dirs.push_back(std::move(e));
        }
        for (const auto& d : dirs) {
            Vec X = ts.combine(d);
            if (zz > 1e-24) axpy(X, -ts.inner(X, Z) / zz, Z);
            const double xn = ts.norm(X);
            if (xn < 1e-12) {
                ++c.skipped;
                continue;
            }
            for (auto& v : X) v /= xn;
            Vec pX = mat_vec(phi, X);
            const double pn = ts.norm(pX);
            if (pn < 1e-12) {
                ++c.skipped;
                continue;
            }
            const double lt = ts.norm(ts.tangent(pX)) / pn;
            const double ln = ts.norm(ts.normal(pX)) / pn;
            c.max_normal_leak = std::max(c.max_normal_leak, ln);
            c.max_tangent_leak = std::max(c.max_tangent_leak, lt);
            cosines.push_back(lt);
            ++c.samples;
        }
    }
    if (cosines.empty()) throw Error(ErrorKind::InsufficientSamples, "every sampled direction was degenerate");
    const double n = static_cast<double>(cosines.size());
    c.cos_mean = std::accumulate(cosines.begin(), cosines.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : cosines) ss += (v - c.cos_mean) * (v - c.cos_mean);
    c.cos_stddev = cosines.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;

    if (c.max_normal_leak < plan.tol) {
        c.kind = SubmanifoldClass::Invariant;
    } else if (c.max_tangent_leak < plan.tol) {
        c.kind = SubmanifoldClass::AntiInvariant;
    } else if (c.cos_stddev < plan.tol) {
        c.kind = SubmanifoldClass::Slant;
        c.cos_theta = c.cos_mean;
    }
    return c;
}

MultiArray nabla_h(const Immersion& imm, std::span<const double> u, int order) {
    if (order != 1 && order != 2) throw Error(ErrorKind::UnsupportedOrder, "nabla_h supports orders 1 and 2");
    auto L = LocalGeometry::build(imm, u);
    auto t = L.nabla(L.h, 2, Connection::LeviCivita);
    if (order == 2) t = L.nabla(t, 3, Connection::LeviCivita);
    const auto K = static_cast<std::size_t>(L.k);
    const std::size_t Q = L.N.size();
    std::vector<std::size_t> shape(static_cast<std::size_t>(order) + 2, K);
    shape.push_back(Q);
    MultiArray out(shape);
    for (std::size_t idx = 0; idx < t.size(); ++idx) {
        for (std::size_t al = 0; al < Q; ++al) out[idx * Q + al] = L.inner(t[idx], L.N[al]).value();
    }
    return out;
}

MultiArray normal_curvature(const Immersion& imm, std::span<const double> u) {
    auto L = LocalGeometry::build(imm, u);
    const auto K = static_cast<std::size_t>(L.k);
    const std::size_t Q = L.N.size();
    return MultiArray({K, K, Q, Q}, L.normal_curvature());
}

DefectReport defect(const Immersion& imm, std::span<const double> u, DefectKind kind) {
    const int k = imm.map.domain_dim();
    const bool conc = kind == DefectKind::ConcircularSemiparallel || kind == DefectKind::ConcircularTwoSemiparallel;
    if (conc && k % 2 == 0) {
        throw Error(ErrorKind::Dimension, "concircular curvature of the submanifold needs odd dimension");
    }
    auto L = LocalGeometry::build(imm, u);
    PointArrays P(L);
    const std::size_t K = P.k();
    DefectReport rep;
    rep.name = "defect." + to_string(kind);

    if (kind == DefectKind::Parallel) {
        auto nh = tensor_values(L.nabla(L.h, 2, Connection::LeviCivita));
        double sup = 0.0;
        for (std::size_t c = 0; c < K; ++c) {
            for (std::size_t a = 0; a < K; ++a) {
                for (std::size_t b = 0; b < K; ++b) {
                    sup = std::max(sup, P.ts.norm(nh[(c * K + a) * K + b]) * P.s[c] * P.s[a] * P.s[b]);
                }
            }
        }
        rep.add(rep.name, sup);
        return rep;
    }

    Vec R = L.R_ind;
    if (conc) R = concircular_from(R, P.ts.G, L.scalar_ind, k);
    Vec Rp = L.normal_curvature();
    if (kind == DefectKind::Semiparallel || kind == DefectKind::ConcircularSemiparallel) {
        rep.add(rep.name, curvature_action_defect(P, Rp, R, P.h, 2));
    } else {
        auto nh = tensor_values(L.nabla(L.h, 2, Connection::LeviCivita));
        rep.add(rep.name, curvature_action_defect(P, Rp, R, nh, 3));
    }
    return rep;
}

double shape_duality_residual(const Immersion& imm, std::span<const double> u) {
    auto L = LocalGeometry::build(imm, u);
    PointArrays P(L);
    auto A = L.shape_operators();
    const std::size_t K = P.k();
    double sup = 0.0;
    for (std::size_t al = 0; al < P.q(); ++al) {
        for (std::size_t x = 0; x < K; ++x) {
            for (std::size_t y = 0; y < K; ++y) {
                double lhs = P.ts.inner(P.h[x * K + y], P.N[al]);
                double rhs = 0.0;
                for (std::size_t d = 0; d < K; ++d) rhs += A[al][d * K + x] * P.ts.G[d * K + y];
                sup = std::max(sup, std::abs(lhs - rhs) * P.s[x] * P.s[y]);
            }
        }
    }
    return sup;
}

namespace {

double gauss_from(const LocalGeometry& L, const PointArrays& P) {
    const std::size_t K = P.k(), M = P.m();
    auto A = L.shape_operators();
    const auto& R13 = L.ambient.R13;
    double sup = 0.0;
    for (std::size_t x = 0; x < K; ++x) {
        for (std::size_t y = 0; y < K; ++y) {
            for (std::size_t z = 0; z < K; ++z) {
                Vec amb(M, 0.0);
                for (std::size_t l = 0; l < M; ++l) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < M; ++i) {
                        if (P.ts.E[x][i] == 0.0) continue;
                        for (std::size_t j = 0; j < M; ++j) {
                            if (P.ts.E[y][j] == 0.0) continue;
                            for (std::size_t q = 0; q < M; ++q) {
                                s += R13[((l * M + i) * M + j) * M + q] * P.ts.E[x][i] * P.ts.E[y][j] * P.ts.E[z][q];
                            }
                        }
                    }
                    amb[l] = s;
                }
                Vec lhs = P.ts.tangent(amb);
                Vec rc(K);
                for (std::size_t l = 0; l < K; ++l) rc[l] = L.R_ind[((l * K + x) * K + y) * K + z];
                Vec rhs = P.ts.combine(rc);
                axpy(rhs, 1.0, P.shape_apply(A, P.h[x * K + z], y));
                axpy(rhs, -1.0, P.shape_apply(A, P.h[y * K + z], x));
                axpy(lhs, -1.0, rhs);
                sup = std::max(sup, P.ts.norm(lhs) * P.s[x] * P.s[y] * P.s[z]);
            }
        }
    }
    return sup;
}

}  // namespace

double gauss_residual(const Immersion& imm, std::span<const double> u) {
    auto L = LocalGeometry::build(imm, u);
    PointArrays P(L);
    return gauss_from(L, P);
}

DefectReport invariant_identity_suite(const Immersion& imm, std::span<const double> u, const std::array<double, 3>& f) {
    auto L = LocalGeometry::build(imm, u);
    PointArrays P(L);
    const std::size_t K = P.k();
    const double d = f[0] - f[2];

    require_invariant(L);
    Vec phiv = values(L.phi);

    DefectReport rep;
    rep.name = "sub.invariant";
    if (K == 3) rep.notes.push_back("three-dimensional submanifold: n = 1 case");
    rep.add("sub.2.30", gauss_from(L, P));

    JetVec xiT = L.tangent_coeffs(L.xi);
    Vec xiTv = values(xiT);
    Vec etaE(K);
    for (std::size_t a = 0; a < K; ++a) etaE[a] = P.ts.inner(P.ts.E[a], P.ts.combine(xiTv));

    double r31 = 0.0;
    for (std::size_t a = 0; a < K; ++a) {
        Vec v(P.m(), 0.0);
        for (std::size_t b = 0; b < K; ++b) axpy(v, xiTv[b], P.h[a * K + b]);
        r31 = std::max(r31, P.ts.norm(v) * P.s[a]);
    }
    rep.add("sub.2.31", r31);

    std::vector<JetVec> phiT(K);
    for (std::size_t b = 0; b < K; ++b) phiT[b] = L.tangent_coeffs(L.phi_of(L.E[b]));  // phiT[b][d] = (phi E_b)^d
    const auto& Gm = L.gamma_ind;
    auto gam = [&](std::size_t dd, std::size_t a, std::size_t b) { return Gm[(dd * K + a) * K + b].value(); };

    double r32 = 0.0;
    for (std::size_t a = 0; a < K; ++a) {
        Vec v(K);
        for (std::size_t dd = 0; dd < K; ++dd) {
            double s = xiT[dd].derivative(static_cast<int>(a)).value();
            for (std::size_t b = 0; b < K; ++b) s += gam(dd, a, b) * xiTv[b];
            v[dd] = s + d * phiT[a][dd].value();
        }
        r32 = std::max(r32, P.ts.tnorm(v) * P.s[a]);
    }
    rep.add("sub.2.32", r32);

    double r33 = 0.0;
    for (std::size_t x = 0; x < K; ++x) {
        for (std::size_t y = 0; y < K; ++y) {
            Vec v(K);
            for (std::size_t l = 0; l < K; ++l) {
                double s = 0.0;
                for (std::size_t z = 0; z < K; ++z) s += L.R_ind[((l * K + x) * K + y) * K + z] * xiTv[z];
                double e = d * ((l == x ? etaE[y] : 0.0) - (l == y ? etaE[x] : 0.0));
                v[l] = s - e;
            }
            r33 = std::max(r33, P.ts.tnorm(v) * P.s[x] * P.s[y]);
        }
    }
    rep.add("sub.2.33", r33);

    const double ns = n_sub(static_cast<int>(K));
    double r34 = 0.0;
    for (std::size_t a = 0; a < K; ++a) {
        double s = 0.0;
        for (std::size_t b = 0; b < K; ++b) s += L.ricci_ind[a * K + b] * xiTv[b];
        r34 = std::max(r34, std::abs(s - 2.0 * ns * d * etaE[a]) * P.s[a]);
    }
    rep.add("sub.2.34", r34);

    double r35 = 0.0;
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) {
            Vec v(K);
            for (std::size_t dd = 0; dd < K; ++dd) {
                double s = phiT[b][dd].derivative(static_cast<int>(a)).value();
                for (std::size_t e = 0; e < K; ++e) {
                    s += gam(dd, a, e) * phiT[b][e].value() - gam(e, a, b) * phiT[e][dd].value();
                }
                double expect = d * (P.ts.G[a * K + b] * xiTv[dd] - (dd == a ? etaE[b] : 0.0));
                v[dd] = s - expect;
            }
            r35 = std::max(r35, P.ts.tnorm(v) * P.s[a] * P.s[b]);
        }
    }
    rep.add("sub.2.35", r35);

    double r36 = 0.0;
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) {
            Vec v = mat_vec(phiv, P.h[a * K + b]);
            for (std::size_t e = 0; e < K; ++e) axpy(v, -phiT[b][e].value(), P.h[a * K + e]);
            r36 = std::max(r36, P.ts.norm(v) * P.s[a] * P.s[b]);
        }
    }
    rep.add("sub.2.36", r36);
    return rep;
}

}  // namespace gssf
