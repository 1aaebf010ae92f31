#pragma once

// Finite-difference reference implementations. Everything here works on plain
// doubles and calls the catalog maps only through their real-valued entry
// point, so it shares no code path with the jet machinery under test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "gssf/catalog.hpp"

namespace oracle {

using Vec = std::vector<double>;
using Field = std::function<Vec(const Vec&)>;

inline constexpr double kStep = 2e-3;

/// d/dx_i by Richardson extrapolation of two central differences (steps h, h/2).
inline Vec partial(const Field& f, const Vec& x, int i, double h = kStep) {
    auto central = [&](double s) {
        Vec xp = x, xm = x;
        xp[static_cast<std::size_t>(i)] += s;
        xm[static_cast<std::size_t>(i)] -= s;
        Vec a = f(xp), b = f(xm);
        for (std::size_t q = 0; q < a.size(); ++q) a[q] = (a[q] - b[q]) / (2.0 * s);
        return a;
    };
    Vec coarse = central(h), fine = central(0.5 * h);
    for (std::size_t q = 0; q < fine.size(); ++q) fine[q] = (4.0 * fine[q] - coarse[q]) / 3.0;
    return fine;
}

/// Plain Gauss-Jordan inverse with partial pivoting.
inline Vec inverse(Vec a, int n) {
    const auto N = static_cast<std::size_t>(n);
    Vec inv(N * N, 0.0);
    for (std::size_t i = 0; i < N; ++i) inv[i * N + i] = 1.0;
    for (std::size_t c = 0; c < N; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < N; ++r) {
            if (std::abs(a[r * N + c]) > std::abs(a[piv * N + c])) piv = r;
        }
        for (std::size_t j = 0; j < N; ++j) {
            std::swap(a[c * N + j], a[piv * N + j]);
            std::swap(inv[c * N + j], inv[piv * N + j]);
        }
        const double d = a[c * N + c];
        for (std::size_t j = 0; j < N; ++j) {
            a[c * N + j] /= d;
            inv[c * N + j] /= d;
        }
        for (std::size_t r = 0; r < N; ++r) {
            if (r == c) continue;
            const double f = a[r * N + c];
            for (std::size_t j = 0; j < N; ++j) {
                a[r * N + j] -= f * a[c * N + j];
                inv[r * N + j] -= f * inv[c * N + j];
            }
        }
    }
    return inv;
}

inline double inner(const Vec& g, const Vec& x, const Vec& y) {
    const std::size_t m = x.size();
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) s += g[i * m + j] * x[i] * y[j];
    }
    return s;
}

inline Vec metric(const gssf::MetricField& M, const Vec& p) { return M.g(std::span<const double>(p)); }

/// Gamma^k_ij, layout [k][i][j].
inline Vec christoffel(const gssf::MetricField& M, const Vec& p) {
    const int m = M.dim;
    const auto U = static_cast<std::size_t>(m);
    Vec g = metric(M, p), gi = inverse(g, m);
    std::vector<Vec> dg(U);
    for (int l = 0; l < m; ++l) dg[static_cast<std::size_t>(l)] = partial([&](const Vec& x) { return metric(M, x); }, p, l);
    Vec out(U * U * U, 0.0);
    for (std::size_t k = 0; k < U; ++k) {
        for (std::size_t i = 0; i < U; ++i) {
            for (std::size_t j = 0; j < U; ++j) {
                double s = 0.0;
                for (std::size_t l = 0; l < U; ++l) {
                    s += gi[k * U + l] * (dg[i][j * U + l] + dg[j][i * U + l] - dg[l][i * U + j]);
                }
                out[(k * U + i) * U + j] = 0.5 * s;
            }
        }
    }
    return out;
}

/// R^l_ijk, layout [l][i][j][k], R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y].
inline Vec riemann13(const gssf::MetricField& M, const Vec& p) {
    const auto U = static_cast<std::size_t>(M.dim);
    Vec G = christoffel(M, p);
    std::vector<Vec> dG(U);
    for (std::size_t i = 0; i < U; ++i) {
        dG[i] = partial([&](const Vec& x) { return christoffel(M, x); }, p, static_cast<int>(i));
    }
    auto at = [U](const Vec& v, std::size_t a, std::size_t b, std::size_t c) { return v[(a * U + b) * U + c]; };
    Vec R(U * U * U * U, 0.0);
    for (std::size_t l = 0; l < U; ++l) {
        for (std::size_t i = 0; i < U; ++i) {
            for (std::size_t j = 0; j < U; ++j) {
                for (std::size_t k = 0; k < U; ++k) {
                    double r = at(dG[i], l, j, k) - at(dG[j], l, i, k);
                    for (std::size_t s = 0; s < U; ++s) r += at(G, l, i, s) * at(G, s, j, k) - at(G, l, j, s) * at(G, s, i, k);
                    R[((l * U + i) * U + j) * U + k] = r;
                }
            }
        }
    }
    return R;
}

inline Vec position(const gssf::Immersion& imm, const Vec& u) { return imm.map(std::span<const double>(u)); }

/// Columns d_a F.
inline std::vector<Vec> tangents(const gssf::Immersion& imm, const Vec& u) {
    std::vector<Vec> out;
    for (int a = 0; a < imm.map.domain_dim(); ++a) {
        out.push_back(partial([&](const Vec& x) { return position(imm, x); }, u, a));
    }
    return out;
}

/// Normal projection of v at u.
inline Vec normal_part(const Vec& g, const std::vector<Vec>& E, const Vec& v) {
    const std::size_t k = E.size();
    Vec G(k * k);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) G[a * k + b] = inner(g, E[a], E[b]);
    }
    Vec Gi = inverse(G, static_cast<int>(k));
    Vec out = v;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            const double c = Gi[a * k + b] * inner(g, E[b], v);
            for (std::size_t i = 0; i < v.size(); ++i) out[i] -= c * E[a][i];
        }
    }
    return out;
}

/// Ambient covariant derivative along d_a of a vector field V(u) given in chart components.
inline Vec ambient_derivative(const gssf::Immersion& imm, const Field& V, const Vec& u, int a) {
    Vec p = position(imm, u);
    Vec dV = partial(V, u, a);
    Vec Fa = partial([&](const Vec& x) { return position(imm, x); }, u, a);
    Vec v = V(u);
    Vec G = christoffel(imm.ambient->metric, p);
    const std::size_t m = p.size();
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) dV[k] += G[(k * m + i) * m + j] * Fa[i] * v[j];
        }
    }
    return dV;
}

/// h(d_a, d_b) in chart components, layout [a][b][i].
inline Vec second_fundamental_form(const gssf::Immersion& imm, const Vec& u) {
    const auto K = static_cast<std::size_t>(imm.map.domain_dim());
    Vec p = position(imm, u);
    Vec g = metric(imm.ambient->metric, p);
    auto E = tangents(imm, u);
    Vec out;
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) {
            Field Fb = [&, b](const Vec& x) {
                return partial([&](const Vec& y) { return position(imm, y); }, x, static_cast<int>(b));
            };
            Vec n = normal_part(g, E, ambient_derivative(imm, Fb, u, static_cast<int>(a)));
            out.insert(out.end(), n.begin(), n.end());
        }
    }
    return out;
}

/// Induced Christoffel symbols Gamma^d_ab, layout [d][a][b].
inline Vec induced_christoffel(const gssf::Immersion& imm, const Vec& u) {
    const int k = imm.map.domain_dim();
    gssf::MetricField induced;
    induced.dim = k;
    Field G = [&imm](const Vec& x) {
        Vec g = metric(imm.ambient->metric, position(imm, x));
        auto E = tangents(imm, x);
        Vec out;
        for (const auto& ea : E) {
            for (const auto& eb : E) out.push_back(inner(g, ea, eb));
        }
        return out;
    };
    induced.g = gssf::SmoothMap::make(k, k * k, [G](auto x) {
        using T = typename decltype(x)::value_type;
        if constexpr (std::is_same_v<T, double>) {
            return G(Vec(x.begin(), x.end()));
        } else {
            throw gssf::Error(gssf::ErrorKind::UnsupportedOrder, "oracle metric is real-valued only");
            return std::vector<T>{};
        }
    });
    return christoffel(induced, u);
}

/// (nabla_c h)(d_a, d_b) in chart components, layout [c][a][b][i].
inline Vec nabla_h(const gssf::Immersion& imm, const Vec& u) {
    const auto K = static_cast<std::size_t>(imm.map.domain_dim());
    Vec p = position(imm, u);
    const std::size_t m = p.size();
    Vec g = metric(imm.ambient->metric, p);
    Vec Gam = christoffel(imm.ambient->metric, p);
    auto E = tangents(imm, u);
    Vec h = second_fundamental_form(imm, u);
    Vec Gi = induced_christoffel(imm, u);
    Field hfield = [&imm](const Vec& x) { return second_fundamental_form(imm, x); };
    Vec out;
    for (std::size_t c = 0; c < K; ++c) {
        Vec dh = partial(hfield, u, static_cast<int>(c));
        for (std::size_t a = 0; a < K; ++a) {
            for (std::size_t b = 0; b < K; ++b) {
                const std::size_t off = (a * K + b) * m;
                Vec v(dh.begin() + static_cast<long>(off), dh.begin() + static_cast<long>(off + m));
                for (std::size_t k = 0; k < m; ++k) {
                    for (std::size_t i = 0; i < m; ++i) {
                        for (std::size_t j = 0; j < m; ++j) v[k] += Gam[(k * m + i) * m + j] * E[c][i] * h[off + j];
                    }
                }
                v = normal_part(g, E, v);
                for (std::size_t d = 0; d < K; ++d) {
                    const double ca = Gi[(d * K + c) * K + a], cb = Gi[(d * K + c) * K + b];
                    for (std::size_t i = 0; i < m; ++i) v[i] -= ca * h[(d * K + b) * m + i] + cb * h[(a * K + d) * m + i];
                }
                out.insert(out.end(), v.begin(), v.end());
            }
        }
    }
    return out;
}

/// Orthonormal normal frame: Gram-Schmidt of the tangents, then of the chart basis.
inline std::vector<Vec> normal_frame(const gssf::Immersion& imm, const Vec& u) {
    Vec p = position(imm, u);
    Vec g = metric(imm.ambient->metric, p);
    std::vector<Vec> basis;
    auto add = [&](Vec w) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) {
                const double c = inner(g, q, w);
                for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * q[i];
            }
        }
        const double n = std::sqrt(inner(g, w, w));
        if (n < 1e-8) return false;
        for (auto& x : w) x /= n;
        basis.push_back(w);
        return true;
    };
    for (auto& e : tangents(imm, u)) add(e);
    const std::size_t k = basis.size();
    for (std::size_t e = 0; e < p.size() && basis.size() < p.size(); ++e) {
        Vec w(p.size(), 0.0);
        w[e] = 1.0;
        add(w);
    }
    return std::vector<Vec>(basis.begin() + static_cast<long>(k), basis.end());
}

/// Normal curvature g(R_perp(d_x, d_y) N_be, N_al) from the normal connection
/// form of `normal_frame`, layout [x][y][al][be].
inline Vec normal_curvature(const gssf::Immersion& imm, const Vec& u) {
    const auto K = static_cast<std::size_t>(imm.map.domain_dim());
    // omega_b[al][be] = g(nabla_b N_be, N_al), flattened per b
    Field omega = [&imm, K](const Vec& x) {
        Vec p = position(imm, x);
        Vec g = metric(imm.ambient->metric, p);
        auto N = normal_frame(imm, x);
        const std::size_t Q = N.size();
        Vec out;
        for (std::size_t b = 0; b < K; ++b) {
            std::vector<Vec> dN(Q);
            for (std::size_t be = 0; be < Q; ++be) {
                Field Nb = [&imm, be](const Vec& y) { return normal_frame(imm, y)[be]; };
                dN[be] = ambient_derivative(imm, Nb, x, static_cast<int>(b));
            }
            for (std::size_t al = 0; al < Q; ++al) {
                for (std::size_t be = 0; be < Q; ++be) out.push_back(inner(g, dN[be], N[al]));
            }
        }
        return out;
    };
    Vec w = omega(u);
    const std::size_t Q = static_cast<std::size_t>(std::lround(std::sqrt(double(w.size() / K))));
    std::vector<Vec> dw(K);
    for (std::size_t a = 0; a < K; ++a) dw[a] = partial(omega, u, static_cast<int>(a));
    auto W = [&](const Vec& v, std::size_t b, std::size_t al, std::size_t be) { return v[(b * Q + al) * Q + be]; };
    Vec out(K * K * Q * Q, 0.0);
    for (std::size_t x = 0; x < K; ++x) {
        for (std::size_t y = 0; y < K; ++y) {
            for (std::size_t al = 0; al < Q; ++al) {
                for (std::size_t be = 0; be < Q; ++be) {
                    double r = W(dw[x], y, al, be) - W(dw[y], x, al, be);
                    for (std::size_t ga = 0; ga < Q; ++ga) {
                        r += W(w, x, al, ga) * W(w, y, ga, be) - W(w, y, al, ga) * W(w, x, ga, be);
                    }
                    out[((x * K + y) * Q + al) * Q + be] = r;
                }
            }
        }
    }
    return out;
}

/// Minimizer of a convex function of one variable by golden-section search.
inline double golden_min(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < iters; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Recurrence residual |nabla~h - D (x) h| / (1 + |nabla~h|) for the induced
/// semi-symmetric connection, components taken on the unit coordinate frame and
/// D found per direction by direct search.
inline double recurrence_residual(const gssf::Immersion& imm, const Vec& u) {
    const auto K = static_cast<std::size_t>(imm.map.domain_dim());
    Vec p = position(imm, u);
    const std::size_t m = p.size();
    Vec g = metric(imm.ambient->metric, p);
    auto E = tangents(imm, u);
    Vec h = second_fundamental_form(imm, u);
    Vec nh = nabla_h(imm, u);
    Vec xi = imm.ambient->structure.xi(std::span<const double>(p));
    Vec xiN = normal_part(g, E, xi);
    Vec xiT(m);
    for (std::size_t i = 0; i < m; ++i) xiT[i] = xi[i] - xiN[i];
    Vec G(K * K), eta(K);
    for (std::size_t a = 0; a < K; ++a) {
        eta[a] = inner(g, xi, E[a]);
        for (std::size_t b = 0; b < K; ++b) G[a * K + b] = inner(g, E[a], E[b]);
    }
    // coordinates of xiT in the E basis
    Vec Ginv = inverse(G, static_cast<int>(K)), xt(K, 0.0);
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) xt[a] += Ginv[a * K + b] * inner(g, E[b], xiT);
    }
    auto hv = [&](std::size_t a, std::size_t b) { return Vec(h.begin() + static_cast<long>((a * K + b) * m), h.begin() + static_cast<long>((a * K + b + 1) * m)); };
    auto h_xi = [&](std::size_t b, bool first) {
        Vec s(m, 0.0);
        for (std::size_t d = 0; d < K; ++d) {
            Vec v = first ? hv(d, b) : hv(b, d);
            for (std::size_t i = 0; i < m; ++i) s[i] += xt[d] * v[i];
        }
        return s;
    };
    Vec sc(K);
    for (std::size_t a = 0; a < K; ++a) sc[a] = 1.0 / std::sqrt(G[a * K + a]);

    std::vector<Vec> H, NH(K * K * K);
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < K; ++b) {
            Vec v = hv(a, b);
            for (auto& x : v) x *= sc[a] * sc[b];
            H.push_back(v);
        }
    }
    double nn = 0.0;
    for (std::size_t c = 0; c < K; ++c) {
        for (std::size_t a = 0; a < K; ++a) {
            for (std::size_t b = 0; b < K; ++b) {
                Vec v(nh.begin() + static_cast<long>(((c * K + a) * K + b) * m), nh.begin() + static_cast<long>(((c * K + a) * K + b + 1) * m));
                Vec hcb = hv(c, b), hac = hv(a, c), hxb = h_xi(b, true), hax = h_xi(a, false);
                for (std::size_t i = 0; i < m; ++i) {
                    v[i] += -eta[a] * hcb[i] + G[c * K + a] * hxb[i] - eta[b] * hac[i] + G[c * K + b] * hax[i];
                    v[i] *= sc[c] * sc[a] * sc[b];
                }
                nn += inner(g, v, v);
                NH[(c * K + a) * K + b] = v;
            }
        }
    }
    double r2 = 0.0;
    for (std::size_t c = 0; c < K; ++c) {
        auto cost = [&](double D) {
            double s = 0.0;
            for (std::size_t ab = 0; ab < K * K; ++ab) {
                Vec d = NH[c * K * K + ab];
                for (std::size_t i = 0; i < m; ++i) d[i] -= D * H[ab][i];
                s += inner(g, d, d);
            }
            return s;
        };
        r2 += cost(golden_min(cost, -1e3, 1e3));
    }
    return std::sqrt(r2) / (1.0 + std::sqrt(nn));
}

}  // namespace oracle
