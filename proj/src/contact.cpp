#include "gssf/contact.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

namespace gssf {

double DefectReport::sup() const {
    double s = 0.0;
    for (const auto& r : residuals) s = std::max(s, std::abs(r.value));
    return s;
}

double DefectReport::at(const std::string& id) const {
    for (const auto& r : residuals) {
        if (r.id == id) return r.value;
    }
    throw Error(ErrorKind::NotFound, "no residual named " + id + " in " + name);
}

double gnorm(std::span<const double> g, std::span<const double> v) {
    return std::sqrt(std::max(0.0, linalg::inner<double>(g, v, v)));
}

std::vector<double> unit_scales(std::span<const double> g, int m) {
    std::vector<double> s(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = 1.0 / std::sqrt(g[i * s.size() + i]);
    return s;
}

AmbientPoint evaluate_ambient(const AmbientModel& model, std::span<const double> p) {
    const int m = model.dim;
    const auto U = static_cast<std::size_t>(m);
    if (model.metric.dim != m) throw Error(ErrorKind::Shape, "model dimension disagrees with its metric");
    AmbientPoint a;
    a.m = m;
    a.p.assign(p.begin(), p.end());
    auto cj = christoffel_jet(model.metric, p);
    a.g = std::move(cj.g);
    a.ginv = std::move(cj.ginv);
    a.dg = std::move(cj.dg);
    a.gamma = std::move(cj.gamma);
    a.dgamma = std::move(cj.dgamma);
    a.R13 = riemann_from_christoffel<double>(a.gamma, a.dgamma, m);
    a.R04.assign(a.R13.size(), 0.0);
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t j = 0; j < U; ++j) {
            for (std::size_t k = 0; k < U; ++k) {
                for (std::size_t l = 0; l < U; ++l) {
                    double s = 0.0;
                    for (std::size_t q = 0; q < U; ++q) s += a.R13[q * U * U * U + i * U * U + j * U + k] * a.g[q * U + l];
                    a.R04[i * U * U * U + j * U * U + k * U + l] = s;
                }
            }
        }
    }
    a.ricci = ricci_from_riemann<double>(a.R13, m);
    a.scalar = metric_trace<double>(a.ginv, a.ricci, m);

    auto vars = jet_variables<double>(p, 1);
    std::span<const J1> x(vars);
    auto phi = model.structure.phi(x);
    auto xi = model.structure.xi(x);
    auto eta = model.structure.eta(x);
    if (phi.size() != U * U || xi.size() != U || eta.size() != U) {
        throw Error(ErrorKind::Shape, "structure tensors have wrong sizes");
    }
    auto split = [&](const std::vector<J1>& f, std::vector<double>& val, std::vector<double>& der) {
        val.resize(f.size());
        der.resize(U * f.size());
        for (std::size_t c = 0; c < f.size(); ++c) {
            if (!all_finite(f[c])) throw Error(ErrorKind::NumericDomain, "structure tensor is not finite");
            val[c] = f[c].value();
            for (std::size_t i = 0; i < U; ++i) der[i * f.size() + c] = f[c].derivative(static_cast<int>(i)).value();
        }
    };
    split(phi, a.phi, a.dphi);
    split(xi, a.xi, a.dxi);
    split(eta, a.eta, a.deta);
    return a;
}

namespace {

std::vector<double> mul(std::span<const double> A, std::span<const double> v) {
    return linalg::mat_vec<double>(A, v);
}

std::vector<double> basis(std::size_t m, std::size_t i) {
    std::vector<double> e(m, 0.0);
    e[i] = 1.0;
    return e;
}

// nabla_i xi^a = d_i xi^a + Gamma^a_ic xi^c
std::vector<double> nabla_xi(const AmbientPoint& a) {
    const auto U = static_cast<std::size_t>(a.m);
    std::vector<double> out(U * U);
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t q = 0; q < U; ++q) {
            double s = a.dxi[i * U + q];
            for (std::size_t c = 0; c < U; ++c) s += a.gamma[q * U * U + i * U + c] * a.xi[c];
            out[i * U + q] = s;
        }
    }
    return out;
}

}  // namespace

DefectReport check_acs_axioms(const AmbientModel& model, std::span<const double> p) {
    const auto a = evaluate_ambient(model, p);
    const auto U = static_cast<std::size_t>(a.m);
    const auto s = unit_scales(a.g, a.m);
    DefectReport rep;
    rep.name = "acs";

    double r1 = gnorm(a.g, mul(a.phi, a.xi));
    for (std::size_t i = 0; i < U; ++i) {
        auto e = basis(U, i);
        auto pp = mul(a.phi, mul(a.phi, e));
        for (std::size_t q = 0; q < U; ++q) pp[q] += e[q] - a.eta[i] * a.xi[q];
        r1 = std::max(r1, gnorm(a.g, pp) * s[i]);
    }
    rep.add("acs.2.1", r1);

    double eta_xi = 0.0;
    for (std::size_t q = 0; q < U; ++q) eta_xi += a.eta[q] * a.xi[q];
    double r2 = std::abs(eta_xi - 1.0);
    for (std::size_t i = 0; i < U; ++i) {
        double gx = 0.0, ephi = 0.0;
        for (std::size_t q = 0; q < U; ++q) {
            gx += a.g[i * U + q] * a.xi[q];
            ephi += a.eta[q] * a.phi[q * U + i];
        }
        r2 = std::max({r2, std::abs(gx - a.eta[i]) * s[i], std::abs(ephi) * s[i]});
    }
    rep.add("acs.2.2", r2);

    // Phi_ij = g(e_i, phi e_j)
    std::vector<double> Phi(U * U, 0.0);
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t j = 0; j < U; ++j) {
            double v = 0.0;
            for (std::size_t q = 0; q < U; ++q) v += a.g[i * U + q] * a.phi[q * U + j];
            Phi[i * U + j] = v;
        }
    }
    double r3 = 0.0, r4 = 0.0;
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t j = 0; j < U; ++j) {
            double gpp = 0.0;
            for (std::size_t q = 0; q < U; ++q) {
                for (std::size_t t = 0; t < U; ++t) gpp += a.phi[q * U + i] * a.g[q * U + t] * a.phi[t * U + j];
            }
            r3 = std::max(r3, std::abs(gpp - a.g[i * U + j] + a.eta[i] * a.eta[j]) * s[i] * s[j]);
            r4 = std::max(r4, std::abs(Phi[j * U + i] + Phi[i * U + j]) * s[i] * s[j]);
        }
    }
    rep.add("acs.2.3", r3);
    rep.add("acs.2.4", r4);

    // (nabla_i eta)_j = d_i eta_j - Gamma^k_ij eta_k against g(nabla_i xi, e_j)
    auto nx = nabla_xi(a);
    double r5 = 0.0;
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t j = 0; j < U; ++j) {
            double ne = a.deta[i * U + j];
            for (std::size_t k = 0; k < U; ++k) ne -= a.gamma[k * U * U + i * U + j] * a.eta[k];
            double gx = 0.0;
            for (std::size_t q = 0; q < U; ++q) gx += nx[i * U + q] * a.g[q * U + j];
            r5 = std::max(r5, std::abs(ne - gx) * s[i] * s[j]);
        }
    }
    rep.add("acs.2.5", r5);
    return rep;
}

std::array<std::vector<double>, 3> gssf_basis(const AmbientPoint& a) {
    const auto U = static_cast<std::size_t>(a.m);
    std::vector<double> Phi(U * U, 0.0);
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t j = 0; j < U; ++j) {
            double v = 0.0;
            for (std::size_t q = 0; q < U; ++q) v += a.g[i * U + q] * a.phi[q * U + j];
            Phi[i * U + j] = v;
        }
    }
    const std::size_t N = U * U * U * U;
    std::array<std::vector<double>, 3> T{std::vector<double>(N), std::vector<double>(N), std::vector<double>(N)};
    const auto& g = a.g;
    const auto& e = a.eta;
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t j = 0; j < U; ++j) {
            for (std::size_t k = 0; k < U; ++k) {
                for (std::size_t l = 0; l < U; ++l) {
                    std::size_t o = ((i * U + j) * U + k) * U + l;
                    T[0][o] = g[j * U + k] * g[i * U + l] - g[i * U + k] * g[j * U + l];
                    T[1][o] = Phi[i * U + k] * Phi[l * U + j] - Phi[j * U + k] * Phi[l * U + i] +
                              2.0 * Phi[i * U + j] * Phi[l * U + k];
                    T[2][o] = e[i] * e[k] * g[j * U + l] - e[j] * e[k] * g[i * U + l] + g[i * U + k] * e[j] * e[l] -
                              g[j * U + k] * e[i] * e[l];
                }
            }
        }
    }
    return T;
}

GssfFit fit_gssf(const AmbientPoint& a) {
    auto T = gssf_basis(a);
    Eigen::Matrix3d G;
    Eigen::Vector3d b;
    for (int p = 0; p < 3; ++p) {
        double rhs = 0.0;
        for (std::size_t o = 0; o < a.R04.size(); ++o) rhs += a.R04[o] * T[static_cast<std::size_t>(p)][o];
        b(p) = rhs;
        for (int q = 0; q < 3; ++q) {
            double s = 0.0;
            for (std::size_t o = 0; o < a.R04.size(); ++o) {
                s += T[static_cast<std::size_t>(p)][o] * T[static_cast<std::size_t>(q)][o];
            }
            G(p, q) = s;
        }
    }
    GssfFit fit;
    for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < 3; ++q) fit.gram[static_cast<std::size_t>(p * 3 + q)] = G(p, q);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(G);
    double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    if (!(hi > 0.0) || lo <= 1e-12 * hi) {
        throw FitDegenerateError("basis tensors are linearly dependent at this point",
                                 std::vector<double>(fit.gram.begin(), fit.gram.end()));
    }
    Eigen::Vector3d f = G.ldlt().solve(b);
    fit.f1 = f(0);
    fit.f2 = f(1);
    fit.f3 = f(2);
    double res = 0.0, norm = 0.0;
    for (std::size_t o = 0; o < a.R04.size(); ++o) {
        double d = a.R04[o] - fit.f1 * T[0][o] - fit.f2 * T[1][o] - fit.f3 * T[2][o];
        res += d * d;
        norm += a.R04[o] * a.R04[o];
    }
    fit.residual = std::sqrt(res) / (std::sqrt(norm) + 1.0);
    return fit;
}

GssfFit fit_gssf(const AmbientModel& model, std::span<const double> p) { return fit_gssf(evaluate_ambient(model, p)); }

DefectReport gssf_identity_suite(const AmbientModel& model, const std::array<double, 3>& f, std::span<const double> p) {
    const auto a = evaluate_ambient(model, p);
    auto fit = fit_gssf(a);
    if (!(fit.residual < kGssfFitTolerance)) {
        throw Error(ErrorKind::NotAGssf, "curvature fit residual " + std::to_string(fit.residual) +
                                             " exceeds " + std::to_string(kGssfFitTolerance));
    }
    const auto U = static_cast<std::size_t>(a.m);
    const double n = (a.m - 1) / 2.0;
    const double d = f[0] - f[2];
    const auto s = unit_scales(a.g, a.m);
    const std::size_t U2 = U * U, U3 = U2 * U;
    DefectReport rep;
    rep.name = "gssf";
    if (a.m == 3) rep.notes.push_back("three-dimensional structure (n = 1)");

    std::vector<double> diff(U);
    auto vres = [&](double scale) { return gnorm(a.g, diff) * scale; };

    // (nabla_i phi)^q_j = d_i phi^q_j + Gamma^q_ic phi^c_j - Gamma^c_ij phi^q_c
    double r6 = 0.0;
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t j = 0; j < U; ++j) {
            for (std::size_t q = 0; q < U; ++q) {
                double v = a.dphi[i * U2 + q * U + j];
                for (std::size_t c = 0; c < U; ++c) {
                    v += a.gamma[q * U2 + i * U + c] * a.phi[c * U + j] - a.gamma[c * U2 + i * U + j] * a.phi[q * U + c];
                }
                double rhs = d * (a.g[i * U + j] * a.xi[q] - a.eta[j] * (q == i ? 1.0 : 0.0));
                diff[q] = v - rhs;
            }
            r6 = std::max(r6, vres(s[i] * s[j]));
        }
    }
    rep.add("gssf.id.2.6", r6);

    auto nx = nabla_xi(a);
    double r7 = 0.0;
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t q = 0; q < U; ++q) diff[q] = nx[i * U + q] + d * a.phi[q * U + i];
        r7 = std::max(r7, vres(s[i]));
    }
    rep.add("gssf.id.2.7", r7);

    const double cg = 2.0 * n * f[0] + 3.0 * f[1] - f[2];
    const double ce = 3.0 * f[1] + (2.0 * n - 1.0) * f[2];
    double r8 = 0.0, r9 = 0.0;
    for (std::size_t b = 0; b < U; ++b) {
        for (std::size_t q = 0; q < U; ++q) {
            double Q = 0.0;
            for (std::size_t c = 0; c < U; ++c) Q += a.ginv[q * U + c] * a.ricci[c * U + b];
            diff[q] = Q - (cg * (q == b ? 1.0 : 0.0) - ce * a.xi[q] * a.eta[b]);
        }
        r8 = std::max(r8, vres(s[b]));
        for (std::size_t c = 0; c < U; ++c) {
            double rhs = cg * a.g[b * U + c] - ce * a.eta[b] * a.eta[c];
            r9 = std::max(r9, std::abs(a.ricci[b * U + c] - rhs) * s[b] * s[c]);
        }
    }
    rep.add("gssf.id.2.8", r8);
    rep.add("gssf.id.2.9", r9);
    rep.add("gssf.id.2.10",
            std::abs(a.scalar - (2.0 * n * (2.0 * n + 1.0) * f[0] + 6.0 * n * f[1] - 4.0 * n * f[2])));

    auto curvature_checks = [&](const std::vector<double>& R, double coef, const char* id_xi, const char* id_xi_first) {
        double rx = 0.0, rf = 0.0;
        for (std::size_t i = 0; i < U; ++i) {
            for (std::size_t j = 0; j < U; ++j) {
                for (std::size_t l = 0; l < U; ++l) {
                    double v = 0.0;
                    for (std::size_t k = 0; k < U; ++k) v += R[l * U3 + i * U2 + j * U + k] * a.xi[k];
                    double rhs = coef * (a.eta[j] * (l == i ? 1.0 : 0.0) - a.eta[i] * (l == j ? 1.0 : 0.0));
                    diff[l] = v - rhs;
                }
                rx = std::max(rx, vres(s[i] * s[j]));
                for (std::size_t l = 0; l < U; ++l) {
                    double v = 0.0;
                    for (std::size_t q = 0; q < U; ++q) v += a.xi[q] * R[l * U3 + q * U2 + i * U + j];
                    double rhs = coef * (a.g[i * U + j] * a.xi[l] - a.eta[j] * (l == i ? 1.0 : 0.0));
                    diff[l] = v - rhs;
                }
                rf = std::max(rf, vres(s[i] * s[j]));
            }
        }
        rep.add(id_xi, rx);
        rep.add(id_xi_first, rf);
    };
    curvature_checks(a.R13, d, "gssf.id.2.11", "gssf.id.2.12");

    double r13 = 0.0;
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t j = 0; j < U; ++j) {
            for (std::size_t k = 0; k < U; ++k) {
                double v = 0.0;
                for (std::size_t l = 0; l < U; ++l) v += a.eta[l] * a.R13[l * U3 + i * U2 + j * U + k];
                double rhs = d * (a.g[j * U + k] * a.eta[i] - a.g[i * U + k] * a.eta[j]);
                r13 = std::max(r13, std::abs(v - rhs) * s[i] * s[j] * s[k]);
            }
        }
    }
    rep.add("gssf.id.2.13", r13);

    double r14 = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < U; ++i) {
        double v = 0.0;
        for (std::size_t k = 0; k < U; ++k) v += a.ricci[i * U + k] * a.xi[k];
        r14 = std::max(r14, std::abs(v - 2.0 * n * d * a.eta[i]) * s[i]);
        sxx += v * a.xi[i];
    }
    rep.add("gssf.id.2.14", r14);
    rep.add("gssf.id.2.15", std::abs(sxx - 2.0 * n * d));

    if (a.m % 2 == 1) {
        auto C = concircular_from(a.R13, a.g, a.scalar, a.m);
        double coef = d - a.scalar / (2.0 * n * (2.0 * n + 1.0));
        curvature_checks(C, coef, "conc.2.26", "conc.2.27");
    }
    return rep;
}

double concircular_xi_coefficient(const AmbientModel& model, std::span<const double> p) {
    const auto a = evaluate_ambient(model, p);
    const auto U = static_cast<std::size_t>(a.m);
    auto C = concircular_from(a.R13, a.g, a.scalar, a.m);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < U; ++i) {
        for (std::size_t j = 0; j < U; ++j) {
            for (std::size_t l = 0; l < U; ++l) {
                double v = 0.0;
                for (std::size_t k = 0; k < U; ++k) v += C[l * U * U * U + i * U * U + j * U + k] * a.xi[k];
                double w = a.eta[j] * (l == i ? 1.0 : 0.0) - a.eta[i] * (l == j ? 1.0 : 0.0);
                num += v * w;
                den += w * w;
            }
        }
    }
    if (den == 0.0) throw Error(ErrorKind::Precondition, "eta vanishes, coefficient undefined");
    return num / den;
}

}  // namespace gssf
