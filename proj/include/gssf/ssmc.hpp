#pragma once

// Semi-symmetric metric connection  ~nabla_X Y = nabla_X Y + eta(Y) X - g(X,Y) xi
// on the ambient space and its induced counterpart on submanifolds.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "gssf/catalog.hpp"
#include "gssf/contact.hpp"

namespace gssf {

/// alpha(X,Y) = (~nabla_X eta)(Y) + g(X,Y)/2, L with g(LX,Y) = alpha(X,Y), a = trace.
struct SsmcContext {
    AmbientPoint point;
    std::vector<double> alpha;  // alpha[i][j]
    std::vector<double> L;      // L[a][b] = L^a_b
    double a = 0.0;
};

/// Connection coefficients ~Gamma^k_ij, layout [k][i][j].
std::vector<double> ssmc_christoffel(const AmbientPoint& pt);
/// d_i ~Gamma^k_ab, layout [i][k][a][b].
std::vector<double> ssmc_christoffel_derivative(const AmbientPoint& pt);

/// ~nabla_X Y with X, Y extended as constant coordinate fields.
std::vector<double> ssmc_connection(const AmbientModel& model, std::span<const double> p, std::span<const double> X,
                                    std::span<const double> Y);

SsmcContext alpha_tensor(const AmbientModel& model, std::span<const double> p);
SsmcContext alpha_tensor(const AmbientPoint& pt);

struct SsmcCurvature {
    std::vector<double> R13;            // curvature of the connection coefficients
    std::vector<double> R13_transform;  // R-bar plus the alpha/L correction terms
    std::vector<double> ricci;          // S~_jk = R~^i_ijk
    std::vector<double> ricci_literal;  // S-bar - (2n-1) alpha - a g
    double scalar = 0.0;
    double scalar_literal = 0.0;        // r-bar - 4 n a
};

SsmcCurvature ssmc_curvature(const SsmcContext& ctx);

/// Residual ids ssmc.torsion, ssmc.metricity, ssmc.2.42 ... ssmc.2.48.
DefectReport ssmc_curvature_suite(const AmbientModel& model, const std::array<double, 3>& f, std::span<const double> p);

/// Residual ids ssmc.4.3, ssmc.4.4, ssmc.mean, ssmc.perp. Requires an invariant immersion.
DefectReport ssmc_induced(const Immersion& imm, std::span<const double> u);

enum class RecurrenceKind { Recurrent, TwoRecurrent, GeneralizedTwoRecurrent };
std::string to_string(RecurrenceKind k);

struct RecurrenceResult {
    RecurrenceKind kind = RecurrenceKind::Recurrent;
    std::vector<double> D;    // k, recurrent
    std::vector<double> psi;  // k*k, 2-recurrent and generalized
    std::vector<double> rho;  // k, generalized
    double residual = 0.0;
    bool underdetermined = false;
    bool vanishing_h = false;
};

RecurrenceResult recurrence_residual(const Immersion& imm, std::span<const double> u, RecurrenceKind kind);

}  // namespace gssf
