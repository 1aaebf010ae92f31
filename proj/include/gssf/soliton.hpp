#pragma once

// Ricci solitons (g, xi, lambda) on submanifolds and the Einstein-type
// decompositions of their Ricci tensor.

#include <span>
#include <vector>

#include "gssf/catalog.hpp"
#include "gssf/multi_array.hpp"

namespace gssf {

enum class ConnectionKind { LeviCivita, SemiSymmetricMetric };

struct SolitonFit {
    double lambda = 0.0;
    double residual = 0.0;  // |Lie + 2S + 2 lambda g| in the induced metric
    ConnectionKind connection_kind = ConnectionKind::LeviCivita;
    MultiArray lie_derivative;  // k x k
    MultiArray ricci;           // k x k, S or S~ depending on the connection
    MultiArray metric;          // k x k induced metric
    MultiArray eta;             // k, eta(E_a)
    MultiArray alpha;           // k x k induced alpha, semi-symmetric fits only
    MultiArray levi_civita_ricci;
    double a = 0.0;             // trace of the induced alpha
    double n_sub = 0.0;
};

struct EinsteinDecomposition {
    double p_coef = 0.0, q_coef = 0.0, s_coef = 0.0;
    double residual = 0.0;           // mixed xi block left after the split
    double explicit_residual = 0.0;  // |S - [(a - lambda - 1) g + eta x eta + (2 n_sub - 1) alpha]|
    double soliton_residual = 0.0;
};

/// xi must be tangent (Precondition otherwise).
SolitonFit soliton_fit(const Immersion& imm, std::span<const double> u, ConnectionKind kind);

/// |S + lambda g| / (1 + |S|) in the induced metric; needs a Levi-Civita fit.
double einstein_residual(const SolitonFit& fit);

/// Needs a semi-symmetric fit.
EinsteinDecomposition pseudo_eta_einstein_residual(const Immersion& imm, std::span<const double> u, const SolitonFit& fit);

/// sup over the unit coordinate frame of |~nabla_X xi - (X - eta(X) xi - d phi X)|
/// with d = f1 - f3, for the induced semi-symmetric connection. Needs xi tangent.
double ssmc_nabla_xi_residual(const Immersion& imm, std::span<const double> u, double d);

/// Norm of a (0,2) tensor with respect to the inverse metric.
double metric_norm(std::span<const double> ginv, std::span<const double> t, int k);

}  // namespace gssf
