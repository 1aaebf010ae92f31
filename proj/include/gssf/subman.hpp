#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gssf/catalog.hpp"
#include "gssf/contact.hpp"
#include "gssf/multi_array.hpp"

namespace gssf {

struct SubmanifoldPointData {
    std::vector<double> u, p;
    std::vector<std::vector<double>> tangent_frame;  // Jacobian columns
    std::vector<std::vector<double>> tangent_onb, normal_onb;
    MultiArray induced_metric;
};

struct FundamentalForms {
    MultiArray h;                     // (k, k, m-k) components in the normal frame
    MultiArray h_ambient;             // (k, k, m) chart components
    std::vector<MultiArray> shape_ops;  // (A_alpha)^d_c, one k x k matrix per normal frame vector
    std::vector<double> H;            // mean curvature, chart components
    double H_norm = 0.0;
    double tg_residual = 0.0;
    double umbilic_residual = 0.0;
};

enum class SubmanifoldClass { Invariant, AntiInvariant, Slant, Generic };
std::string to_string(SubmanifoldClass c);

struct SamplingPlan {
    int points = 5;
    std::uint64_t seed = 42;
    int random_directions = 8;
    double tol = 1e-8;
};

struct Classification {
    SubmanifoldClass kind = SubmanifoldClass::Generic;
    std::optional<double> cos_theta;   // mean over samples, when Slant
    double cos_mean = 0.0;
    double cos_stddev = 0.0;
    double max_normal_leak = 0.0;      // sup |normal part of phi X| / |phi X|
    double max_tangent_leak = 0.0;     // sup |tangential part of phi X| / |phi X|
    double xi_tangency_residual = 0.0; // sup |normal part of xi|
    int samples = 0;
    int skipped = 0;
};

enum class DefectKind { Parallel, Semiparallel, TwoSemiparallel, ConcircularSemiparallel, ConcircularTwoSemiparallel };
std::string to_string(DefectKind k);

SubmanifoldPointData frames(const Immersion& imm, std::span<const double> u);
FundamentalForms second_fundamental_form(const Immersion& imm, std::span<const double> u);
Classification classify(const Immersion& imm, const SamplingPlan& plan = {});
/// Order 1: layout [c][a][b][alpha] = (nabla_c h)(E_a, E_b). Order 2: layout
/// [x][y][a][b][alpha] = (nabla_x nabla_y h)(E_a, E_b). Normal frame components.
MultiArray nabla_h(const Immersion& imm, std::span<const double> u, int order);
/// Layout [x][y][alpha][beta] = g(R_perp(E_x, E_y) N_beta, N_alpha).
MultiArray normal_curvature(const Immersion& imm, std::span<const double> u);
DefectReport defect(const Immersion& imm, std::span<const double> u, DefectKind kind);
/// Residual ids sub.2.30, sub.2.31 ... sub.2.36. Requires an invariant immersion.
DefectReport invariant_identity_suite(const Immersion& imm, std::span<const double> u, const std::array<double, 3>& f);
/// g(h(X,Y), V) - g(A_V X, Y) over the normal frame, residual id sub.2.18.
double shape_duality_residual(const Immersion& imm, std::span<const double> u);
/// Tangential Gauss equation residual on the unit coordinate frame, id sub.2.30.
double gauss_residual(const Immersion& imm, std::span<const double> u);

/// Submanifold parameter n_sub with dim M = 2 n_sub + 1 (fractional for even dimensions).
inline double n_sub(int k) { return (k - 1) / 2.0; }

}  // namespace gssf
