#pragma once

// Jet-valued geometry of an immersion around one parameter point.
//
// Every field is a Jet<double> in the k parameter variables, expanded at u.
// Ambient vectors are stored by their m chart components. Tensors indexed by
// tangent slots are flattened row-major over the slots. Orders: position and
// frame data carry order 2, first covariant derivatives order 1, second
// covariant derivatives order 0.

#include <span>
#include <vector>

#include "gssf/catalog.hpp"
#include "gssf/jet.hpp"

namespace gssf {

enum class Connection { LeviCivita, SemiSymmetric };

using JetVec = std::vector<J1>;

struct LocalGeometry {
    int k = 0, m = 0;
    std::vector<double> u, p;
    JetVec x;                 // m
    std::vector<JetVec> E;    // k tangent coordinate vectors
    std::vector<JetVec> D2;   // k*k second derivatives of the immersion
    JetVec g, gamma;          // ambient metric and Christoffel symbols at x(u)
    JetVec phi, xi, eta;      // ambient structure at x(u)
    JetVec G, Ginv;           // induced metric and inverse, k*k
    JetVec gamma_ind;         // induced Christoffel symbols, k^3, order 1
    std::vector<JetVec> T, N; // tangent and normal orthonormal frames
    std::vector<JetVec> h;    // k*k normal vectors
    AmbientPoint ambient;     // double data at p, including curvature
    std::vector<double> R_ind, ricci_ind;  // induced curvature at u
    double scalar_ind = 0.0;

    static LocalGeometry build(const Immersion& imm, std::span<const double> u);

    J1 inner(const JetVec& a, const JetVec& b) const;
    /// Gamma-bar(X, Y)^c = Gamma^c_ij X^i Y^j.
    JetVec gamma_bar(const JetVec& X, const JetVec& Y) const;
    /// c^a with P_T V = c^a E_a.
    JetVec tangent_coeffs(const JetVec& V) const;
    JetVec tangent_part(const JetVec& V) const;
    JetVec normal_part(const JetVec& V) const;
    JetVec phi_of(const JetVec& V) const;
    JetVec combine(const JetVec& coeffs) const;  // c^a E_a

    /// Slot connection on M: Levi-Civita or the induced semi-symmetric one.
    JetVec slot_christoffel(Connection c) const;
    /// Normal connection applied to a normal field V along E_c.
    JetVec nabla_perp(const JetVec& V, int c, Connection conn) const;
    /// Covariant derivative of a normal-valued tensor with `rank` tangent
    /// slots; the new slot comes first.
    std::vector<JetVec> nabla(const std::vector<JetVec>& tensor, int rank, Connection conn) const;
    /// Shape operator matrices (A_alpha)^d_c at u, one per normal frame vector.
    std::vector<std::vector<double>> shape_operators() const;
    /// g(R_perp(E_x,E_y) N_beta, N_alpha) via the Ricci equation, layout [x][y][alpha][beta].
    std::vector<double> normal_curvature() const;
};

JetVec derivative(const JetVec& v, int var);
std::vector<double> values(const JetVec& v);
double value_norm(std::span<const double> g, const JetVec& v);
/// Throws ClassificationMismatch unless xi is tangent and phi preserves the
/// tangent space at u, both within `tol` on the unit coordinate frame.
void require_invariant(const LocalGeometry& L, double tol = 1e-8);

}  // namespace gssf
