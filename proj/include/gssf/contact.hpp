#pragma once

// Almost contact metric structures, the coefficient fit of the generalized
// Sasakian-space-form curvature model, and its identity suite.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gssf/multi_array.hpp"
#include "gssf/riemann.hpp"
#include "gssf/smooth_map.hpp"

namespace gssf {

/// phi maps a point to the m*m matrix phi[a][b] = phi^a_b, so (phi X)^a = phi^a_b X^b.
struct AlmostContactStructure {
    SmoothMap phi;
    SmoothMap xi;
    SmoothMap eta;
};

struct AmbientModel {
    std::string name;
    int dim = 0;
    MetricField metric;
    AlmostContactStructure structure;
    std::optional<std::array<double, 3>> known_f;

    int n() const noexcept { return (dim - 1) / 2; }
};

struct Residual {
    std::string id;
    double value = 0.0;
};

/// Named residuals of one functional at one sample.
struct DefectReport {
    std::string name;
    std::vector<Residual> residuals;
    std::vector<std::string> notes;

    double sup() const;
    bool passes(double tol) const { return sup() < tol; }
    /// Value of a named residual; throws NotFound.
    double at(const std::string& id) const;
    void add(std::string id, double value) { residuals.push_back({std::move(id), value}); }
};

struct GssfFit {
    double f1 = 0.0, f2 = 0.0, f3 = 0.0;
    double residual = 0.0;
    std::array<double, 9> gram{};
};

/// Everything the suites need about the ambient structure at one point.
struct AmbientPoint {
    int m = 0;
    std::vector<double> p;
    std::vector<double> g, ginv, dg;         // dg[l][i][j]
    std::vector<double> gamma, dgamma;       // [k][i][j], [i][k][a][b]
    std::vector<double> R13, R04, ricci;
    double scalar = 0.0;
    std::vector<double> phi, xi, eta;        // phi[a][b] = phi^a_b
    std::vector<double> dphi, dxi, deta;     // [i][...] derivative along chart direction i
};

AmbientPoint evaluate_ambient(const AmbientModel& model, std::span<const double> p);

/// Residual ids acs.2.1 ... acs.2.5.
DefectReport check_acs_axioms(const AmbientModel& model, std::span<const double> p);

inline constexpr double kGssfFitTolerance = 1e-6;

/// Lowered basis tensors T1, T2, T3 at a point, layout [i][j][k][l].
std::array<std::vector<double>, 3> gssf_basis(const AmbientPoint& a);
GssfFit fit_gssf(const AmbientModel& model, std::span<const double> p);
GssfFit fit_gssf(const AmbientPoint& a);

/// Residual ids gssf.id.2.6 ... gssf.id.2.15, conc.2.26, conc.2.27.
DefectReport gssf_identity_suite(const AmbientModel& model, const std::array<double, 3>& f, std::span<const double> p);

/// Least-squares c in C(X,Y)xi = c [eta(Y)X - eta(X)Y].
double concircular_xi_coefficient(const AmbientModel& model, std::span<const double> p);

/// Frame helpers shared by the suites: g-norm of a vector and 1/sqrt(g_ii).
double gnorm(std::span<const double> g, std::span<const double> v);
std::vector<double> unit_scales(std::span<const double> g, int m);

}  // namespace gssf
