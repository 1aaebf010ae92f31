#include "gssf/linalg.hpp"

#include <Eigen/Dense>
#include <limits>
#include <string>

namespace gssf::linalg {

namespace {

Eigen::MatrixXd to_eigen(std::span<const double> a, int n) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = a[static_cast<std::size_t>(i * n + j)];
    }
    return m;
}

}  // namespace

double condition_number(std::span<const double> a, int n) {
    Eigen::MatrixXd m = to_eigen(a, n);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (!lu.isInvertible()) return std::numeric_limits<double>::infinity();
    Eigen::MatrixXd inv = lu.inverse();
    double norm = m.cwiseAbs().colwise().sum().maxCoeff();
    double inv_norm = inv.cwiseAbs().colwise().sum().maxCoeff();
    return norm * inv_norm;
}

void check_metric(std::span<const double> g, int n, double max_condition) {
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (g[static_cast<std::size_t>(i * n + j)] != g[static_cast<std::size_t>(j * n + i)]) {
                throw Error(ErrorKind::DegenerateMetric, "metric is not symmetric");
            }
        }
    }
    for (double v : g) {
        if (!std::isfinite(v)) throw Error(ErrorKind::NumericDomain, "metric is not finite");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(to_eigen(g, n));
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorKind::DegenerateMetric, "metric is not positive definite");
    }
    double cond = condition_number(g, n);
    if (!(cond <= max_condition)) {
        throw Error(ErrorKind::DegenerateMetric, "metric condition estimate " + std::to_string(cond) + " exceeds " +
                                                     std::to_string(max_condition));
    }
}

}  // namespace gssf::linalg
