#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "gssf/error.hpp"
#include "gssf/linalg.hpp"
#include "gssf/multi_array.hpp"

namespace gssf {

inline constexpr double kFrameResidualTol = 1e-10;

template <class T>
struct FramesT {
    std::vector<std::vector<T>> tangent;
    std::vector<std::vector<T>> normal;
};

namespace detail {

// Removes the components of w along an orthonormal set, twice for stability.
// Returns the remaining g-norm.
template <class T>
T orthogonalize(std::span<const T> g, const std::vector<std::vector<T>>& basis, std::vector<T>& w) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) {
            T c = linalg::inner<T>(g, q, w);
            for (std::size_t i = 0; i < w.size(); ++i) w[i] = w[i] - c * q[i];
        }
    }
    using std::sqrt;
    return sqrt(linalg::inner<T>(g, w, w));
}

}  // namespace detail

/// Gram-Schmidt of `tangent` in input order under `g`, then completion by the
/// chart basis vectors in ascending order. Works for double and jet scalars.
template <class T>
FramesT<T> orthonormal_frames(std::span<const T> g, const std::vector<std::vector<T>>& tangent) {
    const std::size_t m = tangent.empty() ? static_cast<std::size_t>(std::lround(std::sqrt(double(g.size()))))
                                          : tangent.front().size();
    if (g.size() != m * m) throw Error(ErrorKind::Shape, "metric and vector sizes disagree");
    FramesT<T> out;
    std::vector<std::vector<T>> basis;
    for (const auto& v : tangent) {
        if (v.size() != m) throw Error(ErrorKind::Shape, "tangent vector has wrong length");
        std::vector<T> w = v;
        T norm = detail::orthogonalize<T>(g, basis, w);
        if (!(value_of(norm) >= kFrameResidualTol)) {
            throw Error(ErrorKind::DegenerateFrame, "tangent vectors are linearly dependent");
        }
        T r = recip(norm);
        for (auto& c : w) c = c * r;
        basis.push_back(w);
    }
    out.tangent = basis;
    for (std::size_t e = 0; e < m && basis.size() < m; ++e) {
        std::vector<T> w(m, T(0.0));
        w[e] = T(1.0);
        T norm = detail::orthogonalize<T>(g, basis, w);
        if (!(value_of(norm) >= kFrameResidualTol)) continue;
        T r = recip(norm);
        for (auto& c : w) c = c * r;
        basis.push_back(w);
        out.normal.push_back(std::move(w));
    }
    if (basis.size() != m) throw Error(ErrorKind::DegenerateFrame, "normal completion failed");
    return out;
}

using Frames = FramesT<double>;

/// Double-valued entry point taking the metric as an m x m MultiArray.
Frames orthonormal_frames(const MultiArray& metric, const std::vector<std::vector<double>>& tangent_vectors);

}  // namespace gssf
