#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gssf/catalog.hpp"
#include "gssf/riemann.hpp"
#include "gssf/sampling.hpp"
#include "oracle.hpp"

using namespace gssf;

namespace {

// Round unit 2-sphere in (theta, phi).
MetricField sphere() {
    MetricField M;
    M.dim = 2;
    M.g = SmoothMap::make(2, 4, [](auto x) {
        using T = typename decltype(x)::value_type;
        using std::sin;
        T s = sin(x[0]);
        return std::vector<T>{T(1.0), T(0.0), T(0.0), s * s};
    });
    return M;
}

double max_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("round sphere: Christoffel symbols and constant curvature") {
    auto M = sphere();
    std::vector<double> p{0.8, 0.3};
    auto G = christoffel(M, p);
    CHECK(G.at({0, 1, 1}) == doctest::Approx(-std::sin(0.8) * std::cos(0.8)));
    CHECK(G.at({1, 0, 1}) == doctest::Approx(std::cos(0.8) / std::sin(0.8)));
    CHECK(G.at({0, 0, 0}) == doctest::Approx(0.0));

    auto cb = riemann_tensor(M, p);
    CHECK(cb.scalar == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cb.riemann13.at({0, 0, 1, 1}) == doctest::Approx(std::sin(0.8) * std::sin(0.8)).epsilon(1e-12));
    CHECK(cb.ricci.at({0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cb.ricci.at({1, 1}) == doctest::Approx(std::sin(0.8) * std::sin(0.8)).epsilon(1e-12));
    auto [ric, r] = ricci_scalar(M, p);
    CHECK(r == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(concircular(M, p), Error);
}

TEST_CASE("catalog models: Christoffel and Riemann agree with the finite-difference oracle") {
    for (const auto& name : model_names()) {
        CAPTURE(name);
        auto model = get_model(name);
        Rng rng(42 ^ fnv1a(name));
        for (const auto& p : sample_box(rng, 10, model->dim, -1.0, 1.0)) {
            auto G = christoffel(model->metric, p);
            CHECK(max_diff(G.components(), oracle::christoffel(model->metric, p)) < 1e-5);
            auto cb = riemann_tensor(model->metric, p);
            CHECK(max_diff(cb.riemann13.components(), oracle::riemann13(model->metric, p)) < 1e-5);
        }
    }
}

TEST_CASE("curvature symmetries on the Sasakian model") {
    auto model = get_model("sasakian_r5");
    std::vector<double> p{0.1, -0.4, 0.7, 0.2, -0.3};
    auto cb = riemann_tensor(model->metric, p);
    const std::size_t m = 5;
    double antisym = 0.0, pair = 0.0, bianchi = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k) {
                for (std::size_t l = 0; l < m; ++l) {
                    antisym = std::max(antisym, std::abs(cb.riemann04.at({i, j, k, l}) + cb.riemann04.at({j, i, k, l})));
                    antisym = std::max(antisym, std::abs(cb.riemann04.at({i, j, k, l}) + cb.riemann04.at({i, j, l, k})));
                    pair = std::max(pair, std::abs(cb.riemann04.at({i, j, k, l}) - cb.riemann04.at({k, l, i, j})));
                    bianchi = std::max(bianchi, std::abs(cb.riemann13.at({l, i, j, k}) + cb.riemann13.at({l, j, k, i}) +
                                                         cb.riemann13.at({l, k, i, j})));
                }
            }
        }
    }
    CHECK(antisym < 1e-12);
    CHECK(pair < 1e-12);
    CHECK(bianchi < 1e-12);
    double sym = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) sym = std::max(sym, std::abs(cb.ricci.at({i, j}) - cb.ricci.at({j, i})));
    }
    CHECK(sym < 1e-12);
}

TEST_CASE("concircular tensor: trace-free part and formula") {
    auto model = get_model("sasakian_r5");
    std::vector<double> p{0.3, 0.1, -0.2, 0.5, 0.0};
    auto C = concircular(model->metric, p);
    auto cb = riemann_tensor(model->metric, p);
    auto g = oracle::metric(model->metric, p);
    const std::size_t m = 5;
    // C^l_ijk = R^l_ijk - r/(m(m-1)) (g_jk delta^l_i - g_ik delta^l_j)
    const double c = cb.scalar / 20.0;
    double diff = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                for (std::size_t k = 0; k < m; ++k) {
                    double ref = cb.riemann13.at({l, i, j, k}) - c * (g[j * m + k] * (l == i) - g[i * m + k] * (l == j));
                    diff = std::max(diff, std::abs(ref - C.at({l, i, j, k})));
                }
            }
        }
    }
    CHECK(diff < 1e-12);
    // full contraction of the concircular Ricci vanishes
    auto gi = oracle::inverse(g, 5);
    double tr = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += C.at({i, i, j, k});
            tr += gi[j * m + k] * s;
        }
    }
    CHECK(std::abs(tr) < 1e-12);
}

TEST_CASE("Lie derivative of the metric along xi on the Sasakian model vanishes") {
    auto model = get_model("sasakian_r7");
    std::vector<double> p{0.2, -0.1, 0.4, 0.3, -0.6, 0.5, 0.9};
    auto L = lie_derivative_metric(model->metric, model->structure.xi, p);
    CHECK(L.max_abs() < 1e-12);
    // a non-Killing field: the radial field on flat space gives 2 g
    auto flat = get_model("flat_r5");
    auto radial = SmoothMap::make(5, 5, [](auto x) { return std::vector<typename decltype(x)::value_type>(x.begin(), x.end()); });
    std::vector<double> q{0.1, 0.2, 0.3, 0.4, 0.5};
    auto L2 = lie_derivative_metric(flat->metric, radial, q);
    CHECK(L2.at({0, 0}) == doctest::Approx(2.0));
    CHECK(L2.at({0, 1}) == doctest::Approx(0.0));
}

TEST_CASE("degenerate metric is rejected") {
    MetricField M;
    M.dim = 2;
    M.g = SmoothMap::make(2, 4, [](auto x) {
        using T = typename decltype(x)::value_type;
        return std::vector<T>{T(1.0), T(1.0), T(1.0), T(1.0)};
    });
    std::vector<double> p{0.0, 0.0};
    CHECK_THROWS_AS(riemann_tensor(M, p), Error);
}
