#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gssf/catalog.hpp"
#include "gssf/contact.hpp"
#include "gssf/sampling.hpp"
#include "oracle.hpp"

using namespace gssf;

namespace {

std::vector<std::vector<double>> points(const std::string& name, int dim, int count = 20) {
    Rng rng(42 ^ fnv1a(name));
    return sample_box(rng, count, dim, -1.0, 1.0);
}

}  // namespace

TEST_CASE("almost contact axioms hold on every model") {
    for (const auto& name : model_names()) {
        CAPTURE(name);
        auto model = get_model(name);
        for (const auto& p : points(name, model->dim)) {
            auto rep = check_acs_axioms(*model, p);
            CHECK(rep.residuals.size() == 5);
            CHECK(rep.sup() < 1e-10);
        }
    }
}

TEST_CASE("axiom check detects a broken structure") {
    AmbientModel m = make_flat_model(2);
    m.structure.eta = SmoothMap::make(5, 5, [](auto x) {
        using T = typename decltype(x)::value_type;
        return std::vector<T>{T(0.0), T(0.0), T(0.0), T(0.0), T(2.0)};
    });
    std::vector<double> p(5, 0.1);
    auto rep = check_acs_axioms(m, p);
    CHECK(rep.sup() > 0.5);
}

TEST_CASE("fitted space-form functions") {
    for (const auto& name : {"flat_r5", "flat_r7"}) {
        auto model = get_model(name);
        for (const auto& p : points(name, model->dim, 5)) {
            auto f = fit_gssf(*model, p);
            CHECK(std::abs(f.f1) < 1e-9);
            CHECK(std::abs(f.f2) < 1e-9);
            CHECK(std::abs(f.f3) < 1e-9);
            CHECK(f.residual < 1e-9);
        }
    }
    for (const auto& name : {"sasakian_r5", "sasakian_r7"}) {
        auto model = get_model(name);
        for (const auto& p : points(name, model->dim, 5)) {
            auto f = fit_gssf(*model, p);
            CHECK(std::abs(f.f1) < 1e-7);
            CHECK(std::abs(f.f2 + 1.0) < 1e-7);
            CHECK(std::abs(f.f3 + 1.0) < 1e-7);
            CHECK(f.residual < 1e-9);
        }
    }
}

TEST_CASE("three-dimensional model: the basis is degenerate") {
    auto m = make_sasakian_model(1);
    std::vector<double> p{0.2, -0.3, 0.5};
    CHECK_THROWS_AS(fit_gssf(m, p), Error);
    try {
        (void)fit_gssf(m, p);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FitDegenerate);
    }
}

TEST_CASE("Sasakian r5: scalar curvature and Ricci along xi") {
    auto model = get_model("sasakian_r5");
    for (const auto& p : points("sasakian_r5", 5, 10)) {
        auto a = evaluate_ambient(*model, p);
        CHECK(a.scalar == doctest::Approx(-4.0).epsilon(1e-6));
        double sxx = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j) sxx += a.ricci[i * 5 + j] * a.xi[i] * a.xi[j];
        }
        CHECK(std::abs(sxx - 4.0) < 1e-6);
        CHECK(std::abs(concircular_xi_coefficient(*model, p) - 1.2) < 1e-7);
    }
}

TEST_CASE("identity suite vanishes with the fitted functions on the Sasakian models") {
    for (const auto& name : {"sasakian_r5", "sasakian_r7"}) {
        auto model = get_model(name);
        for (const auto& p : points(name, model->dim, 10)) {
            auto f = fit_gssf(*model, p);
            auto rep = gssf_identity_suite(*model, {f.f1, f.f2, f.f3}, p);
            CHECK(rep.sup() < 1e-7);
            CHECK(rep.at("gssf.id.2.6") < 1e-7);
        }
    }
}

TEST_CASE("identity suite rejects wrong functions") {
    auto model = get_model("sasakian_r5");
    std::vector<double> p{0.1, 0.2, 0.3, 0.4, 0.5};
    auto rep = gssf_identity_suite(*model, {0.5, 0.0, 0.0}, p);
    CHECK(rep.sup() > 0.1);
}

TEST_CASE("curvature at an ambient point agrees with the oracle") {
    auto model = get_model("sasakian_r7");
    std::vector<double> p{0.3, -0.2, 0.1, 0.5, -0.4, 0.2, 0.6};
    auto a = evaluate_ambient(*model, p);
    auto R = oracle::riemann13(model->metric, p);
    double d = 0.0;
    for (std::size_t i = 0; i < R.size(); ++i) d = std::max(d, std::abs(R[i] - a.R13[i]));
    CHECK(d < 1e-5);
}

TEST_CASE("unit scales and g-norm") {
    std::vector<double> g{4.0, 0.0, 0.0, 9.0};
    auto s = unit_scales(g, 2);
    CHECK(s[0] == doctest::Approx(0.5));
    CHECK(s[1] == doctest::Approx(1.0 / 3.0));
    std::vector<double> v{1.0, 1.0};
    CHECK(gnorm(g, v) == doctest::Approx(std::sqrt(13.0)));
}
