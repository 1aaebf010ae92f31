#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gssf/catalog.hpp"
#include "gssf/sampling.hpp"
#include "gssf/ssmc.hpp"
#include "oracle.hpp"

using namespace gssf;

namespace {

std::vector<std::vector<double>> points(const std::string& name, int dim, int count, double lo = -1.0, double hi = 1.0) {
    Rng rng(42 ^ fnv1a(name));
    return sample_box(rng, count, dim, lo, hi);
}

}  // namespace

TEST_CASE("connection is metric with torsion eta(Y)X - eta(X)Y") {
    for (const auto& name : model_names()) {
        CAPTURE(name);
        auto model = get_model(name);
        for (const auto& p : points(name, model->dim, 5)) {
            auto f = fit_gssf(*model, p);
            auto rep = ssmc_curvature_suite(*model, {f.f1, f.f2, f.f3}, p);
            CHECK(rep.at("ssmc.torsion") < 1e-9);
            CHECK(rep.at("ssmc.metricity") < 1e-9);
            CHECK(rep.at("ssmc.2.42") < 1e-8);
            CHECK(rep.sup() < 1e-7);
        }
    }
}

TEST_CASE("connection applied to vectors matches the defining formula") {
    auto model = get_model("sasakian_r5");
    std::vector<double> p{0.2, -0.1, 0.4, 0.3, 0.5};
    std::vector<double> X{1.0, 0.0, 0.5, 0.0, -1.0}, Y{0.0, 2.0, 0.0, 1.0, 0.0};
    // nabla~_X Y = X^i Gamma^k_ij Y^j + eta(Y) X - g(X,Y) xi for constant components
    auto got = ssmc_connection(*model, p, X, Y);
    auto G = oracle::christoffel(model->metric, p);
    auto g = oracle::metric(model->metric, p);
    auto xi = model->structure.xi(std::span<const double>(p));
    auto eta = model->structure.eta(std::span<const double>(p));
    double etaY = 0.0;
    for (std::size_t i = 0; i < 5; ++i) etaY += eta[i] * Y[i];
    const double gXY = oracle::inner(g, X, Y);
    for (std::size_t k = 0; k < 5; ++k) {
        double v = etaY * X[k] - gXY * xi[k];
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j) v += G[(k * 5 + i) * 5 + j] * X[i] * Y[j];
        }
        CHECK(got[k] == doctest::Approx(v).epsilon(1e-5));
    }
}

TEST_CASE("flat r5: alpha, its trace and the scalar curvature") {
    auto model = get_model("flat_r5");
    for (const auto& p : points("flat_r5", 5, 5)) {
        auto ctx = alpha_tensor(*model, p);
        const auto& pt = ctx.point;
        double d = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j) d = std::max(d, std::abs(ctx.alpha[i * 5 + j] - (1.5 * pt.g[i * 5 + j] - pt.eta[i] * pt.eta[j])));
        }
        CHECK(d < 1e-9);
        CHECK(std::abs(ctx.a - 6.5) < 1e-9);
        auto cv = ssmc_curvature(ctx);
        CHECK(std::abs(cv.scalar_literal + 52.0) < 1e-6);
    }
}

TEST_CASE("curvature of the connection equals the transformed ambient curvature") {
    auto model = get_model("sasakian_r7");
    std::vector<double> p{0.1, 0.2, -0.3, 0.4, -0.5, 0.6, 0.7};
    auto cv = ssmc_curvature(alpha_tensor(*model, p));
    double d = 0.0;
    for (std::size_t i = 0; i < cv.R13.size(); ++i) d = std::max(d, std::abs(cv.R13[i] - cv.R13_transform[i]));
    CHECK(d < 1e-8);
}

TEST_CASE("induced connection on invariant submanifolds") {
    for (const auto& name : {"example_2_1", "sasakian_r5_slice", "sasakian_r7_slice"}) {
        CAPTURE(name);
        auto imm = get_example(name);
        Rng rng(42 ^ fnv1a(name));
        for (const auto& u : sample_box(rng, 5, imm.map.domain_dim(), imm.box_lo, imm.box_hi)) {
            auto rep = ssmc_induced(imm, u);
            CHECK(rep.at("ssmc.4.3") < 1e-10);
            CHECK(rep.at("ssmc.4.4") < 1e-10);
        }
    }
    auto anti = get_example("example_2_2");
    std::vector<double> u{0.1, 0.2, 0.3};
    CHECK_THROWS_AS(ssmc_induced(anti, u), Error);
}

TEST_CASE("recurrence residuals") {
    for (const auto& name : {"example_2_1", "example_2_4", "sasakian_r5_slice", "sasakian_r7_slice"}) {
        auto imm = get_example(name);
        std::vector<double> u(static_cast<std::size_t>(imm.map.domain_dim()), 0.25);
        for (auto kind : {RecurrenceKind::Recurrent, RecurrenceKind::TwoRecurrent, RecurrenceKind::GeneralizedTwoRecurrent}) {
            auto r = recurrence_residual(imm, u, kind);
            CHECK(r.vanishing_h);
            CHECK(r.residual == 0.0);
        }
    }
    auto imm = get_example("example_2_3");
    std::vector<double> u{0.3, -0.2, 0.5};
    auto r = recurrence_residual(imm, u, RecurrenceKind::Recurrent);
    CHECK_FALSE(r.vanishing_h);
    CHECK(std::abs(r.residual - oracle::recurrence_residual(imm, u)) < 1e-6);
    CHECK(r.residual > 0.1);

    auto gen = recurrence_residual(imm, u, RecurrenceKind::GeneralizedTwoRecurrent);
    auto two = recurrence_residual(imm, u, RecurrenceKind::TwoRecurrent);
    CHECK(gen.residual <= two.residual + 1e-12);
    CHECK(to_string(RecurrenceKind::GeneralizedTwoRecurrent) == "generalized-2-recurrent");
}
