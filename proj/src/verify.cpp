#include "gssf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <json.hpp>
#include <set>
#include <sstream>
#include <tuple>

#include "gssf/catalog.hpp"
#include "gssf/linalg.hpp"
#include "gssf/sampling.hpp"
#include "gssf/soliton.hpp"
#include "gssf/ssmc.hpp"
#include "gssf/subman.hpp"
#include "report_schema.hpp"

namespace gssf {

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::HypothesisFails: return "hypothesis-fails";
        case Status::Skipped: return "skipped";
    }
    return "skipped";
}

std::string artifact_version() { return GSSF_VERSION; }

const std::string& report_schema() {
    static const std::string s = kReportSchema;
    return s;
}

const std::vector<CheckInfo>& check_catalog() {
    static const std::vector<CheckInfo> checks = {
        {"acs.2.1", "phi^2 X = -X + eta(X) xi, phi xi = 0", true},
        {"acs.2.2", "eta(xi) = 1, eta(X) = g(X, xi), eta(phi X) = 0", true},
        {"acs.2.3", "g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y)", true},
        {"acs.2.4", "g(X, phi Y) = -g(phi X, Y)", true},
        {"acs.2.5", "(nabla_X eta)(Y) = g(nabla_X xi, Y)", true},
        {"gssf.fit", "R = f1 R1 + f2 R2 + f3 R3 by least squares", true},
        {"gssf.id.2.6", "(nabla_X phi) Y = (f1 - f3)[g(X, Y) xi - eta(Y) X]", true},
        {"gssf.id.2.7", "nabla_X xi = -(f1 - f3) phi X", true},
        {"gssf.id.2.8", "Q X = (2n f1 + 3 f2 - f3) X - (3 f2 + (2n - 1) f3) eta(X) xi", true},
        {"gssf.id.2.9", "S = (2n f1 + 3 f2 - f3) g - (3 f2 + (2n - 1) f3) eta (x) eta", true},
        {"gssf.id.2.10", "r = 2n(2n + 1) f1 + 6n f2 - 4n f3", true},
        {"gssf.id.2.11", "R(X, Y) xi = (f1 - f3)[eta(Y) X - eta(X) Y]", true},
        {"gssf.id.2.12", "R(xi, X) Y = (f1 - f3)[g(X, Y) xi - eta(Y) X]", true},
        {"gssf.id.2.13", "eta(R(X, Y) Z) = (f1 - f3)[g(Y, Z) eta(X) - g(X, Z) eta(Y)]", true},
        {"gssf.id.2.14", "S(X, xi) = 2n(f1 - f3) eta(X)", true},
        {"gssf.id.2.15", "S(xi, xi) = 2n(f1 - f3)", true},
        {"conc.2.26", "C(X, Y) xi = (f1 - f3 - r/(2n(2n + 1)))[eta(Y) X - eta(X) Y]", true},
        {"conc.2.27", "C(xi, X) Y = (f1 - f3 - r/(2n(2n + 1)))[g(X, Y) xi - eta(Y) X]", true},
        {"ssmc.torsion", "T~(X, Y) = eta(Y) X - eta(X) Y", true},
        {"ssmc.metricity", "~nabla g = 0", true},
        {"ssmc.2.42", "R~ = R - b(Y, Z) X + b(X, Z) Y - g(Y, Z) M X + g(X, Z) M Y, b = alpha - g, M = L - I", true},
        {"ssmc.2.43", "alpha(X, Y) = (~nabla_X eta)(Y) + g(X, Y)/2 = g(L X, Y), alpha(xi, xi) = 1/2", true},
        {"ssmc.2.44", "S~ = S - (2n - 1) alpha - a g + 4n g; trace of S - (2n - 1) alpha - a g is r - 4n a", true},
        {"ssmc.2.45", "r - 4n a with r = 2n(2n + 1) f1 + 6n f2 - 4n f3", true},
        {"ssmc.2.46", "R~(X, Y) xi = (f1 - f3 + 3/2)[eta(Y) X - eta(X) Y] - eta(Y) L X + eta(X) L Y", true},
        {"ssmc.2.47", "R~(xi, X) Y = (f1 - f3 + 3/2)[g(X, Y) xi - eta(Y) X] - alpha(X, Y) xi + eta(Y) L X", true},
        {"ssmc.2.48", "S~(X, xi) = [2n(f1 - f3) - a + 3n + 1/2] eta(X)", true},
        {"sub.class", "phi X = P X + F X; class from |P X| / |phi X| over X orthogonal to xi", false},
        {"sub.h", "h(X, Y) = normal part of nabla_X Y", false},
        {"sub.2.18", "g(h(X, Y), V) = g(A_V X, Y)", false},
        {"sub.2.30", "tangential R(X, Y) Z = R_M(X, Y) Z + A_h(X, Z) Y - A_h(Y, Z) X", false},
        {"sub.prop2.1", "invariant: h(X, xi) = 0, nabla xi, R(X, Y) xi, S(X, xi), nabla phi, h(X, phi Y) = phi h(X, Y)", false},
        {"defect.parallel", "nabla h = 0", false},
        {"defect.semi", "R_perp(X, Y) h(Z, U) - h(R(X, Y) Z, U) - h(Z, R(X, Y) U) = 0", false},
        {"defect.2semi", "R(X, Y) acting on nabla h vanishes", false},
        {"defect.conc-semi", "C(X, Y) acting on h vanishes", false},
        {"defect.conc-2semi", "C(X, Y) acting on nabla h vanishes", false},
        {"ssmc.4.3", "tangential ~nabla_X Y = nabla_X Y + eta(Y) X - g(X, Y) xi", false},
        {"ssmc.4.4", "h~ = h, H~ = H, ~nabla_perp = nabla_perp", false},
        {"ssmc.rec.4.7", "(~nabla_X h)(Y, Z) = D(X) h(Y, Z)", false},
        {"ssmc.rec.4.7a", "(~nabla^2 h)(Z, W, X, Y) = psi(X, Y) h(Z, W)", false},
        {"ssmc.rec.4.11", "(~nabla^2 h)(Z, W, X, Y) = psi(X, Y) h(Z, W) + rho(X) (~nabla_Y h)(Z, W)", false},
        {"sol.5.1", "Lie_xi g + 2 S + 2 lambda g = 0 implies S = -lambda g", false},
        {"sol.5.2", "Lie_xi g = 0", false},
        {"sol.5.3", "semi-symmetric soliton implies S = (a - lambda - 1) g + eta (x) eta + (2n - 1) alpha", false},
        {"sol.5.4", "~nabla_X xi = X - eta(X) xi - (f1 - f3) phi X", false},
        {"sol.5.5", "~Lie_xi g = 2 [g - eta (x) eta]", false},
        {"sol.5.6", "S = p g + q eta (x) eta + s D with D(X, xi) = 0", false},
        {"equiv.6.1", "f1 != f3: totally geodesic iff parallel iff semiparallel iff 2-semiparallel", false},
        {"equiv.6.2", "totally geodesic iff recurrent iff 2-recurrent iff generalized 2-recurrent", false},
        {"equiv.6.3", "soliton on the submanifold: Einstein for Levi-Civita, pseudo eta-Einstein for semi-symmetric", false},
    };
    return checks;
}

namespace {

using Vec = std::vector<double>;

std::string num(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct Acc {
    double sup = 0.0;
    int samples = 0;
    std::vector<std::string> notes;
    std::optional<std::string> skip;
};

/// Sup-residual accumulator for one target.
class Collector {
public:
    void add(const std::string& id, double v) {
        auto& a = acc_[id];
        a.sup = std::isfinite(v) ? std::max(a.sup, v) : INFINITY;
        ++a.samples;
    }
    void note(const std::string& id, const std::string& text) {
        auto& n = acc_[id].notes;
        if (std::find(n.begin(), n.end(), text) == n.end()) n.push_back(text);
    }
    void skip(const std::string& id, const std::string& why) {
        auto& a = acc_[id];
        if (!a.skip) a.skip = why;
    }
    double sup(const std::string& id) const {
        auto it = acc_.find(id);
        return it == acc_.end() ? 0.0 : it->second.sup;
    }
    bool has(const std::string& id) const { return acc_.count(id) > 0; }
    const Acc* get(const std::string& id) const {
        auto it = acc_.find(id);
        return it == acc_.end() ? nullptr : &it->second;
    }

private:
    std::map<std::string, Acc> acc_;
};

const std::string& formula_of(const std::string& id) {
    static const std::string none;
    for (const auto& c : check_catalog()) {
        if (c.id == id) return c.formula;
    }
    return none;
}

const Expectation* expectation(const CatalogEntry& e, const std::string& key) {
    for (const auto& x : e.expectations) {
        if (x.key == key) return &x;
    }
    return nullptr;
}

CheckRecord base_record(const std::string& id, const std::string& target, const Collector& c, double tol) {
    CheckRecord r;
    r.check_id = id;
    r.formula = formula_of(id);
    r.target = target;
    r.tolerance = tol;
    if (const Acc* a = c.get(id)) {
        r.samples = a->samples;
        r.max_residual = a->sup;
        r.notes = a->notes;
        if (a->skip) {
            r.status = Status::Skipped;
            r.notes.push_back(*a->skip);
            return r;
        }
    }
    r.status = r.max_residual < tol ? Status::Pass : Status::Fail;
    return r;
}

std::array<double, 3> fitted(const AmbientModel& model, std::span<const double> p) {
    auto f = fit_gssf(model, p);
    return {f.f1, f.f2, f.f3};
}

std::vector<CheckRecord> run_ambient(const std::string& name, const SuiteConfig& cfg, const std::set<std::string>& want) {
    const auto model = get_model(name);
    const auto& entry = catalog_entry(name);
    const double tol = cfg.tolerance;
    Rng rng(cfg.seed ^ fnv1a(name));
    auto pts = sample_box(rng, cfg.points, model->dim, -1.0, 1.0);
    Collector c;
    const bool known = model->known_f.has_value();
    bool first = true;
    std::array<double, 3> fsum{};
    for (const auto& p : pts) {
        for (const auto& r : check_acs_axioms(*model, p).residuals) c.add(r.id, r.value);
        std::array<double, 3> f{};
        try {
            auto fit = fit_gssf(*model, p);
            f = {fit.f1, fit.f2, fit.f3};
            double res = fit.residual;
            if (known) {
                for (int i = 0; i < 3; ++i) res = std::max(res, std::abs(f[static_cast<std::size_t>(i)] - (*model->known_f)[static_cast<std::size_t>(i)]));
            }
            c.add("gssf.fit", res);
        } catch (const Error& e) {
            c.add("gssf.fit", INFINITY);
            c.note("gssf.fit", e.what());
            continue;
        }
        for (std::size_t i = 0; i < 3; ++i) fsum[i] += f[i];
        auto id = gssf_identity_suite(*model, f, p);
        for (const auto& r : id.residuals) c.add(r.id, r.value);
        auto ss = ssmc_curvature_suite(*model, f, p);
        for (const auto& r : ss.residuals) c.add(r.id, r.value);
        if (first) {
            for (const auto& n : id.notes) {
                for (const auto& r : id.residuals) c.note(r.id, n);
            }
            for (const auto& n : ss.notes) c.note("ssmc.2.45", n);
            c.note("ssmc.2.44", "Ricci arguments read as the same pair throughout");
            c.note("ssmc.2.48", ss.notes.size() > 3 ? ss.notes[3] : "");
            first = false;
        }
    }
    if (cfg.points > 0) {
        const double np = static_cast<double>(cfg.points);
        c.note("gssf.fit", "mean f = (" + num(fsum[0] / np) + ", " + num(fsum[1] / np) + ", " + num(fsum[2] / np) + ")");
    }
    if (const auto* e = expectation(entry, "f")) c.note("gssf.fit", "expected f = " + e->value);

    std::vector<CheckRecord> out;
    for (const auto& info : check_catalog()) {
        if (!info.ambient || !want.count(info.id)) continue;
        out.push_back(base_record(info.id, name, c, tol));
    }
    return out;
}

std::vector<CheckRecord> run_immersion(const std::string& name, const SuiteConfig& cfg, const std::set<std::string>& want) {
    const Immersion imm = get_example(name);
    const auto& entry = catalog_entry(name);
    const double tol = cfg.tolerance;
    const int k = imm.map.domain_dim();
    const std::uint64_t seed = cfg.seed ^ fnv1a(name);
    Rng rng(seed);
    auto pts = sample_box(rng, cfg.points, k, imm.box_lo, imm.box_hi);
    Collector c;
    std::vector<CheckRecord> out;
    auto wanted = [&](const std::string& id) { return want.count(id) > 0; };

    // classification over its own sample stream
    std::optional<Classification> cls;
    CheckRecord rc;
    rc.check_id = "sub.class";
    rc.formula = formula_of("sub.class");
    rc.target = name;
    rc.tolerance = tol;
    try {
        SamplingPlan plan;
        plan.points = cfg.points;
        plan.seed = seed ^ 0x9e3779b97f4a7c15ULL;
        cls = classify(imm, plan);
        rc.samples = cls->samples;
        rc.notes.push_back("class " + to_string(cls->kind));
        rc.notes.push_back("cos mean " + num(cls->cos_mean) + ", stddev " + num(cls->cos_stddev));
        rc.notes.push_back("xi normal component " + num(cls->xi_tangency_residual));
        double measure = 0.0;
        switch (cls->kind) {
            case SubmanifoldClass::Invariant: measure = cls->max_normal_leak; break;
            case SubmanifoldClass::AntiInvariant: measure = cls->max_tangent_leak; break;
            case SubmanifoldClass::Slant: measure = cls->cos_stddev; break;
            case SubmanifoldClass::Generic: measure = cls->cos_stddev; break;
        }
        bool ok = true;
        if (const auto* e = expectation(entry, "class")) {
            ok = e->value == to_string(cls->kind);
            if (!ok) rc.notes.push_back("expected class " + e->value);
        }
        if (const auto* e = expectation(entry, "cos_theta")) {
            measure = std::max(measure, std::abs(cls->cos_mean - std::stod(e->value)));
        }
        rc.max_residual = measure;
        rc.status = ok && measure < tol ? Status::Pass : Status::Fail;
    } catch (const Error& e) {
        rc.status = Status::Fail;
        rc.max_residual = INFINITY;
        rc.notes.push_back(e.what());
    }
    if (wanted("sub.class")) out.push_back(rc);

    const bool invariant = cls && cls->kind == SubmanifoldClass::Invariant;
    const bool xi_tangent = cls && cls->xi_tangency_residual < 1e-8;
    const auto* exp_tg = expectation(entry, "totally_geodesic");
    const auto* exp_H = expectation(entry, "mean_curvature_norm");

    double tg = 0.0, min_d = INFINITY, lc_sol = 0.0, ss_sol = 0.0;
    bool first = true;
    for (const auto& u : pts) {
        auto F = second_fundamental_form(imm, u);
        tg = std::max(tg, F.tg_residual);
        double hres = 0.0;
        if (exp_tg) hres = std::max(hres, F.tg_residual);
        if (exp_H) hres = std::max(hres, std::abs(F.H_norm - std::stod(exp_H->value)));
        c.add("sub.h", hres);
        c.add("sub.2.18", shape_duality_residual(imm, u));
        c.add("sub.2.30", gauss_residual(imm, u));

        auto p = imm.map(std::vector<double>(u));
        auto f = fitted(*imm.ambient, p);
        const double d = f[0] - f[2];
        min_d = std::min(min_d, std::abs(d));

        if (invariant) {
            auto suite = invariant_identity_suite(imm, u, f);
            double sup = 0.0;
            for (const auto& r : suite.residuals) {
                if (r.id == "sub.2.30") continue;
                sup = std::max(sup, r.value);
                c.add("prop." + r.id, r.value);
            }
            c.add("sub.prop2.1", sup);
            for (const auto& n : suite.notes) c.note("sub.prop2.1", n);
            auto ind = ssmc_induced(imm, u);
            c.add("ssmc.4.3", ind.at("ssmc.4.3"));
            c.add("ssmc.4.4", std::max({ind.at("ssmc.4.4"), ind.at("ssmc.mean"), ind.at("ssmc.perp")}));
        } else {
            c.skip("sub.prop2.1", "not invariant");
            c.skip("ssmc.4.3", "not invariant");
            c.skip("ssmc.4.4", "not invariant");
        }

        for (auto kind : {DefectKind::Parallel, DefectKind::Semiparallel, DefectKind::TwoSemiparallel,
                          DefectKind::ConcircularSemiparallel, DefectKind::ConcircularTwoSemiparallel}) {
            const std::string id = "defect." + to_string(kind);
            try {
                c.add(id, defect(imm, u, kind).sup());
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Dimension) throw;
                c.skip(id, "even submanifold dimension");
            }
        }
        const std::pair<RecurrenceKind, const char*> rec[] = {{RecurrenceKind::Recurrent, "ssmc.rec.4.7"},
                                                              {RecurrenceKind::TwoRecurrent, "ssmc.rec.4.7a"},
                                                              {RecurrenceKind::GeneralizedTwoRecurrent, "ssmc.rec.4.11"}};
        for (const auto& [kind, id] : rec) {
            auto r = recurrence_residual(imm, u, kind);
            c.add(id, r.residual);
            if (r.underdetermined) c.note(id, "minimum-norm solution of an underdetermined fit");
        }

        if (xi_tangent) {
            auto lc = soliton_fit(imm, u, ConnectionKind::LeviCivita);
            auto ss = soliton_fit(imm, u, ConnectionKind::SemiSymmetricMetric);
            auto ed = pseudo_eta_einstein_residual(imm, u, ss);
            lc_sol = std::max(lc_sol, lc.residual);
            ss_sol = std::max(ss_sol, ss.residual);
            c.add("sol.5.1", einstein_residual(lc));
            c.add("sol.5.3", ed.explicit_residual);
            c.add("sol.5.6", ed.residual);
            if (first) {
                c.note("sol.5.1", "lambda " + num(lc.lambda));
                c.note("sol.5.3", "lambda " + num(ss.lambda) + ", a " + num(ss.a));
                c.note("sol.5.3", "n_sub = " + num(ss.n_sub) + " in the (2n - 1) alpha term");
                c.note("sol.5.6", "p " + num(ed.p_coef) + ", q " + num(ed.q_coef) + ", s " + num(ed.s_coef));
                c.note("sol.5.6", "S(xi, xi) " + num(ed.p_coef + ed.q_coef));
            }
            if (invariant) {
                const auto K = static_cast<std::size_t>(k);
                auto Ginv = linalg::inverse<double>(lc.metric.components(), k);
                c.add("sol.5.2", metric_norm(Ginv, lc.lie_derivative.components(), k));
                c.add("sol.5.4", ssmc_nabla_xi_residual(imm, u, d));
                Vec t(K * K);
                for (std::size_t a = 0; a < K; ++a) {
                    for (std::size_t b = 0; b < K; ++b) {
                        t[a * K + b] = ss.lie_derivative.at({a, b}) -
                                       2.0 * (ss.metric.at({a, b}) - ss.eta[a] * ss.eta[b]);
                    }
                }
                c.add("sol.5.5", metric_norm(Ginv, t, k));
            } else {
                for (const char* id : {"sol.5.2", "sol.5.4", "sol.5.5"}) c.skip(id, "not invariant");
            }
        } else {
            for (const char* id : {"sol.5.1", "sol.5.2", "sol.5.3", "sol.5.4", "sol.5.5", "sol.5.6"}) c.skip(id, "xi not tangent");
        }
        first = false;
    }
    const bool totally_geodesic = tg < tol;
    const std::string tg_note = "totally geodesic: " + std::string(totally_geodesic ? "yes" : "no") + " (sup |h| " + num(tg) + ")";

    auto forward = [&](const std::string& id) {
        CheckRecord r = base_record(id, name, c, tol);
        if (r.status == Status::Skipped) return r;
        r.notes.push_back(tg_note);
        if (!totally_geodesic) r.status = Status::HypothesisFails;
        return r;
    };
    auto conditional = [&](const std::string& id, double hyp, const char* what) {
        CheckRecord r = base_record(id, name, c, tol);
        if (r.status == Status::Skipped) return r;
        r.notes.push_back(std::string(what) + " residual " + num(hyp));
        if (!(hyp < tol)) r.status = Status::HypothesisFails;
        return r;
    };

    for (const auto& info : check_catalog()) {
        const std::string& id = info.id;
        if (info.ambient || id == "sub.class" || !wanted(id)) continue;
        if (id.rfind("defect.", 0) == 0 || id.rfind("ssmc.rec.", 0) == 0) {
            out.push_back(forward(id));
        } else if (id == "sol.5.1") {
            out.push_back(conditional(id, lc_sol, "Levi-Civita soliton"));
        } else if (id == "sol.5.3") {
            out.push_back(conditional(id, ss_sol, "semi-symmetric soliton"));
        } else if (id == "sub.prop2.1") {
            CheckRecord r = base_record(id, name, c, tol);
            if (r.status != Status::Skipped) {
                for (const char* sub : {"sub.2.31", "sub.2.32", "sub.2.33", "sub.2.34", "sub.2.35", "sub.2.36"}) {
                    r.notes.push_back(std::string(sub) + " " + num(c.sup(std::string("prop.") + sub)));
                }
            }
            out.push_back(r);
        } else if (id.rfind("equiv.", 0) == 0) {
            CheckRecord r;
            r.check_id = id;
            r.formula = info.formula;
            r.target = name;
            r.tolerance = tol;
            r.samples = cfg.points;
            if (!invariant) {
                r.status = Status::Skipped;
                r.notes.push_back("not invariant");
                out.push_back(r);
                continue;
            }
            r.notes.push_back(tg_note);
            if (id == "equiv.6.1" || id == "equiv.6.2") {
                std::vector<std::string> ids;
                if (id == "equiv.6.1") {
                    ids = {"defect.parallel", "defect.semi", "defect.2semi"};
                    if (k % 2 == 1) {
                        ids.push_back("defect.conc-semi");
                        ids.push_back("defect.conc-2semi");
                    }
                } else {
                    ids = {"ssmc.rec.4.7", "ssmc.rec.4.7a", "ssmc.rec.4.11"};
                }
                double sup = 0.0;
                for (const auto& x : ids) sup = std::max(sup, c.sup(x));
                r.max_residual = sup;
                const bool vanish = sup < tol;
                if (id == "equiv.6.1" && !(min_d >= tol)) {
                    r.status = Status::HypothesisFails;
                    r.notes.push_back("f1 - f3 vanishes");
                } else {
                    r.status = vanish == totally_geodesic ? Status::Pass : Status::Fail;
                    if (id == "equiv.6.2") r.notes.push_back("(f1 - f3)^2 + 1 > 0 always");
                }
            } else {
                const bool h_lc = lc_sol < tol, h_ss = ss_sol < tol;
                double sup = 0.0;
                if (h_lc) sup = std::max(sup, c.sup("sol.5.1"));
                if (h_ss) sup = std::max(sup, c.sup("sol.5.3"));
                r.max_residual = sup;
                r.notes.push_back("Levi-Civita soliton residual " + num(lc_sol));
                r.notes.push_back("semi-symmetric soliton residual " + num(ss_sol));
                if (!h_lc && !h_ss) r.status = Status::HypothesisFails;
                else r.status = sup < tol ? Status::Pass : Status::Fail;
            }
            out.push_back(r);
        } else {
            out.push_back(base_record(id, name, c, tol));
        }
    }
    return out;
}

}  // namespace

std::map<std::string, int> VerificationReport::summary() const {
    std::map<std::string, int> s{{"pass", 0}, {"fail", 0}, {"hypothesis-fails", 0}, {"skipped", 0}};
    for (const auto& r : records) ++s[to_string(r.status)];
    s["total"] = static_cast<int>(records.size());
    return s;
}

bool VerificationReport::all_passed() const {
    return std::none_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.status == Status::Fail; });
}

VerificationReport run_suite(const SuiteConfig& config) {
    if (config.points < 1) throw Error(ErrorKind::Usage, "points must be positive");
    if (!(config.tolerance > 0.0)) throw Error(ErrorKind::Usage, "tolerance must be positive");
    if (config.format != "text" && config.format != "json") throw Error(ErrorKind::Usage, "format must be text or json");

    const auto models = model_names();
    const auto examples = example_names();
    std::vector<std::string> targets = config.targets;
    if (targets.empty()) {
        targets = models;
        targets.insert(targets.end(), examples.begin(), examples.end());
    }
    for (const auto& t : targets) {
        if (std::find(models.begin(), models.end(), t) == models.end() &&
            std::find(examples.begin(), examples.end(), t) == examples.end()) {
            throw Error(ErrorKind::Usage, "unknown target '" + t + "'");
        }
    }
    std::set<std::string> want;
    if (config.checks.empty()) {
        for (const auto& c : check_catalog()) want.insert(c.id);
    } else {
        for (const auto& id : config.checks) {
            if (formula_of(id).empty()) throw Error(ErrorKind::Usage, "unknown check '" + id + "'");
            want.insert(id);
        }
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    auto run_one = [&](const std::string& t) {
        if (std::find(models.begin(), models.end(), t) != models.end()) return run_ambient(t, config, want);
        return run_immersion(t, config, want);
    };

    VerificationReport rep;
    rep.config = config;
    rep.config.targets = targets;
    rep.config.checks.assign(want.begin(), want.end());
    rep.version = artifact_version();
    if (config.parallel) {
        std::vector<std::future<std::vector<CheckRecord>>> jobs;
        for (const auto& t : targets) jobs.push_back(std::async(std::launch::async, run_one, t));
        for (auto& j : jobs) {
            auto r = j.get();
            rep.records.insert(rep.records.end(), r.begin(), r.end());
        }
    } else {
        for (const auto& t : targets) {
            auto r = run_one(t);
            rep.records.insert(rep.records.end(), r.begin(), r.end());
        }
    }
    std::sort(rep.records.begin(), rep.records.end(), [](const CheckRecord& a, const CheckRecord& b) {
        return std::tie(a.target, a.check_id) < std::tie(b.target, b.check_id);
    });
    return rep;
}

std::string emit_report(const VerificationReport& report, const std::string& format) {
    if (format == "json") {
        using nlohmann::json;
        json recs = json::array();
        for (const auto& r : report.records) {
            json j;
            j["check_id"] = r.check_id;
            j["formula"] = r.formula;
            j["target"] = r.target;
            j["samples"] = r.samples;
            if (std::isfinite(r.max_residual)) j["max_residual"] = r.max_residual;
            else j["max_residual"] = nullptr;
            j["tolerance"] = r.tolerance;
            j["status"] = to_string(r.status);
            j["notes"] = r.notes;
            recs.push_back(std::move(j));
        }
        json doc;
        doc["records"] = std::move(recs);
        doc["summary"] = report.summary();
        doc["version"] = report.version;
        doc["config"] = {{"targets", report.config.targets},
                         {"checks", report.config.checks},
                         {"points", report.config.points},
                         {"seed", report.config.seed},
                         {"tolerance", report.config.tolerance}};
        return doc.dump(2) + "\n";
    }
    if (format != "text") throw Error(ErrorKind::Usage, "format must be text or json");
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-18s %-18s %-17s %-13s %-9s %s\n", "target", "check", "status", "max_residual",
                  "tolerance", "samples");
    os << line;
    for (const auto& r : report.records) {
        std::snprintf(line, sizeof line, "%-18s %-18s %-17s %-13.4e %-9.1e %d\n", r.target.c_str(), r.check_id.c_str(),
                      to_string(r.status).c_str(), r.max_residual, r.tolerance, r.samples);
        os << line;
    }
    auto s = report.summary();
    os << "summary: " << s["pass"] << " pass, " << s["fail"] << " fail, " << s["hypothesis-fails"] << " hypothesis-fails, "
       << s["skipped"] << " skipped, " << s["total"] << " total\n";
    return os.str();
}

}  // namespace gssf
