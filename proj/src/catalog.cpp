#include "gssf/catalog.hpp"

#include <json.hpp>

#include <cmath>

namespace gssf {

namespace {

template <class T>
std::vector<T> zeros(std::size_t n) {
    return std::vector<T>(n, T(0.0));
}

}  // namespace

AmbientModel make_flat_model(int n) {
    const int m = 2 * n + 1;
    const auto U = static_cast<std::size_t>(m);
    const auto N = static_cast<std::size_t>(n);
    AmbientModel model;
    model.name = "flat_r" + std::to_string(m);
    model.dim = m;
    model.known_f = std::array<double, 3>{0.0, 0.0, 0.0};
    model.metric.dim = m;
    model.metric.g = SmoothMap::make(m, m * m, [U](auto x) {
        using T = typename decltype(x)::value_type;
        auto g = zeros<std::remove_cv_t<T>>(U * U);
        for (std::size_t i = 0; i < U; ++i) g[i * U + i] = 1.0;
        return g;
    });
    model.structure.phi = SmoothMap::make(m, m * m, [U, N](auto x) {
        using T = std::remove_cv_t<typename decltype(x)::value_type>;
        auto phi = zeros<T>(U * U);
        for (std::size_t i = 0; i < N; ++i) {
            phi[(N + i) * U + i] = -1.0;  // phi d/dx_i = -d/dy_i
            phi[i * U + (N + i)] = 1.0;   // phi d/dy_i = d/dx_i
        }
        return phi;
    });
    model.structure.xi = SmoothMap::make(m, m, [U](auto x) {
        using T = std::remove_cv_t<typename decltype(x)::value_type>;
        auto v = zeros<T>(U);
        v[U - 1] = 1.0;
        return v;
    });
    model.structure.eta = model.structure.xi;
    return model;
}

AmbientModel make_sasakian_model(int n) {
    const int m = 2 * n + 1;
    const auto U = static_cast<std::size_t>(m);
    const auto N = static_cast<std::size_t>(n);
    AmbientModel model;
    model.name = "sasakian_r" + std::to_string(m);
    model.dim = m;
    model.known_f = std::array<double, 3>{0.0, -1.0, -1.0};
    model.metric.dim = m;
    // eta = (dz - sum y_i dx_i) / 2, g = eta (x) eta + (1/4) sum (dx_i^2 + dy_i^2)
    model.metric.g = SmoothMap::make(m, m * m, [U, N](auto x) {
        using T = std::remove_cv_t<typename decltype(x)::value_type>;
        std::vector<T> eta = zeros<T>(U);
        for (std::size_t i = 0; i < N; ++i) eta[i] = x[N + i] * -0.5;
        eta[U - 1] = T(0.5);
        std::vector<T> g(U * U, T(0.0));
        for (std::size_t a = 0; a < U; ++a) {
            for (std::size_t b = 0; b < U; ++b) g[a * U + b] = eta[a] * eta[b];
        }
        for (std::size_t a = 0; a + 1 < U; ++a) g[a * U + a] = g[a * U + a] + 0.25;
        return g;
    });
    model.structure.phi = SmoothMap::make(m, m * m, [U, N](auto x) {
        using T = std::remove_cv_t<typename decltype(x)::value_type>;
        auto phi = zeros<T>(U * U);
        for (std::size_t i = 0; i < N; ++i) {
            phi[(N + i) * U + i] = -1.0;           // phi d/dx_i = -d/dy_i
            phi[i * U + (N + i)] = 1.0;            // phi d/dy_i = d/dx_i + y_i d/dz
            phi[(U - 1) * U + (N + i)] = x[N + i];
        }
        return phi;
    });
    model.structure.xi = SmoothMap::make(m, m, [U](auto x) {
        using T = std::remove_cv_t<typename decltype(x)::value_type>;
        auto v = zeros<T>(U);
        v[U - 1] = 2.0;
        return v;
    });
    model.structure.eta = SmoothMap::make(m, m, [U, N](auto x) {
        using T = std::remove_cv_t<typename decltype(x)::value_type>;
        auto v = zeros<T>(U);
        for (std::size_t i = 0; i < N; ++i) v[i] = x[N + i] * -0.5;
        v[U - 1] = 0.5;
        return v;
    });
    return model;
}

namespace {

struct Registry {
    std::map<std::string, std::shared_ptr<const AmbientModel>> models;
    std::map<std::string, Immersion> examples;
    std::vector<CatalogEntry> entries;
};

std::string num(double v) {
    nlohmann::json j = v;
    return j.dump();
}

Immersion make_example(const std::string& name, const std::string& ambient, int k, SmoothMap map,
                       const Registry& reg) {
    Immersion imm;
    imm.name = name;
    imm.map = std::move(map);
    imm.ambient = reg.models.at(ambient);
    if (imm.map.domain_dim() != k || imm.map.codomain_dim() != imm.ambient->dim) {
        throw Error(ErrorKind::Shape, "example " + name + " has inconsistent dimensions");
    }
    return imm;
}

Registry build_registry() {
    Registry reg;
    for (auto model : {make_flat_model(2), make_flat_model(3), make_sasakian_model(2), make_sasakian_model(3)}) {
        auto name = model.name;
        reg.models.emplace(name, std::make_shared<const AmbientModel>(std::move(model)));
    }

    auto add = [&](Immersion imm) { reg.examples.emplace(imm.name, std::move(imm)); };
    add(make_example("example_2_1", "flat_r5", 3, SmoothMap::make(3, 5, [](auto x) {
                         using T = std::remove_cv_t<typename decltype(x)::value_type>;
                         return std::vector<T>{x[0] + x[1], T(0.0), x[0] - x[1], T(0.0), x[2]};
                     }),
                     reg));
    add(make_example("example_2_2", "flat_r7", 3, SmoothMap::make(3, 7, [](auto x) {
                         using T = std::remove_cv_t<typename decltype(x)::value_type>;
                         using std::cos;
                         using std::sin;
                         T s = x[0] + x[1], d = x[0] - x[1];
                         return std::vector<T>{cos(s), cos(d), s, sin(s), sin(d), -x[0] - x[1], x[2]};
                     }),
                     reg));
    add(make_example("example_2_3", "flat_r7", 3, SmoothMap::make(3, 7, [](auto x) {
                         using T = std::remove_cv_t<typename decltype(x)::value_type>;
                         using std::cos;
                         using std::sin;
                         return std::vector<T>{sin(x[0]), sin(x[1]), x[0] + x[1], cos(x[0]), cos(x[1]), x[0] - x[1], x[2]};
                     }),
                     reg));
    add(make_example("example_2_4", "flat_r5", 3, SmoothMap::make(3, 5, [](auto x) {
                         using T = std::remove_cv_t<typename decltype(x)::value_type>;
                         return std::vector<T>{x[0], x[0] + x[1], x[1], x[0] - x[1], x[2]};
                     }),
                     reg));
    add(make_example("sasakian_r5_slice", "sasakian_r5", 3, SmoothMap::make(3, 5, [](auto x) {
                         using T = std::remove_cv_t<typename decltype(x)::value_type>;
                         return std::vector<T>{x[0], T(0.0), x[1], T(0.0), x[2]};
                     }),
                     reg));
    add(make_example("sasakian_r7_slice", "sasakian_r7", 5, SmoothMap::make(5, 7, [](auto x) {
                         using T = std::remove_cv_t<typename decltype(x)::value_type>;
                         return std::vector<T>{x[0], x[1], T(0.0), x[2], x[3], T(0.0), x[4]};
                     }),
                     reg));

    const std::string flat_f = "trivial: constant structure tensors, vanishing curvature";
    const std::string sas_f = "derived: phi-sectional curvature c = -3 gives f1 = (c+3)/4, f2 = f3 = (c-1)/4";
    auto ambient = [&](const std::string& name, std::string desc, std::vector<Expectation> ex) {
        CatalogEntry e;
        e.name = name;
        e.kind = EntryKind::Ambient;
        e.dim = reg.models.at(name)->dim;
        e.ambient_dim = e.dim;
        e.description = std::move(desc);
        e.expectations = std::move(ex);
        reg.entries.push_back(std::move(e));
    };
    ambient("flat_r5", "Euclidean R^5 (x1,x2,y1,y2,t) with the standard almost contact structure",
            {{"acs_axioms", "exact", "stated: almost contact metric structure on R^5"},
             {"f", "[0,0,0]", flat_f}});
    ambient("flat_r7", "Euclidean R^7 (x1,x2,x3,y1,y2,y3,t) with the standard almost contact structure",
            {{"acs_axioms", "exact", "stated: almost contact metric structure on R^7"},
             {"f", "[0,0,0]", flat_f}});
    ambient("sasakian_r5", "Sasakian R^5(-3) in Darboux coordinates (x1,x2,y1,y2,z)",
            {{"f", "[0,-1,-1]", sas_f},
             {"scalar_curvature", "-4", "derived: r = 2n(2n+1)f1 + 6n f2 - 4n f3 at n = 2"},
             {"ricci_xi_xi", "4", "derived: S(xi,xi) = 2n(f1-f3) at n = 2"},
             {"concircular_coefficient", num(1.2), "derived: f1 - f3 - r/(2n(2n+1)) = 1 + 4/20"}});
    ambient("sasakian_r7", "Sasakian R^7(-3) in Darboux coordinates (x1,x2,x3,y1,y2,y3,z)",
            {{"f", "[0,-1,-1]", sas_f},
             {"scalar_curvature", "-6", "derived: r = 2n(2n+1)f1 + 6n f2 - 4n f3 at n = 3"},
             {"ricci_xi_xi", "6", "derived: S(xi,xi) = 2n(f1-f3) at n = 3"}});

    auto sub = [&](const std::string& name, std::string desc, std::vector<Expectation> ex) {
        const auto& imm = reg.examples.at(name);
        CatalogEntry e;
        e.name = name;
        e.kind = EntryKind::Submanifold;
        e.dim = imm.map.domain_dim();
        e.ambient_dim = imm.ambient->dim;
        e.ambient = imm.ambient->name;
        e.description = std::move(desc);
        e.expectations = std::move(ex);
        reg.entries.push_back(std::move(e));
    };
    sub("example_2_1", "(u,v,t) -> (u+v, 0, u-v, 0, t) in flat_r5",
        {{"class", "Invariant", "stated: invariant submanifold with xi tangent"},
         {"induced_metric", "diag(2,2,1)", "derived: Gram matrix of the Jacobian columns"},
         {"totally_geodesic", "true", "trivial: linear subspace of flat space"}});
    sub("example_2_2", "(th,ps,t) -> (cos(th+ps), cos(th-ps), th+ps, sin(th+ps), sin(th-ps), -th-ps, t) in flat_r7",
        {{"class", "AntiInvariant", "stated: anti-invariant submanifold with xi tangent"},
         {"induced_metric", "[[4,2,0],[2,4,0],[0,0,1]]", "derived: Gram matrix of the Jacobian columns"}});
    sub("example_2_3", "(u,v,t) -> (sin u, sin v, u+v, cos u, cos v, u-v, t) in flat_r7",
        {{"class", "Slant", "stated: proper slant submanifold"},
         {"cos_theta", num(2.0 / 3.0), "stated: slant angle arccos(2/3)"},
         {"induced_metric", "diag(3,3,1)", "derived: hand dot products of the frame"},
         {"mean_curvature_norm", num(std::sqrt(2.0) / 9.0), "derived: H = (psi_uu + psi_vv)/9 with unit normals"}});
    sub("example_2_4", "(u,v,t) -> (u, u+v, v, u-v, t) in flat_r5",
        {{"class", "Slant", "stated: slant submanifold"},
         {"cos_theta", num(1.0 / 3.0), "stated: slant angle arccos(1/3)"},
         {"totally_geodesic", "true", "trivial: linear immersion into flat space"}});
    sub("sasakian_r5_slice", "(a,b,c) -> (a, 0, b, 0, c) in sasakian_r5",
        {{"class", "Invariant", "derived: phi preserves span{d/dx1, d/dy1 + y1 d/dz, d/dz}"},
         {"totally_geodesic", "true", "derived: Darboux slice, ambient derivatives stay tangent"},
         {"f", "[0,-1,-1]", sas_f}});
    sub("sasakian_r7_slice", "(x1,x2,y1,y2,z) -> (x1, x2, 0, y1, y2, 0, z) in sasakian_r7",
        {{"class", "Invariant", "derived: phi preserves the Darboux slice"},
         {"totally_geodesic", "true", "derived: Darboux slice, ambient derivatives stay tangent"},
         {"ricci_xi_xi", "4", "derived: induced Sasakian R^5(-3) has S = -2g + 6 eta(x)eta"}});
    return reg;
}

const Registry& registry() {
    static const Registry reg = build_registry();
    return reg;
}

std::string available(const std::vector<std::string>& names) {
    std::string s;
    for (const auto& n : names) s += (s.empty() ? "" : ", ") + n;
    return s;
}

}  // namespace

std::shared_ptr<const AmbientModel> get_model(const std::string& name) {
    const auto& reg = registry();
    auto it = reg.models.find(name);
    if (it == reg.models.end()) {
        throw Error(ErrorKind::NotFound, "unknown model '" + name + "'; available: " + available(model_names()));
    }
    return it->second;
}

Immersion get_example(const std::string& name) {
    const auto& reg = registry();
    auto it = reg.examples.find(name);
    if (it == reg.examples.end()) {
        throw Error(ErrorKind::NotFound, "unknown example '" + name + "'; available: " + available(example_names()));
    }
    return it->second;
}

std::vector<std::string> model_names() { return {"flat_r5", "flat_r7", "sasakian_r5", "sasakian_r7"}; }

std::vector<std::string> example_names() {
    return {"example_2_1", "example_2_2", "example_2_3", "example_2_4", "sasakian_r5_slice", "sasakian_r7_slice"};
}

const std::vector<CatalogEntry>& catalog_entries() { return registry().entries; }

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& e : registry().entries) {
        if (e.name == name) return e;
    }
    auto all = model_names();
    for (const auto& n : example_names()) all.push_back(n);
    throw Error(ErrorKind::NotFound, "unknown catalog entry '" + name + "'; available: " + available(all));
}

std::string catalog_json() {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : catalog_entries()) {
        nlohmann::json j;
        j["name"] = e.name;
        j["kind"] = e.kind == EntryKind::Ambient ? "ambient" : "submanifold";
        j["dim"] = e.dim;
        j["ambient_dim"] = e.ambient_dim;
        if (!e.ambient.empty()) j["ambient"] = e.ambient;
        j["description"] = e.description;
        nlohmann::json ex = nlohmann::json::array();
        for (const auto& x : e.expectations) {
            ex.push_back({{"key", x.key}, {"value", x.value}, {"provenance", x.provenance}});
        }
        j["expectations"] = ex;
        entries.push_back(j);
    }
    nlohmann::json root;
    root["entries"] = entries;
    return root.dump(2) + "\n";
}

}  // namespace gssf
