#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "gssf/contact.hpp"

namespace gssf {

struct Immersion {
    std::string name;
    SmoothMap map;
    std::shared_ptr<const AmbientModel> ambient;
    /// Domain box [lo, hi]^k sampled by the suites.
    double box_lo = -1.0;
    double box_hi = 1.0;
};

/// An expected value with where it comes from.
struct Expectation {
    std::string key;
    std::string value;  // rendered as text, e.g. "Slant", "0.6666666666666666"
    std::string provenance;
};

enum class EntryKind { Ambient, Submanifold };

struct CatalogEntry {
    std::string name;
    EntryKind kind = EntryKind::Ambient;
    int dim = 0;          // ambient dimension or submanifold dimension
    int ambient_dim = 0;
    std::string ambient;  // ambient model name for submanifolds
    std::string description;
    std::vector<Expectation> expectations;
};

std::shared_ptr<const AmbientModel> get_model(const std::string& name);
Immersion get_example(const std::string& name);

std::vector<std::string> model_names();
std::vector<std::string> example_names();
/// All entries, ambient models first, each group in registry order.
const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& catalog_entry(const std::string& name);

/// Deterministic JSON rendering of the catalog metadata.
std::string catalog_json();

/// Flat chart with phi(d/dx_i) = -d/dy_i, phi(d/dy_j) = d/dx_j, xi = d/dt, eta = dt.
AmbientModel make_flat_model(int n);
/// Darboux-form Sasakian structure of constant phi-sectional curvature -3.
AmbientModel make_sasakian_model(int n);

}  // namespace gssf
