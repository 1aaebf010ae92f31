#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "gssf/catalog.hpp"
#include "gssf/error.hpp"
#include "gssf/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int list_entries() {
    std::cout << "targets:\n";
    for (const auto& e : gssf::catalog_entries()) {
        std::cout << "  " << e.name << (e.kind == gssf::EntryKind::Ambient ? "  (ambient, dim " : "  (submanifold, dim ")
                  << e.dim << ")\n";
    }
    std::cout << "checks:\n";
    for (const auto& c : gssf::check_catalog()) {
        std::cout << "  " << c.id << (c.ambient ? "  [ambient]  " : "  [submanifold]  ") << c.formula << "\n";
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification of generalized Sasakian-space-form identities"};
    app.require_subcommand(1);

    gssf::SuiteConfig cfg;
    auto* run = app.add_subcommand("run", "run verification checks");
    run->add_option("--target", cfg.targets, "catalog entry (repeatable)");
    run->add_option("--check", cfg.checks, "check id (repeatable)");
    run->add_option("--points", cfg.points, "sample points per target")->check(CLI::PositiveNumber);
    run->add_option("--seed", cfg.seed, "random seed");
    run->add_option("--tol", cfg.tolerance, "residual tolerance")->check(CLI::PositiveNumber);
    run->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    std::string out;
    run->add_option("--out", out, "write the report to a file");
    run->add_flag("--parallel", cfg.parallel, "run targets concurrently");

    app.add_subcommand("list", "list catalog entries and check ids");
    app.add_subcommand("schema", "print the JSON report schema");
    app.add_subcommand("catalog", "print the catalog as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    if (app.got_subcommand("list")) return list_entries();
    if (app.got_subcommand("schema")) {
        std::cout << gssf::report_schema();
        return kExitPass;
    }
    if (app.got_subcommand("catalog")) {
        std::cout << gssf::catalog_json() << "\n";
        return kExitPass;
    }

    if (const char* env = std::getenv("GSSF_VERIFY_SEED")) {
        try {
            std::size_t used = 0;
            cfg.seed = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
        } catch (const std::exception&) {
            std::cerr << "error: GSSF_VERIFY_SEED must be a non-negative integer\n";
            return kExitUsage;
        }
    }
    if (!out.empty()) cfg.output = out;

    gssf::VerificationReport report;
    std::string text;
    try {
        report = gssf::run_suite(cfg);
        text = gssf::emit_report(report, cfg.format);
    } catch (const gssf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == gssf::ErrorKind::Usage || e.kind() == gssf::ErrorKind::NotFound ? kExitUsage : kExitFail;
    }

    if (cfg.output) {
        std::ofstream f(*cfg.output, std::ios::binary);
        if (!f || !(f << text) || !f.flush()) {
            std::cerr << "error: cannot write " << *cfg.output << "\n";
            return kExitIo;
        }
    } else {
        std::cout << text;
    }
    return report.all_passed() ? kExitPass : kExitFail;
}
