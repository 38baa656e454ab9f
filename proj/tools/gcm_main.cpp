// gcm: verification campaigns for the boundary Gaudin / Calogero-Moser
// correspondence. Subcommands: verify, solve-bethe, exact-diag,
// check-identities, report.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "gcm/campaign.hpp"
#include "gcm/chain.hpp"
#include "gcm/duality.hpp"

namespace {

using nlohmann::json;

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

std::string cache_path_or_env(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("GAUDIN_CM_CACHE")) return env;
    return {};
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    json j;
    in >> j;
    return j;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output: " + path);
    out << text;
}

int run_verify(const std::string& config_path, double tol, std::uint64_t seed, int jobs,
               const std::string& cache, const std::string& output, const std::string& format,
               bool solve_only) {
    gcm::CampaignConfig cfg;
    try {
        cfg = gcm::CampaignConfig::from_json(load_config(config_path));
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    if (tol > 0) cfg.tolerances.collapse = tol;
    if (seed) cfg.seeds.rng = seed;
    gcm::CampaignOptions opt;
    opt.jobs = jobs;
    opt.cache_path = cache_path_or_env(cache);
    opt.solve_only = solve_only;
    const auto result = gcm::run_campaign(cfg, opt);
    const std::string out_path = output.empty() ? cfg.output : output;
    write_output(out_path, format == "csv" ? gcm::report_to_csv(result.report)
                                           : result.report.dump(2) + "\n");
    return result.any_failed ? kExitFail : 0;
}

int run_exact_diag(const std::string& config_path, const std::string& output) {
    gcm::CampaignConfig cfg;
    try {
        cfg = gcm::CampaignConfig::from_json(load_config(config_path));
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    json cases = json::array();
    bool any_failed = false;
    for (const gcm::CaseConfig& cc : cfg.cases) {
        json entry;
        try {
            if (cc.root_system == "A")
                throw std::invalid_argument("exact-diag applies to the boundary models only");
            gcm::GaudinSpec spec;
            const auto tag = cc.superalgebra == "gl20"   ? gcm::SuperalgebraTag::GL20
                             : cc.superalgebra == "gl11" ? gcm::SuperalgebraTag::GL11
                                                         : gcm::SuperalgebraTag::GL02;
            spec.grading = gcm::grading_of(tag);
            spec.z = cc.random_z ? gcm::draw_marked_points(cc.N, cc.z_seed, cc.radius) : cc.z;
            spec.hbar = cc.hbar;
            spec.geometry =
                cc.root_system == "B" ? gcm::Geometry::TwoNPlusOne : gcm::Geometry::TwoN;
            spec.xi = (cc.root_system == "B" || cc.root_system == "D") ? spec.forced_xi()
                                                                       : cc.xi;
            const auto spectrum = gcm::exact_spectrum(spec, cfg.seeds.rng);
            json tuples = json::array();
            for (const auto& t : spectrum.tuples) {
                json row = json::array();
                for (const gcm::cplx& v : t) row.push_back(json::array({v.real(), v.imag()}));
                tuples.push_back(row);
            }
            entry = {{"root_system", cc.root_system},
                     {"superalgebra", cc.superalgebra},
                     {"N", cc.N},
                     {"tuples", tuples},
                     {"status", "ok"}};
        } catch (const std::exception& e) {
            entry = {{"root_system", cc.root_system}, {"status", "rejected"},
                     {"reason", e.what()}};
            any_failed = true;
        }
        cases.push_back(std::move(entry));
    }
    write_output(output, json{{"schema_version", 1}, {"cases", cases}}.dump(2) + "\n");
    return any_failed ? kExitFail : 0;
}

int run_check_identities(std::uint64_t seed, double tol, const std::string& output) {
    std::mt19937_64 rng(seed ? seed : 7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto rc = [&] { return gcm::cplx(unif(rng), unif(rng)); };
    auto draw = [&](int n) {
        std::uniform_int_distribution<std::uint64_t> s;
        return gcm::draw_marked_points(n, s(rng), 2.0);
    };

    double worst = 0;
    json checks = json::array();
    auto record = [&](const std::string& name, double v) {
        checks.push_back({{"check", name}, {"residual", v}});
        worst = std::max(worst, v);
    };

    for (int t = 0; t < 10; ++t) {
        std::uniform_int_distribution<int> nd(1, 4);
        const int N = nd(rng);
        std::uniform_int_distribution<int> md(0, N);
        const int M = md(rng);
        const auto z = draw(N);
        auto mus = M ? gcm::draw_marked_points(M, t + 1000, 1.3) : std::vector<gcm::cplx>{};
        const gcm::cplx xi = rc(), hbar = gcm::cplx(1.0) + 0.3 * rc();

        for (const char* fam : {"C", "B"}) {
            gcm::CorrespondenceCase c;
            c.rs = {fam[0] == 'C' ? gcm::RootFamily::C : gcm::RootFamily::B, N};
            c.tag = gcm::SuperalgebraTag::GL20;
            c.spec.grading = gcm::GL20;
            c.spec.z = z;
            c.spec.hbar = hbar;
            c.spec.M = M;
            c.spec.geometry =
                fam[0] == 'B' ? gcm::Geometry::TwoNPlusOne : gcm::Geometry::TwoN;
            c.spec.xi = fam[0] == 'B' ? c.spec.forced_xi() : xi;
            c.roots = {mus, 0.0, true};
            const auto rep = gcm::check_determinant_identity(c);
            record(std::string("determinant_") + fam, std::max(rep.pointwise, rep.coeffwise));
        }
        const auto repa = gcm::check_determinant_identity_atype(z, mus, rc(), hbar);
        record("determinant_A", std::max(repa.pointwise, repa.coeffwise));

        if (M >= 1) {
            const auto fr = gcm::check_frobenius_reduction(mus, xi, hbar);
            record("frobenius_reduction",
                   std::max({fr.matrix_residual, fr.row1_max, fr.minor_lower_max,
                             fr.charpoly_defect}));
        }
        gcm::PhaseState st{z, {}};
        for (int i = 0; i < N; ++i) st.qdot.push_back(rc());
        const auto ge = gcm::check_g4_evenness(st, hbar, rc(), seed + t);
        record("g4_evenness", std::max(ge.evenness_residual, ge.reduction_residual));
    }
    const bool ok = worst < tol;
    write_output(output, json{{"schema_version", 1},
                              {"tolerance", tol},
                              {"worst_residual", worst},
                              {"pass", ok},
                              {"checks", checks}}
                                 .dump(2) +
                             "\n");
    return ok ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary Gaudin / Calogero-Moser correspondence verifier"};
    app.require_subcommand(1);

    std::string config_path, cache, output, format = "json", report_input;
    double tol = 0;
    std::uint64_t seed = 0;
    int jobs = 1;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        if (needs_config)
            cmd->add_option("--config", config_path, "campaign config JSON")->required();
        cmd->add_option("--tol", tol, "tolerance override");
        cmd->add_option("--seed", seed, "RNG seed override");
        cmd->add_option("--jobs", jobs, "case-level parallelism");
        cmd->add_option("--cache", cache, "root-cache JSON path (or GAUDIN_CM_CACHE)");
        cmd->add_option("--output", output, "output path ('-' = stdout)");
        cmd->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* verify = app.add_subcommand("verify", "full verification pipeline");
    add_common(verify, true);
    CLI::App* solve = app.add_subcommand("solve-bethe", "Bethe roots only");
    add_common(solve, true);
    CLI::App* exact = app.add_subcommand("exact-diag", "exact-diagonalization spectra only");
    add_common(exact, true);
    CLI::App* idents = app.add_subcommand("check-identities",
                                          "off-shell identity battery with random draws");
    add_common(idents, false);
    CLI::App* report = app.add_subcommand("report", "re-render cached results");
    report->add_option("input", report_input, "cache file to render");
    add_common(report, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (verify->parsed())
            return run_verify(config_path, tol, seed, jobs, cache, output, format, false);
        if (solve->parsed())
            return run_verify(config_path, tol, seed, jobs, cache, output, format, true);
        if (exact->parsed()) return run_exact_diag(config_path, output);
        if (idents->parsed())
            return run_check_identities(seed, tol > 0 ? tol : 1e-9, output);
        if (report->parsed()) {
            const std::string path =
                !report_input.empty() ? report_input : cache_path_or_env(cache);
            if (path.empty()) {
                std::cerr << "report: no cache file given\n";
                return kExitConfig;
            }
            const auto rc = gcm::RootCache::load(path);
            write_output(output, rc.render(format));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
