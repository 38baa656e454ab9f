#include "gcm/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace gcm {

namespace {

using nlohmann::json;

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

SuperalgebraTag tag_from_string(const std::string& s) {
    if (s == "gl20") return SuperalgebraTag::GL20;
    if (s == "gl11") return SuperalgebraTag::GL11;
    if (s == "gl02") return SuperalgebraTag::GL02;
    throw std::invalid_argument("unknown superalgebra: " + s);
}

RootFamily family_from_string(const std::string& s) {
    if (s == "A") return RootFamily::A;
    if (s == "B") return RootFamily::B;
    if (s == "C") return RootFamily::C;
    if (s == "D") return RootFamily::D;
    throw std::invalid_argument("unknown root system: " + s);
}

json roots_to_json(const std::vector<cplx>& mu) {
    json out = json::array();
    for (const cplx& m : mu) out.push_back(complex_to_json(m));
    return out;
}

}  // namespace

CampaignConfig CampaignConfig::from_json(const nlohmann::json& j) {
    CampaignConfig cfg;
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        cfg.tolerances.bethe = t.value("bethe", cfg.tolerances.bethe);
        cfg.tolerances.collapse = t.value("collapse", cfg.tolerances.collapse);
        cfg.tolerances.identity = t.value("identity", cfg.tolerances.identity);
    }
    if (j.contains("seeds")) {
        const json& s = j.at("seeds");
        cfg.seeds.rng = s.value("rng", cfg.seeds.rng);
        cfg.seeds.newton_count = s.value("newton_count", cfg.seeds.newton_count);
    }
    cfg.output = j.value("output", std::string{});
    for (const json& c : j.at("cases")) {
        CaseConfig cc;
        cc.root_system = c.at("root_system").get<std::string>();
        cc.superalgebra = c.value("superalgebra", std::string{"gl20"});
        cc.N = c.at("N").get<int>();
        if (c.contains("M")) {
            if (c.at("M").is_array())
                cc.M = c.at("M").get<std::vector<int>>();
            else
                cc.M = {c.at("M").get<int>()};
        }
        if (c.contains("z")) {
            if (c.at("z").is_string()) {
                if (c.at("z").get<std::string>() != "random")
                    throw std::invalid_argument("z must be a list or \"random\"");
                cc.random_z = true;
            } else {
                for (const json& zv : c.at("z")) cc.z.push_back(complex_from_json(zv));
            }
        } else {
            cc.random_z = true;
        }
        cc.z_seed = c.value("seed", std::uint64_t{1});
        cc.radius = c.value("radius", 2.0);
        if (c.contains("xi")) cc.xi = complex_from_json(c.at("xi"));
        if (c.contains("hbar")) cc.hbar = complex_from_json(c.at("hbar"));
        if (c.contains("omega")) cc.omega = complex_from_json(c.at("omega"));
        cfg.cases.push_back(std::move(cc));
    }
    return cfg;
}

std::vector<cplx> draw_marked_points(int N, std::uint64_t seed, double radius) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const double sep = 0.1 * radius;
    for (int attempt = 0; attempt < 20000; ++attempt) {
        std::vector<cplx> z;
        while (static_cast<int>(z.size()) < N) {
            const cplx v(radius * unif(rng), radius * unif(rng));
            if (std::abs(v) > radius) continue;
            z.push_back(v);
        }
        bool ok = true;
        for (int i = 0; i < N && ok; ++i) {
            if (std::abs(z[i]) < sep) ok = false;
            for (int j = i + 1; j < N && ok; ++j)
                if (std::abs(z[i] - z[j]) < sep || std::abs(z[i] + z[j]) < sep) ok = false;
        }
        if (ok) return z;
    }
    throw std::runtime_error("draw_marked_points: separation constraint not satisfiable");
}

namespace {

struct CaseRunner {
    const CampaignConfig& cfg;
    const CampaignOptions& opt;
    RootCache* cache;

    json run(const CaseConfig& cc) const {
        json out;
        const auto t0 = std::chrono::steady_clock::now();
        out["config"] = {{"root_system", cc.root_system},
                         {"N", cc.N},
                         {"hbar", complex_to_json(cc.hbar)}};
        try {
            const RootFamily fam = family_from_string(cc.root_system);
            std::vector<cplx> z =
                cc.random_z ? draw_marked_points(cc.N, cc.z_seed, cc.radius) : cc.z;
            out["config"]["z"] = roots_to_json(z);
            if (fam == RootFamily::A) {
                out["config"]["omega"] = complex_to_json(cc.omega);
                run_atype(cc, z, out);
            } else {
                out["config"]["superalgebra"] = cc.superalgebra;
                run_boundary(cc, fam, z, out);
            }
            out["status"] = "ok";
        } catch (const std::exception& e) {
            out["status"] = "rejected";
            out["reason"] = e.what();
        }
        out["wall_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        return out;
    }

    std::vector<int> sectors(const CaseConfig& cc) const {
        if (!cc.M.empty()) return cc.M;
        std::vector<int> ms(cc.N + 1);
        for (int m = 0; m <= cc.N; ++m) ms[m] = m;
        return ms;
    }

    SolveOptions solve_options() const {
        SolveOptions so;
        so.seed_count = cfg.seeds.newton_count;
        so.rng_seed = cfg.seeds.rng;
        so.accept_residual = cfg.tolerances.bethe;
        return so;
    }

    std::vector<BetheRoots> roots_for(const CacheKey& key, const GaudinSpec& spec,
                                      SuperalgebraTag tag) const {
        if (cache) {
            if (auto hit = cache->find(key)) {
                bool valid = !hit->empty() || key.M == 0;
                for (const BetheRoots& r : *hit) {
                    double res = 0;
                    try {
                        for (const cplx& f : bethe_residual(spec, tag, r.mu))
                            res = std::max(res, std::abs(f));
                    } catch (const std::exception&) {
                        res = 1.0;
                    }
                    if (!(res < cfg.tolerances.bethe)) valid = false;
                }
                if (valid) return *hit;
            }
        }
        auto roots = solve_bethe(spec, tag, solve_options());
        if (cache) cache->put(key, roots);
        return roots;
    }

    void run_boundary(const CaseConfig& cc, RootFamily fam, const std::vector<cplx>& z,
                      json& out) const {
        const SuperalgebraTag tag = tag_from_string(cc.superalgebra);
        GaudinSpec base;
        base.grading = grading_of(tag);
        base.z = z;
        base.hbar = cc.hbar;
        base.geometry = fam == RootFamily::B ? Geometry::TwoNPlusOne : Geometry::TwoN;
        if (fam == RootFamily::B || fam == RootFamily::D)
            base.xi = base.forced_xi();
        else
            base.xi = cc.xi;
        out["config"]["xi"] = complex_to_json(base.xi);
        const RootSystem rs{fam, cc.N};

        ExactSpectrum oracle;
        bool have_oracle = false;
        if (opt.oracle && !opt.solve_only && (1L << base.sites()) <= 256) {
            oracle = exact_spectrum(base, cfg.seeds.rng);
            have_oracle = true;
        }
        std::vector<bool> covered(have_oracle ? oracle.tuples.size() : 0, false);

        json sector_list = json::array();
        for (int M : sectors(cc)) {
            json sec;
            sec["M"] = M;
            GaudinSpec spec = base;
            spec.M = M;
            CacheKey key{"boundary", tag_name(tag), spec.geometry, cc.N, M,
                         z,          base.xi,        cc.hbar};
            const auto roots = roots_for(key, spec, tag);
            sec["no_admissible_roots"] = roots.empty();
            json rows = json::array();
            for (const BetheRoots& r : roots) {
                json row;
                row["mu"] = roots_to_json(r.mu);
                row["bethe_residual"] = r.residual;
                if (!opt.solve_only) {
                    CorrespondenceCase c{rs, tag, spec, r};
                    const CollapseReport rep = verify_collapse(c, cfg.tolerances.collapse);
                    row["collapse"] = {{"lax_size", rep.lax_size},
                                       {"lax_norm", rep.lax_norm},
                                       {"charpoly_defect", rep.charpoly_defect},
                                       {"max_abs_eigenvalue", rep.max_abs_eigenvalue},
                                       {"pass", rep.pass}};
                    bool ok = rep.pass;
                    if (M >= 1) {
                        const auto det = check_determinant_identity(c);
                        row["identity"] = {{"pointwise", det.pointwise},
                                           {"coeffwise", det.coeffwise}};
                        ok = ok && det.pointwise < cfg.tolerances.identity &&
                             det.coeffwise < cfg.tolerances.identity;
                    }
                    if (have_oracle) {
                        const auto pred = gaudin_eigenvalues(spec, tag, r.mu);
                        double best = 1e300;
                        for (std::size_t t = 0; t < oracle.tuples.size(); ++t) {
                            double d = 0;
                            for (int i = 0; i < cc.N; ++i)
                                d = std::max(d, std::abs(pred[i] - oracle.tuples[t][i]));
                            if (d < best) best = d;
                            if (d < 1e-8) covered[t] = true;
                        }
                        row["oracle_deviation"] = best;
                        ok = ok && best < 1e-8;
                    }
                    row["pass"] = ok;
                }
                rows.push_back(std::move(row));
            }
            sec["root_sets"] = std::move(rows);
            sector_list.push_back(std::move(sec));
        }
        out["sectors"] = std::move(sector_list);
        if (have_oracle) {
            int hit = 0;
            for (bool b : covered) hit += b;
            out["oracle_coverage"] = {{"matched_states", hit},
                                      {"total_states", covered.size()}};
        }
    }

    void run_atype(const CaseConfig& cc, const std::vector<cplx>& z, json& out) const {
        json sector_list = json::array();
        for (int M : sectors(cc)) {
            json sec;
            sec["M"] = M;
            CacheKey key{"atype", "", Geometry::TwoN, cc.N, M, z, cc.omega, cc.hbar};
            std::vector<BetheRoots> roots;
            bool from_cache = false;
            if (cache) {
                if (auto hit = cache->find(key)) {
                    from_cache = true;
                    for (const BetheRoots& r : *hit) {
                        double res = 0;
                        for (const cplx& f : atype_bethe_residual(z, r.mu, cc.omega, cc.hbar))
                            res = std::max(res, std::abs(f));
                        if (!(res < cfg.tolerances.bethe)) from_cache = false;
                    }
                    if (from_cache) roots = *hit;
                }
            }
            if (!from_cache) {
                roots = solve_bethe_atype(z, M, cc.omega, cc.hbar, solve_options());
                if (cache) cache->put(key, roots);
            }
            sec["no_admissible_roots"] = roots.empty();
            json rows = json::array();
            for (const BetheRoots& r : roots) {
                json row;
                row["mu"] = roots_to_json(r.mu);
                row["bethe_residual"] = r.residual;
                if (!opt.solve_only) {
                    const auto rep =
                        verify_collapse_atype(z, r.mu, cc.omega, cc.hbar, cfg.tolerances.collapse);
                    row["collapse"] = {{"coeff_defect", rep.coeff_defect},
                                       {"multiset_deviation", rep.multiset_deviation},
                                       {"pass", rep.pass}};
                    const auto det = check_determinant_identity_atype(z, r.mu, cc.omega, cc.hbar);
                    row["identity"] = {{"pointwise", det.pointwise},
                                       {"coeffwise", det.coeffwise}};
                    row["pass"] = rep.pass && det.pointwise < cfg.tolerances.identity &&
                                  det.coeffwise < cfg.tolerances.identity;
                }
                rows.push_back(std::move(row));
            }
            sec["root_sets"] = std::move(rows);
            sector_list.push_back(std::move(sec));
        }
        out["sectors"] = std::move(sector_list);
    }
};

}  // namespace

CampaignResult run_campaign(const CampaignConfig& config, const CampaignOptions& opt) {
    RootCache cache;
    const bool use_cache = !opt.cache_path.empty();
    if (use_cache) cache = RootCache::load(opt.cache_path);

    std::vector<json> results(config.cases.size());
    const int jobs = std::max(1, opt.jobs);
    if (jobs == 1 || config.cases.size() <= 1) {
        CaseRunner runner{config, opt, use_cache ? &cache : nullptr};
        for (std::size_t i = 0; i < config.cases.size(); ++i)
            results[i] = runner.run(config.cases[i]);
    } else {
        // case-level parallelism with deterministic merge ordering; each case
        // writes into its own cache shard, folded sequentially afterwards
        std::vector<RootCache> shards(config.cases.size());
        for (std::size_t i = 0; i < shards.size(); ++i) shards[i] = cache;
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= config.cases.size()) break;
                CaseRunner local{config, opt, use_cache ? &shards[i] : nullptr};
                results[i] = local.run(config.cases[i]);
            }
        };
        std::vector<std::thread> pool;
        const std::size_t nthreads = std::min<std::size_t>(jobs, config.cases.size());
        for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
        if (use_cache)
            for (const RootCache& shard : shards) cache.merge(shard);
    }
    if (use_cache) cache.save(opt.cache_path);

    CampaignResult out;
    int passed = 0, failed = 0, no_roots = 0, rejected = 0, sectors = 0;
    for (const json& r : results) {
        if (r.value("status", "") == "rejected") {
            ++rejected;
            out.any_failed = true;
            continue;
        }
        for (const json& sec : r.at("sectors")) {
            ++sectors;
            if (sec.at("no_admissible_roots").get<bool>()) ++no_roots;
            for (const json& row : sec.at("root_sets")) {
                if (!row.contains("pass")) continue;
                if (row.at("pass").get<bool>())
                    ++passed;
                else {
                    ++failed;
                    out.any_failed = true;
                }
            }
        }
    }
    out.report = {{"schema_version", 1},
                  {"summary",
                   {{"cases", results.size()},
                    {"sectors", sectors},
                    {"passed", passed},
                    {"failed", failed},
                    {"no_admissible_roots", no_roots},
                    {"rejected", rejected}}},
                  {"cases", results}};
    return out;
}

std::string report_to_csv(const nlohmann::json& report) {
    std::ostringstream os;
    os << "case,root_system,superalgebra,N,M,set,bethe_residual,charpoly_defect,"
          "max_abs_eigenvalue,identity_pointwise,identity_coeffwise,oracle_deviation,pass\n";
    int ci = 0;
    for (const json& r : report.at("cases")) {
        const json& cfg = r.at("config");
        if (r.value("status", "") == "rejected") {
            os << ci << ',' << cfg.value("root_system", "?") << ",,,,,,,,,,,rejected\n";
            ++ci;
            continue;
        }
        for (const json& sec : r.at("sectors")) {
            int si = 0;
            for (const json& row : sec.at("root_sets")) {
                os << ci << ',' << cfg.value("root_system", "?") << ','
                   << cfg.value("superalgebra", "") << ',' << cfg.value("N", 0) << ','
                   << sec.value("M", 0) << ',' << si << ','
                   << row.value("bethe_residual", 0.0) << ',';
                if (row.contains("collapse")) {
                    const json& c = row.at("collapse");
                    os << c.value("charpoly_defect", c.value("coeff_defect", 0.0)) << ','
                       << c.value("max_abs_eigenvalue", c.value("multiset_deviation", 0.0));
                } else {
                    os << ',';
                }
                os << ',';
                if (row.contains("identity"))
                    os << row.at("identity").value("pointwise", 0.0) << ','
                       << row.at("identity").value("coeffwise", 0.0);
                else
                    os << ',';
                os << ',' << row.value("oracle_deviation", 0.0) << ','
                   << (row.contains("pass") ? (row.at("pass").get<bool>() ? "1" : "0") : "")
                   << '\n';
                ++si;
            }
        }
        ++ci;
    }
    return os.str();
}

}  // namespace gcm
