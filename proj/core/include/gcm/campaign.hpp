#pragma once

// Batch verification campaigns across (root system x superalgebra x N x M)
// grids: configuration ingestion, case materialization, per-case pipeline
// (solve Bethe -> collapse -> identities -> oracle), root caching and
// machine-readable reports.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcm/cache.hpp"
#include "gcm/duality.hpp"

namespace gcm {

struct CaseConfig {
    std::string root_system;   // "A", "B", "C" or "D"
    std::string superalgebra;  // "gl20", "gl11", "gl02"; ignored for A
    int N = 1;
    std::vector<int> M;        // sectors to run; empty means 0..N
    std::vector<cplx> z;       // explicit marked points, or empty for random
    bool random_z = false;
    std::uint64_t z_seed = 1;
    double radius = 2.0;
    cplx xi{0.0};
    cplx hbar{1.0};
    cplx omega{0.0};           // A-type twist
};

struct Tolerances {
    double bethe = 1e-10;
    double collapse = 1e-8;
    double identity = 1e-9;
};

struct CampaignSeeds {
    std::uint64_t rng = 20240915;
    int newton_count = 64;
};

struct CampaignConfig {
    std::vector<CaseConfig> cases;
    Tolerances tolerances;
    CampaignSeeds seeds;
    std::string output;

    static CampaignConfig from_json(const nlohmann::json& j);
};

struct CampaignOptions {
    int jobs = 1;
    std::string cache_path;    // empty: no cache
    bool solve_only = false;   // stop after the Bethe stage (solve-bethe command)
    bool oracle = true;        // run the exact-diagonalization cross-check
};

struct CampaignResult {
    nlohmann::json report;
    bool any_failed = false;
};

/// Draw N random marked points in the disc of the given radius with pairwise
/// (and mirror) separation at least 0.1 * radius.
std::vector<cplx> draw_marked_points(int N, std::uint64_t seed, double radius);

CampaignResult run_campaign(const CampaignConfig& config, const CampaignOptions& opt = {});

/// Flatten a campaign report into CSV (one row per root set).
std::string report_to_csv(const nlohmann::json& report);

}  // namespace gcm
