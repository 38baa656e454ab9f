#pragma once

// Bethe-ansatz layer: residuals and eigenvalue formulas for the six boundary
// model variants and the A-type warm-up, a multi-start damped-Newton solver,
// the exact companion-matrix route for the decoupled gl(1|1) equations, and
// canonicalization / admissibility / deduplication of root sets.

#include <cstdint>
#include <vector>

#include "gcm/chain.hpp"

namespace gcm {

enum class SuperalgebraTag { GL20, GL11, GL02 };

Grading grading_of(SuperalgebraTag tag);
const char* tag_name(SuperalgebraTag tag);

/// A candidate or verified Bethe root set.
struct BetheRoots {
    std::vector<cplx> mu;
    double residual = 0.0;
    bool admissible = false;
};

/// LHS - RHS of the displayed Bethe equations, one entry per root:
/// gl(2|0)/gl(1|1)/gl(0|2) specializations for the 2N and 2N+1 geometries.
std::vector<cplx> bethe_residual(const GaudinSpec& spec, SuperalgebraTag tag,
                                 const std::vector<cplx>& mu);

/// The master parity-weighted forms of the same equations (used to cross-check
/// that the specializations were transcribed faithfully).
std::vector<cplx> bethe_residual_master(const GaudinSpec& spec, SuperalgebraTag tag,
                                        const std::vector<cplx>& mu);

/// Eigenvalues H_i (2N geometry) or H~_i (2N+1 geometry) of the Gaudin
/// Hamiltonians on the given root set, including the overall hbar.
std::vector<cplx> gaudin_eigenvalues(const GaudinSpec& spec, SuperalgebraTag tag,
                                     const std::vector<cplx>& mu);

struct SolveOptions {
    int seed_count = 64;
    std::uint64_t rng_seed = 20240915;
    double newton_tol = 1e-12;       // Newton convergence target
    double accept_residual = 1e-10;  // reporting gate on returned sets
    int max_iterations = 200;
    int max_halvings = 20;
    double dedup_tol = 1e-8;
    double admissibility_tol = 1e-8;
    double escape_factor = 1e3;      // |mu| > escape_factor * max|z| counts as divergent
};

/// Canonical representative of a single root under mu -> -mu symmetry:
/// Re mu > 0, or Im mu > 0 on the imaginary axis.
cplx canonical_root(cplx mu);

/// Canonicalize and sort a root set (boundary models).
std::vector<cplx> canonicalize_set(std::vector<cplx> mu);

/// Multi-start damped Newton over the chosen sector. Returns canonicalized,
/// deduplicated, admissible root sets with residual < accept_residual,
/// sorted lexicographically. M = 0 yields the single empty set.
std::vector<BetheRoots> solve_bethe(const GaudinSpec& spec, SuperalgebraTag tag,
                                    const SolveOptions& opt = {});

/// All admissible candidate single-root values of the decoupled gl(1|1)
/// equations, from the cleared-denominator polynomial in mu^2 solved by the
/// companion-matrix route. Any M-subset of distinct values is a Bethe solution.
std::vector<cplx> gl11_roots_exact(const GaudinSpec& spec);

// ---- A-type warm-up (twist omega, no boundary) ----

std::vector<cplx> atype_bethe_residual(const std::vector<cplx>& z, const std::vector<cplx>& mu,
                                       cplx omega, cplx hbar);
std::vector<cplx> atype_eigenvalues(const std::vector<cplx>& z, const std::vector<cplx>& mu,
                                    cplx omega, cplx hbar);
std::vector<BetheRoots> solve_bethe_atype(const std::vector<cplx>& z, int M, cplx omega,
                                          cplx hbar, const SolveOptions& opt = {});

}  // namespace gcm
